"""Automorphism families, exact automorphism checks and compactness of Aut(D).

Families are expressed in the coordinates of the domain's normal form
(``AutGroup.coordinates``).  Rotations ``z_j -> e^{i theta} z_j`` act on every
Reinhardt domain and are not listed separately: all checks here only see
moduli.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .domain_model import (
    DomainDesc,
    FullType,
    MonomialMap,
    Parabola,
    TransformError,
    canonical,
    check_valid,
    contains_line,
    full_type,
    hyperbolicity,
    transform,
)
from .exact_arith import ZERO, QuadExt
from .normal_form import ANNULUS, CSTAR, DISC, NormalForm, normal_form
from .pell import AutMatrix, pell_generator


class Unclassified(ValueError):
    """No automorphism family description is available for this domain."""


class FlipIterate(ValueError):
    pass


class HyperbolicInput(ValueError):
    pass


TORUS_SCALING = "TorusScaling"
TORUS_WITH_FLIP = "TorusWithFlip"
MONOMIAL_HYPERBOLIC = "MonomialHyperbolic"
FUNCTIONAL_FAMILY = "FunctionalFamily"
SHEAR = "Shear"
ROTATIONS = "Rotations"
FULL_MONOMIAL = "FullMonomial"


@dataclass(frozen=True)
class ShearAut:
    """``(z1, z2) -> (a z1 z2^k, b z2^eps)``."""

    log_a: QuadExt
    log_b: QuadExt
    k: int
    epsilon: int = 1

    def __post_init__(self):
        object.__setattr__(self, "log_a", QuadExt.coerce(self.log_a))
        object.__setattr__(self, "log_b", QuadExt.coerce(self.log_b))
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +-1")

    def to_map(self) -> MonomialMap:
        return MonomialMap(((1, self.k), (0, self.epsilon)), self.log_a, self.log_b)


def iterate_shear(phi: ShearAut, n: int) -> ShearAut:
    """Closed form of the n-th iterate; valid for every integer n (n < 0 iterates the inverse)."""
    if phi.epsilon != 1:
        raise FlipIterate("closed form needs epsilon = 1; square the map first")
    return ShearAut(
        n * phi.log_a + Fraction(phi.k * n * (n - 1), 2) * phi.log_b,
        n * phi.log_b,
        n * phi.k,
        1,
    )


@dataclass(frozen=True)
class AutCheck:
    ok: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_automorphism(desc: DomainDesc, m: MonomialMap) -> AutCheck:
    if not m.unimodular:
        return AutCheck(False, (f"determinant {m.det} is not +-1",))
    try:
        image = transform(desc, m)
    except TransformError as exc:
        return AutCheck(False, (f"axis not preserved: {exc}",))
    src = canonical(desc)
    if image == src:
        return AutCheck(True)
    diag = []
    if (image.axis1, image.axis2) != (src.axis1, src.axis2):
        diag.append(f"axis flags change from {(src.axis1, src.axis2)} to {(image.axis1, image.axis2)}")
    if image.constraints != src.constraints or image.parabola != src.parabola:
        diag.append("log image is not preserved")
    return AutCheck(False, tuple(diag))


@dataclass(frozen=True)
class AutFamily:
    """One family of automorphisms.

    ``case`` names the rational-type case (``"1"``..``"4"``) for
    FunctionalFamily; its holomorphic parameters are kept opaque and only
    constants and Laurent monomials are instantiated.
    """

    tag: str
    beta: Optional[QuadExt] = None
    generator: Optional[AutMatrix] = None
    case: Optional[str] = None
    shear: Optional[ShearAut] = None
    form: Optional[NormalForm] = None
    note: str = ""

    def sample(self, rng: random.Random) -> MonomialMap:
        """A random concrete member (monomial layer only)."""
        x = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        if self.tag == TORUS_SCALING:
            return MonomialMap.shift(-self.beta * x, x)
        if self.tag == TORUS_WITH_FLIP:
            e = rng.choice((1, -1))
            return MonomialMap(((e, 0), (0, e)), -self.beta * x, x)
        if self.tag == MONOMIAL_HYPERBOLIC:
            g = self.generator ** rng.randint(-2, 2)
            return MonomialMap(g.rows(), -self.beta * x, x)
        if self.tag == SHEAR:
            phi = iterate_shear(self.shear, rng.randint(-4, 4))
            return phi.to_map()
        if self.tag == ROTATIONS:
            return MonomialMap.identity()
        if self.tag == FULL_MONOMIAL:
            return _sample_full(self.form.full, rng, x)
        if self.tag == FUNCTIONAL_FAMILY:
            return _sample_functional(self, rng, x)
        raise ValueError(self.tag)


def _sample_full(kind: FullType, rng: random.Random, x: Fraction) -> MonomialMap:
    y = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
    if kind == FullType.C2:
        mat = rng.choice((((1, 0), (0, 1)), ((0, 1), (1, 0))))
    elif kind == FullType.CSTAR2:
        while True:
            mat = tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2))
            if abs(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) == 1:
                break
    else:
        # (a z1 z2^k, b z2^eps) for C x C_*, the swapped shape for C_* x C
        k, e = rng.randint(-3, 3), rng.choice((1, -1))
        mat = ((1, k), (0, e)) if kind == FullType.C_CSTAR else ((e, 0), (k, 1))
    return MonomialMap(mat, x, y)


def _sample_functional(fam: AutFamily, rng: random.Random, x: Fraction) -> MonomialMap:
    nf = fam.form
    if fam.case == "1":
        mat = rng.choice((((1, 0), (0, 1)), ((0, 1), (1, 0))))
        return MonomialMap(mat, x, -x)
    if fam.case in ("2", "3"):
        return MonomialMap.shift(x / nf.p, -x / nf.q)
    # D x C: (lambda, z) -> (a(lambda), b(lambda) z^eps); a is a rotation or,
    # on an annulus, the inversion; b = const * lambda^j unless D is a disc
    e1 = rng.choice((1, -1)) if nf.factor1 == ANNULUS else 1
    j = 0 if nf.factor1 == DISC else rng.randint(-3, 3)
    eps = rng.choice((1, -1)) if nf.factor2 == CSTAR else 1
    return MonomialMap(((e1, 0), (j, eps)), ZERO, x)


@dataclass(frozen=True)
class AutGroup:
    """Families of automorphisms of ``coordinates`` (the normal form of the input).

    ``to_source`` maps the input domain onto ``coordinates``; conjugating by it
    carries the families back to the input.
    """

    coordinates: DomainDesc
    families: tuple[AutFamily, ...]
    to_source: MonomialMap = field(default_factory=MonomialMap.identity)
    compact: Optional[bool] = None

    def sample_in_source(self, fam: AutFamily, rng: random.Random) -> MonomialMap:
        w = self.to_source
        return w.inverse().compose(fam.sample(rng)).compose(w)


def parabolic_shear(pa: Parabola, k: int = -2) -> ShearAut:
    """Shear automorphism of ``{t < psi(s)}`` with ``beta = k/(2a)``.

    ``psi(s + beta) - psi(s) = 2a beta s + a beta^2 + b beta``; choosing
    ``beta = k/(2a)`` makes the slope the integer ``k``.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    beta = Fraction(k) / (2 * pa.a)
    return ShearAut(pa.a * beta * beta + pa.b * beta, beta, k, 1)


def aut_group(desc: DomainDesc) -> AutGroup:
    check_valid(desc)
    if desc.parabola is not None:
        if not desc.axis1:
            raise Unclassified("a parabolic domain without the axis is hyperbolic")
        fam = AutFamily(SHEAR, shear=parabolic_shear(desc.parabola))
        return AutGroup(desc, (fam,), compact=False)
    if contains_line(desc) is None:
        if hyperbolicity(desc).hyperbolic:
            raise Unclassified("hyperbolic domains are outside the classified range")
        return AutGroup(canonical(desc), (AutFamily(ROTATIONS, note="compact: torus of rotations"),),
                        compact=True)
    nf = normal_form(desc)
    coords = nf.description()
    if nf.tag == "Full":
        fams = (AutFamily(FULL_MONOMIAL, form=nf, note="monomial layer of a non-compact group"),)
    elif nf.tag == "FormA":
        fams = (AutFamily(TORUS_SCALING, beta=nf.beta, form=nf),)
    elif nf.tag == "FormC":
        fams = (AutFamily(TORUS_WITH_FLIP, beta=nf.beta, form=nf),)
    elif nf.tag == "FormB":
        fams = (AutFamily(MONOMIAL_HYPERBOLIC, beta=nf.beta, generator=pell_generator(nf.beta), form=nf),)
    elif nf.tag == "FormE":
        case = "1" if (nf.p, nf.q) == (1, 1) else "2"
        fams = (AutFamily(FUNCTIONAL_FAMILY, case=case, form=nf),)
    elif nf.tag == "FormF":
        fams = (AutFamily(FUNCTIONAL_FAMILY, case="3", form=nf),)
    else:
        fams = (AutFamily(FUNCTIONAL_FAMILY, case="4", form=nf),)
    return AutGroup(coords, fams, nf.witness, compact=False)


# -- compactness -------------------------------------------------------------

@dataclass(frozen=True)
class CompactnessVerdict:
    compact: bool
    reason: str
    witness: Optional[MonomialMap] = None
    shear: Optional[ShearAut] = None


LINE = "line in log D"
PARABOLIC = "parabolic psi"
TORUS_ONLY = "torus-only"


def compactness(desc: DomainDesc) -> CompactnessVerdict:
    check_valid(desc)
    if hyperbolicity(desc).hyperbolic:
        raise HyperbolicInput("hyperbolic domains are outside the classified range")
    line = contains_line(desc)
    if line is not None:
        return CompactnessVerdict(False, LINE, MonomialMap.shift(*line))
    if desc.parabola is not None:
        phi = parabolic_shear(desc.parabola)
        return CompactnessVerdict(False, PARABOLIC, phi.to_map(), phi)
    return CompactnessVerdict(True, TORUS_ONLY)


@dataclass(frozen=True)
class Growth:
    """``moduli(W^n) = c0 + c1 n + c2 n^2`` componentwise."""

    c0: tuple[QuadExt, QuadExt]
    c1: tuple[QuadExt, QuadExt]
    c2: tuple[QuadExt, QuadExt]

    @property
    def unbounded(self) -> bool:
        return any(self.c1) or any(self.c2)


def growth_coefficients(w: MonomialMap, checks: int = 6) -> Growth:
    """Fit the log-moduli of ``w^n`` at n = 0, 1, 2 and verify the fit exactly up to ``checks``.

    Raises ValueError when the moduli are not quadratic in n (non-unipotent w).
    """
    pts = [w.power(n) for n in range(checks + 1)]
    mods = [(p.log_modulus1, p.log_modulus2) for p in pts]
    c0, c1, c2 = [], [], []
    for i in range(2):
        y0, y1, y2 = mods[0][i], mods[1][i], mods[2][i]
        a2 = (y2 - 2 * y1 + y0) / 2
        a1 = y1 - y0 - a2
        c0.append(y0)
        c1.append(a1)
        c2.append(a2)
        for n in range(3, checks + 1):
            if mods[n][i] != y0 + a1 * n + a2 * n * n:
                raise ValueError("log-moduli of iterates are not quadratic in n")
    return Growth(tuple(c0), tuple(c1), tuple(c2))


def shear_functional_identity(pa: Parabola, phi: ShearAut) -> bool:
    """``psi(s + logB) - psi(s) == logA + k s`` as polynomials in s."""
    if not (phi.log_a.is_rational and phi.log_b.is_rational) or phi.epsilon != 1:
        return False
    beta, alpha = phi.log_b.rational(), phi.log_a.rational()
    # psi(s + beta) - psi(s) = (2 a beta) s + (a beta^2 + b beta)
    return 2 * pa.a * beta == phi.k and pa.a * beta * beta + pa.b * beta == alpha and beta != 0
