"""Pseudoconvex Reinhardt domains in C^2 described by their logarithmic image.

Coordinates in log space are ``(t, s) = (log|z1|, log|z2|)``.  A
``MonomialPolyhedron`` domain is an intersection of open strips and half
planes ``lower < alpha1*t + alpha2*s < upper``; a ``Parabolic`` domain is
``t < a s^2 + b s + c`` with ``a < 0``.  Whether ``D`` meets the coordinate
axes ``{z1 = 0}`` / ``{z2 = 0}`` is stored explicitly in ``axis1`` / ``axis2``
because the log image alone does not determine it.

All geometry is exact: feasibility and redundancy of open half-plane systems
are decided by Fourier-Motzkin elimination over the working quadratic field.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact_arith import ONE, ZERO, MixedFieldError, QuadExt, single_field, to_rat

Bound = Optional[QuadExt]


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class TransformError(ValueError):
    pass


class AxisAmbiguity(TransformError):
    """The image meets an axis in a way the description language cannot express."""


class UnrepresentableImage(TransformError):
    pass


@dataclass(frozen=True)
class MonomialConstraint:
    """``lower < alpha1*t + alpha2*s < upper``; ``None`` bounds are infinite."""

    alpha1: QuadExt
    alpha2: QuadExt
    lower: Bound = None
    upper: Bound = None

    def __post_init__(self):
        object.__setattr__(self, "alpha1", QuadExt.coerce(self.alpha1))
        object.__setattr__(self, "alpha2", QuadExt.coerce(self.alpha2))
        if self.lower is not None:
            object.__setattr__(self, "lower", QuadExt.coerce(self.lower))
        if self.upper is not None:
            object.__setattr__(self, "upper", QuadExt.coerce(self.upper))

    @property
    def two_sided(self) -> bool:
        return self.lower is not None and self.upper is not None

    def quad_values(self) -> list[QuadExt]:
        return [v for v in (self.alpha1, self.alpha2, self.lower, self.upper) if v is not None]


@dataclass(frozen=True)
class Parabola:
    """``psi(s) = a s^2 + b s + c`` with ``a < 0``."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))

    def __call__(self, s):
        return self.a * s * s + self.b * s + self.c


@dataclass(frozen=True)
class DomainDesc:
    constraints: tuple[MonomialConstraint, ...] = ()
    axis1: bool = False
    axis2: bool = False
    parabola: Optional[Parabola] = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def kind(self) -> str:
        return "parabolic" if self.parabola is not None else "monomial"

    def swapped(self) -> "DomainDesc":
        if self.parabola is not None:
            raise UnrepresentableImage("parabolic domains are not closed under the swap")
        cs = tuple(MonomialConstraint(c.alpha2, c.alpha1, c.lower, c.upper) for c in self.constraints)
        return DomainDesc(cs, self.axis2, self.axis1)


def polydisc() -> DomainDesc:
    return DomainDesc((MonomialConstraint(1, 0, upper=0), MonomialConstraint(0, 1, upper=0)), True, True)


# -- half planes -------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlane:
    """Open half plane ``n1*t + n2*s < c``."""

    n1: QuadExt
    n2: QuadExt
    c: QuadExt

    def normalized(self) -> "HalfPlane":
        lead = self.n1 if self.n1 else self.n2
        scale = abs(lead)
        return HalfPlane(self.n1 / scale, self.n2 / scale, self.c / scale)

    def flipped(self) -> "HalfPlane":
        """The complementary open half plane ``n.x > c``."""
        return HalfPlane(-self.n1, -self.n2, -self.c)

    def contains(self, t: QuadExt, s: QuadExt) -> bool:
        return self.n1 * t + self.n2 * s < self.c


def half_planes(constraints: Iterable[MonomialConstraint]) -> list[HalfPlane]:
    out = []
    for c in constraints:
        if c.upper is not None:
            out.append(HalfPlane(c.alpha1, c.alpha2, c.upper))
        if c.lower is not None:
            out.append(HalfPlane(-c.alpha1, -c.alpha2, -c.lower))
    return out


def feasible(hps: Sequence[HalfPlane]) -> bool:
    """Whether a finite system of open half planes has a common point."""
    pos = [h for h in hps if h.n1 > 0]
    neg = [h for h in hps if h.n1 < 0]
    rest = [(h.n2, h.c) for h in hps if not h.n1]
    for p in pos:
        for q in neg:
            # (-q.n1) * p + p.n1 * q eliminates t and keeps strictness
            rest.append((-q.n1 * p.n2 + p.n1 * q.n2, -q.n1 * p.c + p.n1 * q.c))
    lo: Bound = None
    hi: Bound = None
    for n2, c in rest:
        if not n2:
            if c <= 0:
                return False
            continue
        v = c / n2
        if n2 > 0:
            hi = v if hi is None or v < hi else hi
        else:
            lo = v if lo is None or v > lo else lo
    return lo is None or hi is None or lo < hi


def minimal_half_planes(hps: Sequence[HalfPlane]) -> list[HalfPlane]:
    """Normalized, deduplicated, irredundant representation."""
    by_normal: dict[tuple[QuadExt, QuadExt], QuadExt] = {}
    for h in hps:
        h = h.normalized()
        key = (h.n1, h.n2)
        if key not in by_normal or h.c < by_normal[key]:
            by_normal[key] = h.c
    current = [HalfPlane(n1, n2, c) for (n1, n2), c in by_normal.items()]
    i = 0
    while i < len(current):
        others = current[:i] + current[i + 1:]
        if not feasible(others + [current[i].flipped()]):
            current = others
        else:
            i += 1
    return current


def _sort_key(c: MonomialConstraint) -> tuple:
    inf = (0,)
    return (
        c.alpha1.sort_key(),
        c.alpha2.sort_key(),
        inf if c.lower is None else (1,) + c.lower.sort_key(),
        inf if c.upper is None else (1,) + c.upper.sort_key(),
    )


def constraints_from_half_planes(hps: Sequence[HalfPlane]) -> tuple[MonomialConstraint, ...]:
    """Pair opposite normals into two-sided constraints; canonical order.

    Expects normalized half planes (leading coefficient +-1).
    """
    planes = {(h.n1, h.n2): h.c for h in hps}
    out = []
    for (n1, n2), c in planes.items():
        opposite = (-n1, -n2)
        if opposite in planes:
            if (n1 if n1 else n2) < 0:
                continue
            out.append(MonomialConstraint(n1, n2, -planes[opposite], c))
        else:
            out.append(MonomialConstraint(n1, n2, None, c))
    return tuple(sorted(out, key=_sort_key))


def canonical(desc: DomainDesc) -> DomainDesc:
    """Unique description of the same domain (minimal, normalized constraints)."""
    if desc.parabola is not None:
        return desc
    hps = minimal_half_planes(half_planes(desc.constraints))
    return DomainDesc(constraints_from_half_planes(hps), desc.axis1, desc.axis2)


def same_domain(x: DomainDesc, y: DomainDesc) -> bool:
    return canonical(x) == canonical(y)


# -- validation --------------------------------------------------------------

def validate(desc: DomainDesc) -> list[str]:
    """List of violations; empty when the description is valid."""
    out: list[str] = []
    if desc.parabola is not None:
        if desc.constraints:
            out.append("parabolic domains carry no monomial constraints")
        if desc.parabola.a >= 0:
            out.append("parabolic coefficient a must be negative")
        if desc.axis2:
            out.append("parabolic domains lie in C x C_*: axis2 must be false")
        return out
    for i, c in enumerate(desc.constraints):
        if not c.alpha1 and not c.alpha2:
            out.append(f"constraint {i}: exponent vector is zero")
        if c.lower is None and c.upper is None:
            out.append(f"constraint {i}: no finite bound")
    try:
        single_field(v for c in desc.constraints for v in c.quad_values())
    except MixedFieldError as exc:
        out.append(f"MixedField: {exc}")
    if out:
        return out
    for i, c in enumerate(desc.constraints):
        if c.two_sided and not c.lower < c.upper:
            out.append(f"constraint {i}: lower bound is not below upper bound")
    if out:
        return out
    hps = half_planes(desc.constraints)
    if not feasible(hps):
        out.append("logarithmic image is empty")
        return out
    for axis in (1, 2):
        if not (desc.axis1 if axis == 1 else desc.axis2):
            continue
        for i, c in enumerate(desc.constraints):
            coef = c.alpha1 if axis == 1 else c.alpha2
            if coef < 0 and c.upper is not None:
                out.append(f"constraint {i}: finite upper bound with alpha{axis}<0 excludes {{z{axis}=0}}")
            elif coef > 0 and c.lower is not None:
                out.append(f"constraint {i}: finite lower bound with alpha{axis}>0 excludes {{z{axis}=0}}")
    return out


def check_valid(desc: DomainDesc) -> DomainDesc:
    bad = validate(desc)
    if bad:
        raise ValidationError(bad)
    return desc


# -- geometry queries --------------------------------------------------------

def contains_line(desc: DomainDesc) -> Optional[tuple[QuadExt, QuadExt]]:
    """A direction of a line inside log D, or None."""
    if desc.parabola is not None:
        return None
    hps = half_planes(desc.constraints)
    if not hps:
        return (ONE, ZERO)
    n1, n2 = hps[0].n1, hps[0].n2
    for h in hps[1:]:
        if n1 * h.n2 - n2 * h.n1:
            return None
    return (-n2, n1)


class FullType(str, enum.Enum):
    C2 = "C2"
    CSTAR2 = "Cstar2"
    C_CSTAR = "CxCstar"
    CSTAR_C = "CstarxC"
    NOT_FULL = "NotFull"


def full_type(desc: DomainDesc) -> FullType:
    if desc.parabola is not None or desc.constraints:
        return FullType.NOT_FULL
    return {
        (True, True): FullType.C2,
        (False, False): FullType.CSTAR2,
        (True, False): FullType.C_CSTAR,
        (False, True): FullType.CSTAR_C,
    }[(desc.axis1, desc.axis2)]


def full_domain(kind: FullType) -> DomainDesc:
    flags = {
        FullType.C2: (True, True),
        FullType.CSTAR2: (False, False),
        FullType.C_CSTAR: (True, False),
        FullType.CSTAR_C: (False, True),
    }[FullType(kind)]
    return DomainDesc((), *flags)


@dataclass(frozen=True)
class SliceReport:
    """``D ∩ {z_axis = 0}`` as a Reinhardt domain in the other variable.

    ``interval`` is the log-radius interval ``(lower, upper)`` (None = infinite)
    or None when the slice is empty.
    """

    axis: int
    interval: Optional[tuple[Bound, Bound]]
    includes_origin: bool
    hyperbolic: bool

    @property
    def empty(self) -> bool:
        return self.interval is None


@dataclass(frozen=True)
class SliceInfo:
    slices: tuple[SliceReport, SliceReport]
    nonhyperbolic_axes: frozenset[int]
    t: int


def _slice(desc: DomainDesc, axis: int) -> SliceReport:
    included = desc.axis1 if axis == 1 else desc.axis2
    if not included:
        return SliceReport(axis, None, False, True)
    lo: Bound = None
    hi: Bound = None
    if desc.parabola is None:
        for h in half_planes(desc.constraints):
            own, other = (h.n1, h.n2) if axis == 1 else (h.n2, h.n1)
            if own:
                continue
            v = h.c / other
            if other > 0:
                hi = v if hi is None or v < hi else hi
            else:
                lo = v if lo is None or v > lo else lo
    hyperbolic = not (lo is None and hi is None)
    return SliceReport(axis, (lo, hi), desc.axis1 and desc.axis2, hyperbolic)


def axis_slices(desc: DomainDesc) -> SliceInfo:
    s1, s2 = _slice(desc, 1), _slice(desc, 2)
    bad = frozenset(s.axis for s in (s1, s2) if not s.empty and not s.hyperbolic)
    return SliceInfo((s1, s2), bad, sum(not s.empty for s in (s1, s2)))


def dhyp(desc: DomainDesc) -> DomainDesc:
    """Remove the axes whose slices are not hyperbolic."""
    bad = axis_slices(desc).nonhyperbolic_axes
    return replace(desc, axis1=desc.axis1 and 1 not in bad, axis2=desc.axis2 and 2 not in bad)


@dataclass(frozen=True)
class Hyperbolicity:
    hyperbolic: bool
    reasons: tuple[str, ...] = ()
    line: Optional[tuple[QuadExt, QuadExt]] = None


def hyperbolicity(desc: DomainDesc) -> Hyperbolicity:
    reasons = []
    line = contains_line(desc)
    if line is not None:
        reasons.append(f"log D contains a line in direction ({line[0]}, {line[1]})")
    for i in sorted(axis_slices(desc).nonhyperbolic_axes):
        reasons.append(f"slice {{z{i}=0}} is not hyperbolic")
    return Hyperbolicity(not reasons, tuple(reasons), line)


# -- monomial maps -----------------------------------------------------------

Matrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class MonomialMap:
    """``(z1, z2) -> (a z1^k1 z2^k2, b z1^l1 z2^l2)`` stored as rows and log|a|, log|b|.

    In log coordinates it acts as ``x -> matrix @ x + (log|a|, log|b|)``.
    """

    matrix: Matrix
    log_modulus1: QuadExt = ZERO
    log_modulus2: QuadExt = ZERO

    def __post_init__(self):
        (k1, k2), (l1, l2) = self.matrix
        object.__setattr__(self, "matrix", ((int(k1), int(k2)), (int(l1), int(l2))))
        object.__setattr__(self, "log_modulus1", QuadExt.coerce(self.log_modulus1))
        object.__setattr__(self, "log_modulus2", QuadExt.coerce(self.log_modulus2))

    @classmethod
    def identity(cls) -> "MonomialMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def swap(cls) -> "MonomialMap":
        return cls(((0, 1), (1, 0)))

    @classmethod
    def shift(cls, m1, m2) -> "MonomialMap":
        return cls(((1, 0), (0, 1)), m1, m2)

    @property
    def det(self) -> int:
        (k1, k2), (l1, l2) = self.matrix
        return k1 * l2 - k2 * l1

    @property
    def unimodular(self) -> bool:
        return abs(self.det) == 1

    def apply_log(self, t, s) -> tuple[QuadExt, QuadExt]:
        (k1, k2), (l1, l2) = self.matrix
        return k1 * t + k2 * s + self.log_modulus1, l1 * t + l2 * s + self.log_modulus2

    def apply_log_float(self, t: float, s: float) -> tuple[float, float]:
        (k1, k2), (l1, l2) = self.matrix
        return k1 * t + k2 * s + float(self.log_modulus1), l1 * t + l2 * s + float(self.log_modulus2)

    def compose(self, inner: "MonomialMap") -> "MonomialMap":
        """``self ∘ inner``."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = inner.matrix
        m1, m2 = self.apply_log(inner.log_modulus1, inner.log_modulus2)
        return MonomialMap(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)), m1, m2)

    def inverse(self) -> "MonomialMap":
        if not self.unimodular:
            raise ValueError("only unimodular maps are invertible here")
        (k1, k2), (l1, l2) = self.matrix
        e = self.det
        inv = ((l2 * e, -k2 * e), (-l1 * e, k1 * e))
        m1, m2 = self.log_modulus1, self.log_modulus2
        return MonomialMap(inv, -(inv[0][0] * m1 + inv[0][1] * m2), -(inv[1][0] * m1 + inv[1][1] * m2))

    def power(self, n: int) -> "MonomialMap":
        if n < 0:
            return self.inverse().power(-n)
        result = MonomialMap.identity()
        for _ in range(n):
            result = self.compose(result)
        return result

    def transform_normal(self, n1: QuadExt, n2: QuadExt) -> tuple[QuadExt, QuadExt]:
        """Image normal ``M^{-T} n`` of a constraint under the log action."""
        (k1, k2), (l1, l2) = self.matrix
        e = self.det
        return (l2 * n1 - l1 * n2) * e, (k1 * n2 - k2 * n1) * e


def _axis_image(m: MonomialMap, axis: int) -> int:
    col = (m.matrix[0][axis - 1], m.matrix[1][axis - 1])
    if min(col) < 0:
        raise AxisAmbiguity(f"map has a negative exponent of z{axis} but D meets {{z{axis}=0}}")
    if min(col) > 0:
        raise AxisAmbiguity(f"map collapses the axis {{z{axis}=0}} onto the origin")
    return 1 if col[0] > 0 else 2


def transform(desc: DomainDesc, m: MonomialMap) -> DomainDesc:
    """Image of ``desc`` under a unimodular monomial map, canonicalized."""
    if not m.unimodular:
        raise ValueError(f"matrix {m.matrix} is not unimodular")
    if desc.parabola is not None:
        return _transform_parabolic(desc, m)
    new_axes = set()
    for axis, included in ((1, desc.axis1), (2, desc.axis2)):
        if included:
            new_axes.add(_axis_image(m, axis))
    hps = []
    for h in half_planes(desc.constraints):
        n1, n2 = m.transform_normal(h.n1, h.n2)
        hps.append(HalfPlane(n1, n2, h.c + n1 * m.log_modulus1 + n2 * m.log_modulus2))
    hps = minimal_half_planes(hps)
    image = DomainDesc(constraints_from_half_planes(hps), 1 in new_axes, 2 in new_axes)
    bad = validate(image)
    if bad:
        raise AxisAmbiguity("image is not expressible: " + "; ".join(bad))
    return image


def _transform_parabolic(desc: DomainDesc, m: MonomialMap) -> DomainDesc:
    (k1, k), (l1, eps) = m.matrix
    if k1 != 1 or l1 != 0:
        raise UnrepresentableImage("only maps (a z1 z2^k, b z2^±1) keep the form t < psi(s)")
    A, B = m.log_modulus1, m.log_modulus2
    if not (A.is_rational and B.is_rational):
        raise UnrepresentableImage("parabolic coefficients must stay rational")
    A, B = A.rational(), B.rational()
    pa = desc.parabola
    # t' = t + k s + A, s' = eps s + B  =>  t' < psi(eps (s'-B)) + k eps (s'-B) + A
    new = Parabola(
        pa.a,
        -2 * pa.a * B + pa.b * eps + k * eps,
        pa.a * B * B - pa.b * eps * B + pa.c - k * eps * B + A,
    )
    if desc.axis1:
        _axis_image(m, 1)
    return DomainDesc((), desc.axis1, False, new)
