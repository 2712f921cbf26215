"""Serre-class verdicts and the plurisubharmonic exhaustion witnesses behind them.

The verdict logic is exact.  Witness functions are evaluated in floating
point in log coordinates ``(t, s)`` and serve as diagnostics.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .automorphisms import AutFamily, AutGroup, aut_group
from .domain_model import (
    DomainDesc,
    FullType,
    MonomialMap,
    Parabola,
    axis_slices,
    check_valid,
    dhyp,
    full_type,
    hyperbolicity,
)
from .exact_arith import ONE, ZERO, QuadExt
from .normal_form import NormalForm, normal_form
from .pell import AutMatrix, pell_generator

FULL = "Full"
STRIP_RATIONAL = "StripRationalType"
DSTAR_PELL = "StripIrrational_DstarPell"
DALPHA = "StripIrrational_Dalpha"
ANNULUS = "StripIrrational_Annulus"
NOLINE_14 = "NoLine_Thm14"
NOLINE_16 = "NoLine_Thm16"
OUT_OF_SCOPE = "HyperbolicOutOfScope"

NOT_IN_S = frozenset({FULL, DSTAR_PELL})


@dataclass(frozen=True)
class SerreVerdict:
    in_s: Optional[bool]
    branch: str
    witness: Optional[AutMatrix] = None
    normal_form: Optional[NormalForm] = None
    notes: tuple[str, ...] = ()


def serre_verdict(desc: DomainDesc) -> SerreVerdict:
    check_valid(desc)
    hyp = hyperbolicity(desc)
    if hyp.hyperbolic:
        return SerreVerdict(None, OUT_OF_SCOPE, notes=(
            "hyperbolic domains are not covered by this classification",))
    if full_type(desc) != FullType.NOT_FULL:
        return SerreVerdict(False, FULL, normal_form=normal_form(desc))
    if hyp.line is not None:
        nf = normal_form(desc)
        if nf.rational:
            return SerreVerdict(True, STRIP_RATIONAL, normal_form=nf)
        if nf.tag == "FormB":
            g = pell_generator(nf.beta)
            return SerreVerdict(False, DSTAR_PELL, g, nf, notes=(
                f"hyperbolic monomial automorphism with trace {g.trace} > 2",))
        if nf.tag == "FormA":
            return SerreVerdict(True, DALPHA, normal_form=nf)
        return SerreVerdict(True, ANNULUS, normal_form=nf)
    t = axis_slices(dhyp(desc)).t
    branch = NOLINE_14 if t == 1 else NOLINE_16
    return SerreVerdict(True, branch, notes=(f"t(D^hyp) = {t}",))


# -- exhaustion witnesses ----------------------------------------------------

class OutsideDomain(ValueError):
    pass


U_STAR = "u_star"
U_PLUS = "u_plus"
U_MINUS = "u_minus"
U_ANNULUS = "u_annulus"
U_PSI = "u_psi"


@dataclass(frozen=True)
class StehleWitness:
    """Exhaustion function of a normal form, written in log coordinates.

    Linear formulas use ``v = t + alpha s``; ``u_psi`` uses ``v = t - psi(s)``.
    """

    formula: str
    alpha: Optional[QuadExt] = None
    log_r: Optional[QuadExt] = None
    parabola: Optional[Parabola] = None
    form_tag: str = ""

    def core(self, t: float, s: float) -> float:
        if self.formula == U_PSI:
            return t - _psi_float(self.parabola, s)
        return t + float(self.alpha) * s

    def barrier(self, t: float, s: float) -> float:
        """The term that blows up at the boundary; a function of ``core`` only."""
        v = self.core(t, s)
        if self.formula == U_PSI:
            if v >= 0:
                raise OutsideDomain(f"t - psi(s) = {v} >= 0")
            return -1.0 / v
        if self.formula == U_ANNULUS:
            r = math.exp(float(self.log_r))
            e = math.exp(v)
            if not (abs(v) < float(self.log_r)):
                raise OutsideDomain(f"|t + alpha s| = {abs(v)} >= log r")
            return max(e / (r * e - 1.0), 1.0 / (r - e))
        if v >= 0:
            raise OutsideDomain(f"t + alpha s = {v} >= 0")
        return -1.0 / math.expm1(v)


def _psi_float(pa: Parabola, s: float) -> float:
    return float(pa.a) * s * s + float(pa.b) * s + float(pa.c)


def stehle_eval(w: StehleWitness, t: float, s: float) -> float:
    b = w.barrier(t, s)
    if w.formula == U_STAR:
        return max(b, t, -t, s, -s)
    if w.formula == U_PLUS:
        return max(b, t, s)
    if w.formula == U_MINUS:
        return max(b, t, s, -s)
    if w.formula == U_ANNULUS:
        return max(b, t * t, s * s)
    if w.formula == U_PSI:
        return max(s, -s, b)
    raise ValueError(w.formula)


def witness_for_form(nf: NormalForm) -> Optional[StehleWitness]:
    if nf.tag == "FormA":
        return StehleWitness(U_PLUS if nf.beta > 0 else U_MINUS, alpha=nf.beta, form_tag="FormA")
    if nf.tag == "FormB":
        return StehleWitness(U_STAR, alpha=nf.beta, form_tag="FormB")
    if nf.tag == "FormC":
        return StehleWitness(U_ANNULUS, alpha=nf.beta, log_r=nf.log_r, form_tag="FormC")
    return None


@dataclass(frozen=True)
class WitnessContext:
    witness: StehleWitness
    group: AutGroup


def stehle_witness(desc: DomainDesc) -> Optional[WitnessContext]:
    """Witness plus the automorphism families it is tested against.

    Available for irrational strips and for parabolic domains with the axis;
    rational strips have no witness of this kind.
    """
    check_valid(desc)
    if desc.parabola is not None:
        if not desc.axis1:
            return None
        return WitnessContext(StehleWitness(U_PSI, parabola=desc.parabola, form_tag="Parabolic"),
                              aut_group(desc))
    try:
        nf = normal_form(desc)
    except ValueError:
        return None
    w = witness_for_form(nf)
    if w is None:
        return None
    return WitnessContext(w, aut_group(desc))


def core_pullback(w: StehleWitness, m: MonomialMap) -> Optional[int]:
    """Exact check of ``v o m`` against ``v``.

    Returns +1 if ``v o m == v``, -1 if ``v o m == -v``, None otherwise.
    """
    (k1, k2), (l1, l2) = m.matrix
    A, B = m.log_modulus1, m.log_modulus2
    if w.formula == U_PSI:
        if (k1, l1) != (1, 0) or not (A.is_rational and B.is_rational):
            return None
        pa, eps, A, B = w.parabola, l2, A.rational(), B.rational()
        # (t + k s + A) - psi(eps s + B) against t - psi(s), coefficientwise
        same = (k2 - (2 * pa.a * eps * B + pa.b * eps) == -pa.b
                and A - (pa.a * B * B + pa.b * B + pa.c) == -pa.c)
        return 1 if same else None
    alpha = w.alpha
    coeffs = (k1 + alpha * l1, k2 + alpha * l2, A + alpha * B)
    if coeffs == (ONE, alpha, ZERO):
        return 1
    if coeffs == (-ONE, -alpha, ZERO):
        return -1
    return None


@dataclass
class InvarianceReport:
    instances: int = 0
    points: int = 0
    exact_failures: list[str] = field(default_factory=list)
    max_deviation: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.exact_failures and self.max_deviation <= 1e-9


def interior_points(w: StehleWitness, rng: random.Random, count: int) -> list[tuple[float, float]]:
    out = []
    while len(out) < count:
        t, s = rng.uniform(-4, 4), rng.uniform(-4, 4)
        try:
            b = w.barrier(t, s)
        except OutsideDomain:
            continue
        # stay clear of the boundary, where rounding in v is amplified by 1/v^2
        if b <= 50.0:
            out.append((t, s))
    return out


def stehle_invariance_check(w: StehleWitness, families: Sequence[AutFamily], instances: int = 100,
                            points: int = 5, seed: int = 0) -> InvarianceReport:
    """Sample family members (in normal-form coordinates) and compare the barrier term.

    The exact part checks that the core ``v`` is preserved (or negated for the
    annulus flip, where the barrier is symmetric) in the quadratic field.
    The float part compares barrier values at sampled interior points.
    """
    rng = random.Random(seed)
    rep = InvarianceReport()
    allowed = (1, -1) if w.formula == U_ANNULUS else (1,)
    for i in range(instances):
        fam = families[i % len(families)]
        m = fam.sample(rng)
        rep.instances += 1
        sign = core_pullback(w, m)
        if sign not in allowed:
            rep.exact_failures.append(f"{fam.tag}: {m.matrix} moduli ({m.log_modulus1}, {m.log_modulus2})")
            continue
        for t, s in interior_points(w, rng, points):
            t2, s2 = m.apply_log_float(t, s)
            dev = abs(w.barrier(t2, s2) - w.barrier(t, s))
            rep.points += 1
            rep.max_deviation = max(rep.max_deviation, dev)
    return rep


def boundary_sequence(w: StehleWitness, rng: random.Random, steps: int = 10) -> list[tuple[float, float]]:
    """Interior points approaching the boundary ``v -> edge`` at a fixed random s."""
    s = rng.uniform(-3, 3)
    out = []
    for j in range(1, steps + 1):
        gap = 10.0 ** (-j)
        if w.formula == U_PSI:
            t = _psi_float(w.parabola, s) - gap
        else:
            edge = float(w.log_r) if w.formula == U_ANNULUS else 0.0
            t = edge - gap - float(w.alpha) * s
        out.append((t, s))
    return out
