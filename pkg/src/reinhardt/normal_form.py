"""Reduction of strip domains to canonical forms by unimodular monomial maps.

Irrational strips land on

* ``FormA(beta)``: ``{|z1||z2|^beta < 1}`` in ``C x C(beta)``,
* ``FormB(beta)``: the same inequality in ``C_* x C_*``, ``beta > 0``,
* ``FormC(beta, logR)``: ``{1/R < |z1||z2|^beta < R}``, ``beta > 0``.

Rational strips land on ``ProductD`` (disc, punctured disc or annulus times
``C`` or ``C_*``), ``FormE(p, q)`` (``|z^p||w^q| < 1`` in ``C^2``, ``p <= q``) or
``FormF(p, q)`` (``|z^p||w^q| < 1`` in ``C_* x C``, ``q >= 2``,
``1 <= p <= q/2``).  The parameters of the rational forms are complete
invariants; for the irrational forms only the tag is.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .domain_model import (
    DomainDesc,
    FullType,
    MonomialConstraint,
    MonomialMap,
    canonical,
    check_valid,
    contains_line,
    full_domain,
    full_type,
    transform,
)
from .exact_arith import ONE, ZERO, QuadExt


class NotAStrip(ValueError):
    pass


class NotRational(ValueError):
    pass


RATIONAL = "Rational"
IRRATIONAL = "Irrational"

DISC, PUNCTURED_DISC, ANNULUS = "disc", "punctured_disc", "annulus"
C, CSTAR = "C", "Cstar"


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class NormalForm:
    tag: str
    witness: MonomialMap = field(default_factory=MonomialMap.identity)
    beta: Optional[QuadExt] = None
    log_r: Optional[QuadExt] = None
    p: Optional[int] = None
    q: Optional[int] = None
    factor1: Optional[str] = None
    factor2: Optional[str] = None
    full: Optional[FullType] = None

    @property
    def rational(self) -> bool:
        return self.tag in ("ProductD", "FormE", "FormF")

    def description(self) -> DomainDesc:
        return form_description(self)

    def label(self) -> str:
        if self.tag in ("FormA", "FormB"):
            return f"{self.tag}(beta={self.beta})"
        if self.tag == "FormC":
            return f"FormC(beta={self.beta}, logR={self.log_r})"
        if self.tag in ("FormE", "FormF"):
            return f"{self.tag}(p={self.p}, q={self.q})"
        if self.tag == "ProductD":
            extra = f"(logR={self.log_r})" if self.factor1 == ANNULUS else ""
            return f"ProductD({self.factor1}{extra}, {self.factor2})"
        return f"Full({self.full.value})"

    def invariant_key(self) -> tuple:
        """What survives an algebraic change of coordinates."""
        if self.tag in ("FormE", "FormF"):
            return (self.tag, self.p, self.q)
        if self.tag == "ProductD":
            return (self.tag, self.factor1, self.factor2, self.log_r)
        if self.tag == "Full":
            # C x C_* and C_* x C differ only by the swap
            k = self.full
            return (self.tag, FullType.C_CSTAR if k == FullType.CSTAR_C else k)
        return (self.tag,)


def form_description(nf: NormalForm) -> DomainDesc:
    """The canonical description a normal form stands for."""
    if nf.tag == "Full":
        return full_domain(nf.full)
    if nf.tag in ("FormA", "FormB", "FormC"):
        beta = nf.beta
        lower = -nf.log_r if nf.tag == "FormC" else None
        upper = nf.log_r if nf.tag == "FormC" else ZERO
        c = MonomialConstraint(ONE, beta, lower, upper)
        if nf.tag == "FormA":
            return canonical(DomainDesc((c,), True, beta >= 0))
        return canonical(DomainDesc((c,), False, beta == 0))
    if nf.tag == "ProductD":
        if nf.factor1 == ANNULUS:
            c = MonomialConstraint(ONE, ZERO, -nf.log_r, nf.log_r)
        else:
            c = MonomialConstraint(ONE, ZERO, None, ZERO)
        return canonical(DomainDesc((c,), nf.factor1 == DISC, nf.factor2 == C))
    if nf.tag == "FormE":
        return canonical(DomainDesc((MonomialConstraint(nf.p, nf.q, None, 0),), True, True))
    if nf.tag == "FormF":
        return canonical(DomainDesc((MonomialConstraint(nf.p, nf.q, None, 0),), False, True))
    raise ValueError(f"unknown tag {nf.tag!r}")


def strip_constraint(desc: DomainDesc) -> MonomialConstraint:
    """The single constraint of a strip domain in canonical form."""
    if desc.parabola is not None:
        raise NotAStrip("parabolic domains contain no line")
    if full_type(desc) != FullType.NOT_FULL:
        raise NotAStrip("full domains are not strips")
    if contains_line(desc) is None:
        raise NotAStrip("log D contains no line")
    cs = canonical(desc).constraints
    assert len(cs) == 1, cs
    return cs[0]


def strip_type(desc: DomainDesc) -> str:
    c = strip_constraint(desc)
    if not c.alpha1 or not c.alpha2 or (c.alpha2 / c.alpha1).is_rational:
        return RATIONAL
    return IRRATIONAL


def primitive_normal(c: MonomialConstraint) -> tuple[int, int]:
    """Primitive integer vector positively proportional to a rational normal."""
    n1, n2 = c.alpha1, c.alpha2
    if not n1:
        return 0, n2.sign()
    if not n2:
        return n1.sign(), 0
    r = (n2 / n1).rational()
    a, b = r.denominator, r.numerator
    return (a, b) if n1 > 0 else (-a, -b)


class _Reducer:
    """Accumulates elementary maps while tracking the current description."""

    def __init__(self, desc: DomainDesc, witness: Optional[MonomialMap] = None):
        self.desc = canonical(desc)
        self.witness = witness or MonomialMap.identity()

    def apply(self, m: MonomialMap) -> None:
        self.desc = transform(self.desc, m)
        self.witness = m.compose(self.witness)

    @property
    def constraint(self) -> MonomialConstraint:
        (c,) = self.desc.constraints
        return c

    def center(self) -> QuadExt:
        """Shift along t so the bounds become (-R, R) or (-inf, 0); returns R."""
        c = self.constraint
        assert c.alpha1 == 1, c
        if c.two_sided:
            self.apply(MonomialMap.shift(-(c.lower + c.upper) / 2, ZERO))
            return (c.upper - c.lower) / 2
        self.apply(MonomialMap.shift(-c.upper, ZERO))
        return ZERO


def _diag(e1: int, e2: int) -> MonomialMap:
    return MonomialMap(((e1, 0), (0, e2)))


def _shear(k: int) -> MonomialMap:
    # (z1, z2) -> (z1 z2^k, z2): the normal (a, b) becomes (a, b - k a)
    return MonomialMap(((1, k), (0, 1)))


def _finish(r: _Reducer, nf: NormalForm) -> NormalForm:
    nf = NormalForm(**{**nf.__dict__, "witness": r.witness})
    if canonical(r.desc) != form_description(nf):
        raise AssertionError(f"reduction ended at {r.desc}, expected {nf.label()}")
    return nf


def _reduce_irrational(r: _Reducer) -> NormalForm:
    if r.desc.axis2 and not r.desc.axis1:
        r.apply(MonomialMap.swap())
    if r.constraint.alpha1 < 0:
        r.apply(_diag(-1, 1))
    one_axis = r.desc.axis1 and not r.desc.axis2
    beta = r.constraint.alpha2
    if (beta < 0) != one_axis:
        r.apply(_diag(1, -1))
    beta = r.constraint.alpha2
    log_r = r.center()
    if r.desc.axis1:
        tag = "FormA"
    elif r.constraint.two_sided:
        tag = "FormC"
    else:
        tag = "FormB"
    return _finish(r, NormalForm(tag, beta=beta, log_r=log_r if tag == "FormC" else None))


def _bezout_map(a: int, b: int) -> MonomialMap:
    """Unimodular map whose first coordinate is ``z1^a z2^b``."""
    g, x, y = egcd(a, b)
    assert g == 1
    return MonomialMap(((a, b), (-y, x)))


def _reduce_rational(r: _Reducer) -> NormalForm:
    c = r.constraint
    a, b = primitive_normal(c)
    ax1, ax2 = r.desc.axis1, r.desc.axis2
    if c.two_sided:
        if a == 0:
            r.apply(MonomialMap.swap())
        else:
            r.apply(_bezout_map(a, b))
        log_r = r.center()
        return _finish(r, NormalForm("ProductD", log_r=log_r, factor1=ANNULUS,
                                     factor2=C if r.desc.axis2 else CSTAR))
    if not ax1 and not ax2:
        r.apply(_bezout_map(a, b))
        r.center()
        return _finish(r, NormalForm("ProductD", factor1=PUNCTURED_DISC, factor2=CSTAR))
    if ax1 and ax2:
        if a == 0 or (b and a > b):
            r.apply(MonomialMap.swap())
            a, b = b, a
        r.center()
        if b == 0:
            return _finish(r, NormalForm("ProductD", factor1=DISC, factor2=C))
        return _finish(r, NormalForm("FormE", p=a, q=b))
    if ax2:
        r.apply(MonomialMap.swap())
        a, b = b, a
    # exactly the axis {z1 = 0} is present, so a >= 0
    if a == 0:
        if b < 0:
            r.apply(_diag(1, -1))
        r.apply(MonomialMap.swap())
        r.center()
        return _finish(r, NormalForm("ProductD", factor1=PUNCTURED_DISC, factor2=C))
    rem = b % a
    best = min(rem, a - rem) if rem else 0
    if best != rem:
        r.apply(_diag(1, -1))
        b = -b
    r.apply(_shear((b - best) // a))
    if a == 1:
        r.center()
        return _finish(r, NormalForm("ProductD", factor1=DISC, factor2=CSTAR))
    r.apply(MonomialMap.swap())
    r.center()
    return _finish(r, NormalForm("FormF", p=best, q=a))


def reduce_strip(desc: DomainDesc) -> NormalForm:
    check_valid(desc)
    c = strip_constraint(desc)
    r = _Reducer(desc)
    if strip_type(desc) == RATIONAL:
        return _reduce_rational(r)
    return _reduce_irrational(r)


def rational_reduce(form: NormalForm) -> NormalForm:
    """Carry a FormA/B/C with rational beta on to ProductD/FormE/FormF."""
    if form.tag not in ("FormA", "FormB", "FormC"):
        raise NotRational(f"{form.tag} is not one of FormA/B/C")
    if not form.beta.is_rational:
        raise NotRational(f"beta={form.beta} is irrational")
    return _reduce_rational(_Reducer(form_description(form), form.witness))


def normal_form(desc: DomainDesc) -> NormalForm:
    """Full domains or strips; anything else raises NotAStrip."""
    check_valid(desc)
    kind = full_type(desc)
    if kind != FullType.NOT_FULL:
        return NormalForm("Full", full=kind)
    return reduce_strip(desc)
