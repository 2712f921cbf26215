"""Reference domains with their expected Serre-class branches."""
from __future__ import annotations

from fractions import Fraction

from .domain_model import DomainDesc, MonomialConstraint, Parabola, polydisc
from .exact_arith import QuadExt

SQRT2 = QuadExt.sqrt(2)


def _one(alpha2, lower=None, upper=0, axes=(False, False)) -> DomainDesc:
    return DomainDesc((MonomialConstraint(1, alpha2, lower, upper),), *axes)


def golden_corpus() -> dict[str, tuple[DomainDesc, str]]:
    return {
        "C2": (DomainDesc((), True, True), "Full"),
        "CxCstar": (DomainDesc((), True, False), "Full"),
        "Cstar2": (DomainDesc((), False, False), "Full"),
        "polydisc": (polydisc(), "HyperbolicOutOfScope"),
        "z1z2_lt_1": (_one(1, axes=(True, True)), "StripRationalType"),
        "z1sq_z2cube": (DomainDesc((MonomialConstraint(2, 3, None, 0),), True, True), "StripRationalType"),
        "Dstar_2_3": (_one(Fraction(2, 3)), "StripRationalType"),
        "D_sqrt2": (_one(SQRT2, axes=(True, True)), "StripIrrational_Dalpha"),
        "Dstar_1_sqrt2": (_one(1 + SQRT2), "StripIrrational_DstarPell"),
        "D_sqrt2_r": (_one(SQRT2, lower=-1, upper=1), "StripIrrational_Annulus"),
        "D1": (DomainDesc((MonomialConstraint(1, 0, None, 0), MonomialConstraint(1, 1, None, 0)), True, True),
               "NoLine_Thm14"),
        "parabolic": (DomainDesc((), True, False, Parabola(-1, 0, 0)), "NoLine_Thm16"),
    }
