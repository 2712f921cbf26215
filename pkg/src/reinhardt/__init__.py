"""Exact classification of two-dimensional pseudoconvex Reinhardt domains."""
from .exact_arith import QuadExt
from .domain_model import DomainDesc, MonomialConstraint, MonomialMap, Parabola
from .normal_form import NormalForm, normal_form
from .verdicts import SerreVerdict, serre_verdict

__all__ = [
    "QuadExt",
    "DomainDesc",
    "MonomialConstraint",
    "MonomialMap",
    "Parabola",
    "NormalForm",
    "normal_form",
    "SerreVerdict",
    "serre_verdict",
]
__version__ = "0.1.0"
