"""JSON encoding of domain descriptions, maps and exact numbers.

Rationals are strings ``"num/den"`` (``"num"`` when den = 1).  Elements of
``Q(sqrt d)`` are objects ``{"a": rat, "b": rat, "d": int}`` and must already
be canonical: ``d`` squarefree and ``d == 1`` exactly when ``b == 0``.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any, Optional

from .domain_model import DomainDesc, MonomialConstraint, MonomialMap, Parabola, check_valid
from .exact_arith import QuadExt, format_rat, is_squarefree, single_field, MixedFieldError

SCHEMA_VERSION = 1
_RAT = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ParseError(path, message)


def _object(obj: Any, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    _expect(isinstance(obj, dict), path, "expected an object")
    unknown = set(obj) - required - set(optional)
    _expect(not unknown, path, f"unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    _expect(not missing, path, f"missing field(s) {sorted(missing)}")
    return obj


def parse_rat(obj: Any, path: str) -> Fraction:
    _expect(isinstance(obj, str), path, 'rationals are strings "num/den"')
    m = _RAT.match(obj.strip())
    _expect(m is not None, path, f"malformed rational {obj!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    _expect(den > 0, path, "denominator must be positive")
    _expect(math.gcd(num, den) == 1, path, f"{obj!r} is not in lowest terms")
    return Fraction(num, den)


def parse_quad(obj: Any, path: str) -> QuadExt:
    obj = _object(obj, path, {"a"}, {"b", "d"})
    a = parse_rat(obj["a"], f"{path}.a")
    b = parse_rat(obj.get("b", "0"), f"{path}.b")
    d = obj.get("d", 1)
    _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 1, f"{path}.d", "d must be a positive integer")
    _expect(is_squarefree(d), f"{path}.d", "d must be squarefree")
    _expect((b == 0) == (d == 1), path, "b = 0 exactly when d = 1")
    return QuadExt(a, b, d)


def _bound(obj: Any, path: str) -> Optional[QuadExt]:
    return None if obj is None else parse_quad(obj, path)


def _bool(obj: Any, path: str) -> bool:
    _expect(isinstance(obj, bool), path, "expected true or false")
    return obj


def desc_from_obj(obj: Any) -> DomainDesc:
    """Strict parse followed by validation (ValidationError on failure)."""
    obj = _object(obj, "$", {"schemaVersion", "kind", "axes"}, {"constraints", "parabolic"})
    _expect(obj["schemaVersion"] == SCHEMA_VERSION, "$.schemaVersion", f"unsupported version, expected {SCHEMA_VERSION}")
    kind = obj["kind"]
    _expect(kind in ("monomial", "parabolic"), "$.kind", 'kind must be "monomial" or "parabolic"')
    axes = _object(obj["axes"], "$.axes", {"z1", "z2"})
    ax1, ax2 = _bool(axes["z1"], "$.axes.z1"), _bool(axes["z2"], "$.axes.z2")
    if kind == "parabolic":
        _expect(not obj.get("constraints"), "$.constraints", "parabolic domains carry no constraints")
        _expect("parabolic" in obj, "$", "missing field 'parabolic'")
        pa = _object(obj["parabolic"], "$.parabolic", {"a", "b", "c"})
        para = Parabola(*(parse_rat(pa[k], f"$.parabolic.{k}") for k in "abc"))
        return check_valid(DomainDesc((), ax1, ax2, para))
    _expect("parabolic" not in obj, "$.parabolic", "only allowed when kind is parabolic")
    raw = obj.get("constraints", [])
    _expect(isinstance(raw, list), "$.constraints", "expected a list")
    cs = []
    for i, c in enumerate(raw):
        p = f"$.constraints[{i}]"
        c = _object(c, p, {"alpha"}, {"lowerLog", "upperLog"})
        _expect(isinstance(c["alpha"], list) and len(c["alpha"]) == 2, f"{p}.alpha", "expected two exponents")
        a1, a2 = (parse_quad(v, f"{p}.alpha[{j}]") for j, v in enumerate(c["alpha"]))
        cs.append(MonomialConstraint(a1, a2, _bound(c.get("lowerLog"), f"{p}.lowerLog"),
                                     _bound(c.get("upperLog"), f"{p}.upperLog")))
    try:
        single_field(v for c in cs for v in c.quad_values())
    except MixedFieldError as exc:
        raise ParseError("$.constraints", f"one quadratic field per file: {exc}") from None
    return check_valid(DomainDesc(tuple(cs), ax1, ax2))


def parse_domain_file(data: bytes | str) -> DomainDesc:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return desc_from_obj(obj)


def load_domain(path: str) -> DomainDesc:
    with open(path, "rb") as fh:
        return parse_domain_file(fh.read())


# -- encoding ----------------------------------------------------------------

def rat_obj(x: Fraction) -> str:
    return format_rat(Fraction(x))


def quad_obj(x) -> dict:
    x = QuadExt.coerce(x)
    return {"a": rat_obj(x.a), "b": rat_obj(x.b), "d": x.d}


def desc_to_obj(desc: DomainDesc) -> dict:
    out: dict = {"schemaVersion": SCHEMA_VERSION, "axes": {"z1": desc.axis1, "z2": desc.axis2}}
    if desc.parabola is not None:
        pa = desc.parabola
        out["kind"] = "parabolic"
        out["parabolic"] = {"a": rat_obj(pa.a), "b": rat_obj(pa.b), "c": rat_obj(pa.c)}
        return out
    out["kind"] = "monomial"
    out["constraints"] = [
        {
            "alpha": [quad_obj(c.alpha1), quad_obj(c.alpha2)],
            "lowerLog": None if c.lower is None else quad_obj(c.lower),
            "upperLog": None if c.upper is None else quad_obj(c.upper),
        }
        for c in desc.constraints
    ]
    return out


def dump_domain(desc: DomainDesc) -> str:
    return json.dumps(desc_to_obj(desc), indent=2, sort_keys=True) + "\n"


def map_obj(m: MonomialMap) -> dict:
    return {
        "matrix": [list(m.matrix[0]), list(m.matrix[1])],
        "logModulus1": quad_obj(m.log_modulus1),
        "logModulus2": quad_obj(m.log_modulus2),
    }
