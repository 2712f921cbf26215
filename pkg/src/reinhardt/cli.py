"""Command-line front end.

Exit codes: 0 decided, 2 invalid input, 3 out of scope (hyperbolic input,
not a strip, no witness available).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .automorphisms import HyperbolicInput, Unclassified, aut_group, compactness
from .domain_file import ParseError, load_domain, map_obj, quad_obj, rat_obj
from .domain_model import (
    DomainDesc,
    ValidationError,
    axis_slices,
    contains_line,
    dhyp,
    full_type,
    hyperbolicity,
)
from .exact_arith import QuadExt, parse_rat
from .normal_form import NormalForm, NotAStrip, normal_form, strip_type
from .pell import (
    SquareInput,
    RationalSqrt,
    alpha_to_pnq,
    matrix_from_pell,
    pell_fundamental,
    pell_iterate,
)
from .proper_maps import proper_annuli, proper_full, proper_pointed
from .verdicts import OutsideDomain, serre_verdict, stehle_eval, stehle_witness

OK, INVALID, OUT_OF_SCOPE = 0, 2, 3


@dataclass
class Report:
    command: str
    payload: dict = field(default_factory=dict)
    exit_code: int = OK
    diagnostics: list[str] = field(default_factory=list)

    def to_obj(self) -> dict:
        return {"command": self.command, "exitCode": self.exit_code,
                "diagnostics": self.diagnostics, **self.payload}


class ScopeError(Exception):
    pass


# -- payload helpers ---------------------------------------------------------

def _opt_quad(x: Optional[QuadExt]):
    return None if x is None else quad_obj(x)


def normal_form_obj(nf: NormalForm) -> dict:
    out = {"tag": nf.tag, "label": nf.label(), "witness": map_obj(nf.witness)}
    for key, val in (("beta", nf.beta), ("logR", nf.log_r)):
        if val is not None:
            out[key] = quad_obj(val)
    for key, val in (("p", nf.p), ("q", nf.q), ("factor1", nf.factor1), ("factor2", nf.factor2)):
        if val is not None:
            out[key] = val
    if nf.full is not None:
        out["fullType"] = nf.full.value
    return out


def _slice_obj(s) -> dict:
    interval = None if s.interval is None else [_opt_quad(s.interval[0]), _opt_quad(s.interval[1])]
    return {"axis": s.axis, "interval": interval, "includesOrigin": s.includes_origin,
            "hyperbolic": s.hyperbolic}


def _jsonable(v):
    if isinstance(v, QuadExt):
        return quad_obj(v)
    if isinstance(v, Fraction):
        return rat_obj(v)
    return v


# -- commands ----------------------------------------------------------------

def cmd_classify(args) -> Report:
    desc = load_domain(args.file)
    hyp = hyperbolicity(desc)
    info = axis_slices(desc)
    payload = {
        "hyperbolic": hyp.hyperbolic,
        "reasons": list(hyp.reasons),
        "line": None if hyp.line is None else [quad_obj(x) for x in hyp.line],
        "fullType": full_type(desc).value,
        "slices": [_slice_obj(s) for s in info.slices],
        "I": sorted(info.nonhyperbolic_axes),
        "t": info.t,
        "tHyp": axis_slices(dhyp(desc)).t,
        "stripType": None,
        "normalForm": None,
    }
    rep = Report("classify", payload)
    if hyp.hyperbolic:
        rep.exit_code = OUT_OF_SCOPE
        rep.diagnostics.append("hyperbolic: Serre-class and compactness verdicts are out of scope")
        return rep
    if contains_line(desc) is not None:
        payload["normalForm"] = normal_form_obj(normal_form(desc))
        if full_type(desc).value == "NotFull":
            payload["stripType"] = strip_type(desc)
    return rep


def cmd_serre(args) -> Report:
    v = serre_verdict(load_domain(args.file))
    payload = {
        "inS": v.in_s,
        "branch": v.branch,
        "witness": None if v.witness is None else {**v.witness.to_dict(), "trace": v.witness.trace},
        "normalForm": None if v.normal_form is None else normal_form_obj(v.normal_form),
        "notes": list(v.notes),
    }
    rep = Report("serre", payload)
    if v.in_s is None:
        rep.exit_code = OUT_OF_SCOPE
        rep.diagnostics.extend(v.notes)
    return rep


def cmd_aut(args) -> Report:
    desc = load_domain(args.file)
    try:
        group = aut_group(desc)
        verdict = compactness(desc)
    except (Unclassified, HyperbolicInput) as exc:
        raise ScopeError(str(exc)) from None
    fams = []
    for f in group.families:
        item = {"tag": f.tag}
        if f.beta is not None:
            item["beta"] = quad_obj(f.beta)
        if f.case is not None:
            item["case"] = f.case
        if f.generator is not None:
            item["generator"] = {**f.generator.to_dict(), "trace": f.generator.trace}
        if f.shear is not None:
            item["shear"] = {"logA": quad_obj(f.shear.log_a), "logB": quad_obj(f.shear.log_b),
                             "k": f.shear.k, "epsilon": f.shear.epsilon}
        if f.note:
            item["note"] = f.note
        fams.append(item)
    payload = {
        "families": fams,
        "compact": verdict.compact,
        "reason": verdict.reason,
        "notes": ["every family also carries the rotation torus (phases are not modeled)"],
    }
    if args.witness:
        payload["witness"] = None if verdict.witness is None else map_obj(verdict.witness)
        payload["coordinates"] = map_obj(group.to_source)
    return Report("aut", payload)


def cmd_normal_form(args) -> Report:
    desc = load_domain(args.file)
    try:
        nf = normal_form(desc)
    except NotAStrip as exc:
        raise ScopeError(f"not a strip: {exc}") from None
    return Report("normal-form", {"normalForm": normal_form_obj(nf)})


def cmd_pell(args) -> Report:
    sols = pell_iterate(pell_fundamental(args.d), args.count)
    return Report("pell", {"D": args.d, "solutions": [{"x": s.x, "y": s.y, "index": s.index} for s in sols]})


def cmd_pell_aut(args) -> Report:
    p, q = parse_rat(args.p), parse_rat(args.q)
    data = alpha_to_pnq(p, q)
    sol = pell_fundamental(data.pell_D)
    m = matrix_from_pell(data, sol)
    return Report("pell-aut", {
        "pnq": {"pInt": data.p_int, "qInt": data.q_int, "n": data.n, "pellD": data.pell_D},
        "solution": {"x": sol.x, "y": sol.y},
        "matrix": {**m.to_dict(), "det": m.det, "trace": m.trace},
        "alphas": [quad_obj(data.alpha(1)), quad_obj(data.alpha(-1))],
    })


def cmd_proper(args) -> Report:
    src, dst = load_domain(args.src), load_domain(args.dst)
    try:
        a, b = normal_form(src), normal_form(dst)
    except NotAStrip as exc:
        raise ScopeError(f"not a strip: {exc}") from None
    if a.tag != b.tag or a.tag not in ("FormA", "FormB", "FormC"):
        raise ScopeError(f"proper maps are decided between irrational forms of one kind, got {a.tag} and {b.tag}")
    if a.tag == "FormC":
        ans = proper_annuli(a.beta, a.log_r, b.beta, b.log_r)
    elif a.tag == "FormB":
        ans = proper_pointed(a.beta, b.beta, args.bound)
    else:
        ans = proper_full(a.beta, b.beta)
    return Report("proper", {
        "source": normal_form_obj(a),
        "target": normal_form_obj(b),
        "exists": ans.exists,
        "maps": [[list(r) for r in m] for m in ans.maps],
        "certificate": {k: _jsonable(v) for k, v in ans.certificate.items()},
        "refutation": ans.refutation,
        "note": ans.note,
    })


def cmd_stehle(args) -> Report:
    desc = load_domain(args.file)
    try:
        t, s = (float(x) for x in args.at.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("--at expects two numbers t,s") from None
    ctx = stehle_witness(desc)
    if ctx is None:
        raise ScopeError("no exhaustion witness for this domain")
    to_form = ctx.group.to_source
    tf, sf = to_form.apply_log_float(t, s)
    value = stehle_eval(ctx.witness, tf, sf)
    return Report("stehle", {"formula": ctx.witness.formula, "at": [t, s], "formCoordinates": [tf, sf],
                             "value": value})


# -- driver ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="reinhardt", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "hyperbolicity, slices and normal form").add_argument("file")
    add("serre", cmd_serre, "Serre-class verdict").add_argument("file")
    p = add("aut", cmd_aut, "automorphism families and compactness")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    add("normal-form", cmd_normal_form, "normal form of a strip or full domain").add_argument("file")
    p = add("pell", cmd_pell, "solutions of x^2 - D y^2 = 1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p = add("pell-aut", cmd_pell_aut, "Pell automorphism matrix for alpha = p +- sqrt(q)")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p = add("proper", cmd_proper, "proper holomorphic maps between irrational forms")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--bound", type=int, default=10)
    p = add("stehle", cmd_stehle, "evaluate the exhaustion witness at log coordinates")
    p.add_argument("file")
    p.add_argument("--at", required=True, help="t,s = log|z1|,log|z2|")
    return parser


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict) and set(val) == {"a", "b", "d"}:
            lines.append(f"{pad}{key}: {_quad_text(val)}")
        elif isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                if set(item) == {"a", "b", "d"}:
                    lines.append(f"{pad}  - {_quad_text(item)}")
                else:
                    lines.append(f"{pad}  -")
                    lines.append(render_text(item, indent + 2))
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(l for l in lines if l)


def _quad_text(q: dict) -> str:
    return str(QuadExt(Fraction(q["a"]), Fraction(q["b"]), q["d"]))


def run_command(argv: Sequence[str]) -> Report:
    """Parse ``argv`` and run it; never raises for user errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScopeError as exc:
        return Report(args.command, exit_code=OUT_OF_SCOPE, diagnostics=[str(exc)])
    except (ParseError, ValidationError, SquareInput, RationalSqrt, OutsideDomain,
            argparse.ArgumentTypeError, OSError, ValueError) as exc:
        return Report(args.command, exit_code=INVALID, diagnostics=[f"{type(exc).__name__}: {exc}"])


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args_fmt = build_parser().parse_known_args(argv)[0]
    fmt = getattr(args_fmt, "format", "json")
    rep = run_command(argv)
    for d in rep.diagnostics:
        print(d, file=sys.stderr)
    obj = rep.to_obj()
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(render_text(obj))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
