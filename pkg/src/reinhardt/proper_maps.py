"""Proper holomorphic maps between normal forms of irrational type.

All maps are monomial up to a torus factor ``(a, b)`` with
``|a||b|^beta = 1``; answers list the exponent matrices only.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact_arith import MixedFieldError, QuadExt, lattice_member, single_field

FIELD_MISMATCH = "FieldMismatch"
NO_LATTICE_POINT = "NoLatticePoint"
SIGN_OBSTRUCTION = "SignObstruction"
NOT_PROPORTIONAL = "NotProportional"

Matrix = tuple[tuple[int, int], tuple[int, int]]
TORUS_NOTE = "scalars (a, b) range over |a||b|^beta = 1"


@dataclass(frozen=True)
class ProperMapAnswer:
    exists: bool
    maps: tuple[Matrix, ...] = ()
    certificate: dict = field(default_factory=dict)
    refutation: Optional[str] = None
    note: str = ""


def _irrational(*xs: QuadExt) -> None:
    for x in xs:
        if x.is_rational:
            raise ValueError(f"{x} is rational; these criteria need irrational exponents")


def proper_annuli(alpha, logr, beta, logR) -> ProperMapAnswer:
    """Maps from ``{1/r < |z1||z2|^alpha < r}`` onto ``{1/R < |w1||w2|^beta < R}``."""
    alpha, logr, beta, logR = (QuadExt.coerce(v) for v in (alpha, logr, beta, logR))
    _irrational(alpha, beta)
    if logr <= 0 or logR <= 0:
        raise ValueError("log-radii must be positive")
    try:
        gamma = logR / logr
    except MixedFieldError:
        return ProperMapAnswer(False, refutation=FIELD_MISMATCH)
    first = lattice_member(gamma, beta)
    if first is None:
        return ProperMapAnswer(False, refutation=NO_LATTICE_POINT, certificate={"gamma": gamma})
    try:
        agamma = alpha * gamma
    except MixedFieldError:
        return ProperMapAnswer(False, refutation=FIELD_MISMATCH, certificate={"gamma": gamma})
    second = lattice_member(agamma, beta)
    if second is None:
        return ProperMapAnswer(False, refutation=NO_LATTICE_POINT,
                               certificate={"gamma": gamma, "alpha_gamma": agamma})
    (k1, l1), (k2, l2) = first, second
    m = ((k1, k2), (l1, l2))
    neg = ((-k1, -k2), (-l1, -l2))
    assert gamma == k1 + l1 * beta and agamma == k2 + l2 * beta
    return ProperMapAnswer(True, (m, neg), {"gamma": gamma, "k1": k1, "l1": l1, "k2": k2, "l2": l2},
                           note=TORUS_NOTE)


def _height(sol: tuple[int, int, int, int]) -> int:
    return max(abs(v) for v in sol)


def _pointed_key(sol):
    k1, l1, k2, l2 = sol
    return (_height(sol), abs(l1), abs(k1), -k1, -l1, abs(l2), abs(k2), k2, l2)


def _ring(h: int):
    """Integer points with max(|k|, |l|) == h."""
    if h == 0:
        yield 0, 0
        return
    for k in range(-h, h + 1):
        yield k, h
        yield k, -h
    for l in range(-h + 1, h):
        yield h, l
        yield -h, l


def proper_pointed(alpha, beta, search_bound: int = 10) -> ProperMapAnswer:
    """Maps ``D*_alpha -> D*_beta``: integers with ``alpha (k1 + l1 beta) = k2 + l2 beta``.

    When alpha and beta share a field, ``(k1, l1) -> alpha (k1 + l1 beta)`` is
    Q-linear and ``Z + beta Z`` has full rank, so ``N Z^2`` solves the system
    for the common denominator N of the coordinates of ``alpha`` and
    ``alpha*beta`` in the basis ``{1, beta}``.  The search for a minimal-height
    solution therefore terminates by height ``N``; ``within_bound`` in the
    certificate says whether that solution fits the box ``search_bound``.
    """
    alpha, beta = QuadExt.coerce(alpha), QuadExt.coerce(beta)
    _irrational(alpha, beta)
    try:
        single_field([alpha, beta])
    except MixedFieldError:
        return ProperMapAnswer(False, refutation=FIELD_MISMATCH)
    # (k2, l2) = k1 * coords(alpha) + l1 * coords(alpha beta)
    (u0, v0), (u1, v1) = _basis_coords(alpha, beta), _basis_coords(alpha * beta, beta)
    n_bound = _clearing_bound(alpha, beta)
    pool, best = [], None
    for h in range(1, n_bound + 1):
        for k1, l1 in _ring(h):
            k2, l2 = k1 * u0 + l1 * u1, k1 * v0 + l1 * v1
            if k2.denominator == 1 and l2.denominator == 1 and k1 + l1 * beta > 0:
                pool.append((k1, l1, int(k2), int(l2)))
        ready = [sol for sol in pool if _height(sol) <= h]
        if ready:
            best = min(ready, key=_pointed_key)
            break
    assert best is not None, "lattice argument guarantees a solution"
    k1, l1, k2, l2 = best
    assert alpha * (k1 + l1 * beta) == k2 + l2 * beta and k1 + l1 * beta > 0
    cert = {"k1": k1, "l1": l1, "k2": k2, "l2": l2, "height": _height(best)}
    cert["within_bound"] = _height(best) <= search_bound
    return ProperMapAnswer(True, (((k1, k2), (l1, l2)),), cert, note=TORUS_NOTE)


def _basis_coords(x: QuadExt, beta: QuadExt) -> tuple[Fraction, Fraction]:
    """Rational ``(u, v)`` with ``x = u + v beta`` (same field assumed)."""
    v = x.b / beta.b if x.d == beta.d else Fraction(0)
    return x.a - v * beta.a, v


def _clearing_bound(alpha: QuadExt, beta: QuadExt) -> int:
    coords = _basis_coords(alpha, beta) + _basis_coords(alpha * beta, beta)
    n = math.lcm(*(c.denominator for c in coords))
    # (n, 0) solves the system; its image has height at most n*max|coord|
    return math.ceil(max(n, *(abs(c * n) for c in coords)))


def proper_full(alpha, beta) -> ProperMapAnswer:
    """Maps ``D_alpha -> D_beta`` for irrational alpha, beta."""
    alpha, beta = QuadExt.coerce(alpha), QuadExt.coerce(beta)
    _irrational(alpha, beta)
    if (alpha > 0) != (beta > 0):
        return ProperMapAnswer(False, refutation=SIGN_OBSTRUCTION)
    try:
        ratio = alpha / beta
        single_field([alpha, beta])
    except MixedFieldError:
        return ProperMapAnswer(False, refutation=FIELD_MISMATCH)
    if alpha > 0:
        if not ratio.is_rational:
            return ProperMapAnswer(False, refutation=NOT_PROPORTIONAL, certificate={"ratio": ratio})
        p = ratio.rational()
        k, l = p.denominator, p.numerator
        assert k * alpha == l * beta
        return ProperMapAnswer(True, (((k, 0), (0, l)),), {"p": p, "k": k, "l": l},
                               note="(z1, z2) -> (z1^k, z2^l) and all multiples (mk, ml)")
    p1, p2 = _basis_coords(alpha, beta)
    k1 = math.lcm(p1.denominator, p2.denominator)
    k2, l = int(p1 * k1), int(p2 * k1)
    assert k1 * alpha == k2 + l * beta
    return ProperMapAnswer(True, (((k1, k2), (0, l)),), {"p1": p1, "p2": p2, "k1": k1, "k2": k2, "l": l},
                           note="(z1, z2) -> (z1^k1 z2^k2, z2^l) and all multiples")


# -- brute-force oracles -----------------------------------------------------

def _lattice_table(beta: QuadExt, bound: int) -> dict[QuadExt, tuple[int, int]]:
    return {k + l * beta: (k, l) for k in range(-bound, bound + 1) for l in range(-bound, bound + 1)}


def brute_force_annuli(alpha, logr, beta, logR, bound: int = 10) -> Optional[tuple[int, int, int, int]]:
    alpha, logr, beta, logR = (QuadExt.coerce(v) for v in (alpha, logr, beta, logR))
    table = _lattice_table(beta, bound)
    try:
        scaled = {logr * x: kl for x, kl in table.items()}
        target = alpha * logR
    except MixedFieldError:
        return None
    first, second = scaled.get(logR), scaled.get(target)
    if first is None or second is None:
        return None
    return first + second


def brute_force_pointed(alpha, beta, bound: int = 10) -> Optional[tuple[int, int, int, int]]:
    alpha, beta = QuadExt.coerce(alpha), QuadExt.coerce(beta)
    table = _lattice_table(beta, bound)
    for (k1, l1) in sorted(table.values()):
        base = k1 + l1 * beta
        if base <= 0:
            continue
        try:
            hit = table.get(alpha * base)
        except MixedFieldError:
            return None
        if hit is not None:
            return (k1, l1) + hit
    return None


def brute_force_full(alpha, beta, bound: int = 10) -> Optional[tuple[int, ...]]:
    alpha, beta = QuadExt.coerce(alpha), QuadExt.coerce(beta)
    rng = range(-bound, bound + 1)
    try:
        if alpha > 0 and beta > 0:
            for k, l in itertools.product(range(1, bound + 1), repeat=2):
                if k * alpha == l * beta:
                    return k, l
        elif alpha < 0 and beta < 0:
            for k1, k2, l in itertools.product(range(1, bound + 1), rng, rng):
                if l and k1 * alpha == k2 + l * beta:
                    return k1, k2, l
    except MixedFieldError:
        return None
    return None
