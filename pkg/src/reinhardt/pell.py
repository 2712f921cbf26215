"""Pell's equation and the hyperbolic monomial automorphisms it generates.

For ``alpha = (p +- sqrt(q)) / n`` with integers ``p, q, n`` every positive
solution ``(x, y)`` of ``x^2 - n^2 q y^2 = 1`` yields an integer matrix

    k1 = x - p*n*y      k2 = y*(q - p^2)
    l1 = n^2*y          l2 = x + p*n*y

with determinant 1 whose transpose has ``(1, alpha)`` as an eigenvector with
positive eigenvalue ``x +- n*y*sqrt(q)``.  The matrix is the same for both
conjugates of alpha, since both are roots of ``(n*X - p)^2 = q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_arith import (
    QuadExt,
    as_p_sqrt_q,
    cf_expand,
    is_square,
    quad_normalize,
    rational_sqrt,
    to_rat,
)


class SquareInput(ValueError):
    pass


class RationalSqrt(ValueError):
    pass


class IncompatiblePell(ValueError):
    pass


class ConstraintViolation(RuntimeError):
    """Internal consistency check failed; indicates a bug."""


@dataclass(frozen=True)
class PellSolution:
    D: int
    x: int
    y: int
    index: int = 1

    def __post_init__(self):
        if self.x <= 0 or self.y <= 0:
            raise ValueError("Pell solutions here are positive")
        if self.x * self.x - self.D * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.D} y^2 = 1")


def pell_fundamental(D: int) -> PellSolution:
    """Smallest positive solution of ``x^2 - D y^2 = 1`` via the CF of sqrt(D)."""
    if D <= 0:
        raise ValueError("D must be positive")
    if is_square(D):
        raise SquareInput(f"{D} is a perfect square")
    expansion = cf_expand(QuadExt.sqrt(D))
    for p, q in expansion.convergents():
        if p * p - D * q * q == 1:
            return PellSolution(D, p, q, 1)
    raise AssertionError("unreachable: convergents of sqrt(D) are infinite")


def pell_iterate(fund: PellSolution, count: int) -> list[PellSolution]:
    """Solutions of index 1..count, i.e. the powers ``(x1 + y1 sqrt D)^n``."""
    if fund.index != 1:
        raise ValueError("pell_iterate expects the fundamental solution")
    if count < 1:
        raise ValueError("count must be positive")
    D, x1, y1 = fund.D, fund.x, fund.y
    out = [fund]
    x, y = x1, y1
    for n in range(2, count + 1):
        x, y = x1 * x + D * y1 * y, x1 * y + y1 * x
        out.append(PellSolution(D, x, y, n))
    return out


@dataclass(frozen=True)
class PNQData:
    """``p = p_int/n`` and ``q = q_int/n^2`` over a common minimal ``n``."""

    p_int: int
    q_int: int
    n: int

    @property
    def p(self) -> Fraction:
        return Fraction(self.p_int, self.n)

    @property
    def q(self) -> Fraction:
        return Fraction(self.q_int, self.n * self.n)

    @property
    def pell_D(self) -> int:
        return self.n * self.n * self.q_int

    def alpha(self, sign: int = 1) -> QuadExt:
        return quad_normalize(self.p, Fraction(sign), self.q)


def _sqrt_clearing(m: int) -> int:
    """Smallest s > 0 with m | s^2."""
    s = 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** ((e + 1) // 2)
        p += 1 if p == 2 else 2
    return s * m


def alpha_to_pnq(p, q) -> PNQData:
    p, q = to_rat(p), to_rat(q)
    if q <= 0:
        raise ValueError("q must be positive")
    if rational_sqrt(q) is not None:
        raise RationalSqrt(f"sqrt({q}) is rational")
    n = math.lcm(p.denominator, _sqrt_clearing(q.denominator))
    p_int = p * n
    q_int = q * n * n
    assert p_int.denominator == 1 and q_int.denominator == 1
    return PNQData(int(p_int), int(q_int), n)


@dataclass(frozen=True)
class AutMatrix:
    """Exponent matrix of ``(a z1^k1 z2^k2, b z1^l1 z2^l2)``."""

    k1: int
    k2: int
    l1: int
    l2: int

    @property
    def det(self) -> int:
        return self.k1 * self.l2 - self.k2 * self.l1

    @property
    def trace(self) -> int:
        return self.k1 + self.l2

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.k1, self.k2), (self.l1, self.l2)

    def __matmul__(self, other: "AutMatrix") -> "AutMatrix":
        return AutMatrix(
            self.k1 * other.k1 + self.k2 * other.l1,
            self.k1 * other.k2 + self.k2 * other.l2,
            self.l1 * other.k1 + self.l2 * other.l1,
            self.l1 * other.k2 + self.l2 * other.l2,
        )

    def __pow__(self, n: int) -> "AutMatrix":
        if n < 0:
            if abs(self.det) != 1:
                raise ValueError("only unimodular matrices have integer inverses")
            e = self.det
            inv = AutMatrix(self.l2 * e, -self.k2 * e, -self.l1 * e, self.k1 * e)
            return inv ** (-n)
        result = AutMatrix(1, 0, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def eigen_condition(self, alpha: QuadExt) -> bool:
        """``alpha*(k1 + l1*alpha) == k2 + l2*alpha``."""
        return alpha * (self.k1 + self.l1 * alpha) == self.k2 + self.l2 * alpha

    def multiplier(self, alpha: QuadExt) -> QuadExt:
        return self.k1 + self.l1 * alpha

    def violations(self, alpha: QuadExt) -> list[str]:
        out = []
        if abs(self.det) != 1:
            out.append(f"determinant {self.det} is not +-1")
        if not self.eigen_condition(alpha):
            out.append("alpha(k1+l1 alpha) != k2+l2 alpha")
        if self.multiplier(alpha) <= 0:
            out.append("k1 + l1 alpha is not positive")
        return out

    def to_dict(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "l1": self.l1, "l2": self.l2}


def matrix_from_pell(data: PNQData, sol: PellSolution) -> AutMatrix:
    if sol.D != data.pell_D:
        raise IncompatiblePell(f"solution is for D={sol.D}, data needs D={data.pell_D}")
    p, q, n, x, y = data.p_int, data.q_int, data.n, sol.x, sol.y
    m = AutMatrix(k1=x - p * n * y, k2=y * (q - p * p), l1=n * n * y, l2=x + p * n * y)
    # both conjugates of alpha share the matrix; check each one
    for sign in (1, -1):
        alpha = data.alpha(sign)
        bad = m.violations(alpha)
        if bad:
            raise ConstraintViolation(f"{m} vs alpha={alpha}: {'; '.join(bad)}")
    if m.k2 != Fraction(m.l1) * (data.q - data.p ** 2):
        raise ConstraintViolation("k2 != l1 (q - p^2) / n^2")
    if m.l2 != m.k1 + 2 * data.p * m.l1:
        raise ConstraintViolation("l2 != k1 + 2 p l1 / n")
    if m.trace != 2 * x:
        raise ConstraintViolation("trace != 2x")
    return m


def pnq_for_alpha(alpha: QuadExt) -> tuple[PNQData, int]:
    form = as_p_sqrt_q(alpha)
    if form is None:
        raise RationalSqrt(f"{alpha} is rational")
    return alpha_to_pnq(form.p, form.q), form.sign


def pell_generator(alpha: QuadExt) -> AutMatrix:
    """The index-1 Pell matrix stabilising ``t + alpha s``."""
    data, _ = pnq_for_alpha(alpha)
    return matrix_from_pell(data, pell_fundamental(data.pell_D))


def pell_family_index(alpha: QuadExt, m: AutMatrix) -> Optional[int]:
    """Signed power ``j`` with ``m == generator**j``, or None if m is outside the family.

    The family is ``x*I + y*N`` with ``N = [[-pn, q-p^2], [n^2, pn]]``, so
    ``m`` belongs to it iff its entries have that shape and ``x > 0`` solves
    the Pell equation.  This does not claim the family is the whole stabiliser.
    """
    data, _ = pnq_for_alpha(alpha)
    p, q, n = data.p_int, data.q_int, data.n
    if m.l1 % (n * n):
        return None
    y = m.l1 // (n * n)
    if (m.k1 + m.l2) % 2:
        return None
    x = (m.k1 + m.l2) // 2
    if (m.k1, m.k2, m.l2) != (x - p * n * y, y * (q - p * p), x + p * n * y):
        return None
    D = data.pell_D
    if x <= 0 or x * x - D * y * y != 1:
        return None
    if y == 0:
        return 0
    fund = pell_fundamental(D)
    j, (cx, cy) = 1, (fund.x, fund.y)
    target_y = abs(y)
    while cy < target_y:
        cx, cy = fund.x * cx + D * fund.y * cy, fund.x * cy + fund.y * cx
        j += 1
    if (cx, cy) != (x, target_y):
        return None
    return j if y > 0 else -j
