"""Exact arithmetic over Q and real quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  :class:`QuadExt`
holds ``a + b*sqrt(d)`` in canonical form: ``d`` squarefree, and ``b == 0``
exactly when ``d == 1``.  Nothing in here touches floating point except
``float(x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Optional, Union

Rat = Fraction
Number = Union[int, Fraction, "QuadExt"]


class MixedFieldError(ValueError):
    """Operands live in different quadratic fields."""


class MaxTermsExceeded(RuntimeError):
    pass


def to_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rat(x: Fraction) -> str:
    """``num/den`` with the denominator dropped when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=4096)
def square_part(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s*s*f`` with ``f`` squarefree; returns ``(s, f)``."""
    if n <= 0:
        raise ValueError("square_part needs a positive integer")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * n


def is_squarefree(n: int) -> bool:
    return n >= 1 and square_part(n)[0] == 1


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = to_rat(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    if is_square(p) and is_square(q):
        return Fraction(math.isqrt(p), math.isqrt(q))
    return None


@dataclass(frozen=True)
class QuadExt:
    """``a + b*sqrt(d)``; build through :func:`quad_normalize` or :meth:`of`."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", to_rat(self.a))
        object.__setattr__(self, "b", to_rat(self.b))
        if not isinstance(self.d, int) or not is_squarefree(self.d):
            raise ValueError(f"d must be a squarefree positive integer, got {self.d!r}")
        if (self.b == 0) != (self.d == 1):
            raise ValueError("non-canonical QuadExt: b == 0 exactly when d == 1")

    @classmethod
    def of(cls, a=0, b=0, d=1) -> "QuadExt":
        return quad_normalize(to_rat(a), to_rat(b), to_rat(d))

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return cls(to_rat(x))

    @classmethod
    def sqrt(cls, n) -> "QuadExt":
        return quad_normalize(Fraction(0), Fraction(1), to_rat(n))

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        if self.is_rational:
            return self
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        return quad_sign(self)

    def floor(self) -> int:
        return quad_floor(self)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return quad_arith(self, other, "add")

    def __radd__(self, other):
        return quad_arith(other, self, "add")

    def __sub__(self, other):
        return quad_arith(self, other, "sub")

    def __rsub__(self, other):
        return quad_arith(other, self, "sub")

    def __mul__(self, other):
        return quad_arith(self, other, "mul")

    def __rmul__(self, other):
        return quad_arith(other, self, "mul")

    def __truediv__(self, other):
        return quad_arith(self, other, "div")

    def __rtruediv__(self, other):
        return quad_arith(other, self, "div")

    def __neg__(self):
        if self.is_rational:
            return QuadExt(-self.a)
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if quad_sign(self) < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return QuadExt(1) / self ** (-n)
        result, base = QuadExt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        return quad_sign(quad_arith(self, other, "sub"))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self):
        if self.is_rational:
            return format_rat(self.a)
        b = self.b
        if b == 1:
            tail = f"√{self.d}"
        elif b == -1:
            tail = f"-√{self.d}"
        else:
            tail = f"{format_rat(b)}√{self.d}"
        if self.a == 0:
            return tail
        sep = "" if tail.startswith("-") else "+"
        return f"{format_rat(self.a)}{sep}{tail}"

    def __repr__(self):
        return f"QuadExt({self})"

    def sort_key(self) -> tuple:
        return (self.a, self.b, self.d)


ZERO = QuadExt(0)
ONE = QuadExt(1)


def quad_normalize(a, b, d_raw) -> QuadExt:
    """Canonical form of ``a + b*sqrt(d_raw)`` for rational ``d_raw > 0``.

    >>> quad_normalize(1, 2, 8)
    QuadExt(1+4√2)
    """
    a, b, d_raw = to_rat(a), to_rat(b), to_rat(d_raw)
    if d_raw <= 0:
        raise ValueError("radicand must be positive")
    if b == 0:
        return QuadExt(a)
    # sqrt(n/m) = sqrt(n*m)/m
    s, f = square_part(d_raw.numerator * d_raw.denominator)
    coef = b * Fraction(s, d_raw.denominator)
    if f == 1:
        return QuadExt(a + coef)
    return QuadExt(a, coef, f)


def _common_field(x: QuadExt, y: QuadExt) -> int:
    if x.d == 1:
        return y.d
    if y.d == 1 or x.d == y.d:
        return x.d
    raise MixedFieldError(f"Q(√{x.d}) and Q(√{y.d}) mixed")


def _make(a: Fraction, b: Fraction, d: int) -> QuadExt:
    if b == 0 or d == 1:
        return QuadExt(a + (b if d == 1 else 0))
    return QuadExt(a, b, d)


def quad_arith(x, y, op: str) -> QuadExt:
    """Exact field operation ``op`` in {add, sub, mul, div}."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    d = _common_field(x, y)
    if op == "add":
        return _make(x.a + y.a, x.b + y.b, d)
    if op == "sub":
        return _make(x.a - y.a, x.b - y.b, d)
    if op == "mul":
        return _make(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d)
    if op == "div":
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(√d)")
        # multiply through by the conjugate of y
        num_a = x.a * y.a - x.b * y.b * d
        num_b = x.b * y.a - x.a * y.b
        return _make(num_a / n, num_b / n, d)
    raise ValueError(f"unknown op {op!r}")


def quad_sign(x) -> int:
    x = QuadExt.coerce(x)
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = x.a * x.a, x.b * x.b * x.d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def quad_floor(x) -> int:
    """Exact floor, via integer square roots."""
    x = QuadExt.coerce(x)
    if x.is_rational:
        return math.floor(x.a)
    # x = (P +- sqrt(N)) / L with integers P, N, L > 0
    L = math.lcm(x.a.denominator, x.b.denominator)
    P = x.a.numerator * (L // x.a.denominator)
    B = abs(x.b) * L
    N = B.numerator ** 2 * x.d
    r = math.isqrt(N)
    if x.b > 0:
        return (P + r) // L
    return (P - r - 1) // L


@dataclass(frozen=True)
class PSqrtQForm:
    """``p + sign*sqrt(q)`` with ``q > 0`` and ``sqrt(q)`` irrational."""

    p: Fraction
    q: Fraction
    sign: int

    def reconstruct(self) -> QuadExt:
        return quad_normalize(self.p, Fraction(self.sign), self.q)


def as_p_sqrt_q(x: QuadExt) -> Optional[PSqrtQForm]:
    """Rewrite an irrational ``x`` as ``p +- sqrt(q)``; None when x is rational."""
    x = QuadExt.coerce(x)
    if x.is_rational:
        return None
    return PSqrtQForm(x.a, x.b * x.b * x.d, 1 if x.b > 0 else -1)


def lattice_member(gamma, beta) -> Optional[tuple[int, int]]:
    """Integers ``(k, l)`` with ``gamma == k + l*beta``, or None."""
    gamma, beta = QuadExt.coerce(gamma), QuadExt.coerce(beta)
    if beta.is_rational:
        raise ValueError("beta must be irrational")
    if gamma.is_rational:
        if gamma.a.denominator == 1:
            return int(gamma.a), 0
        return None
    if gamma.d != beta.d:
        return None
    l = gamma.b / beta.b
    if l.denominator != 1:
        return None
    k = gamma.a - l * beta.a
    if k.denominator != 1:
        return None
    return int(k), int(l)


@dataclass(frozen=True)
class ContinuedFraction:
    """Eventually periodic expansion ``[pre; period, period, ...]``."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def terms(self) -> Iterator[int]:
        yield from self.preperiod
        if not self.period:
            return
        while True:
            yield from self.period

    def head(self, n: int) -> list[int]:
        out = []
        for t in self.terms():
            if len(out) >= n:
                break
            out.append(t)
        return out

    def convergents(self) -> Iterator[tuple[int, int]]:
        """Successive ``(p_n, q_n)``; infinite for periodic expansions."""
        p0, q0, p1, q1 = 1, 0, 0, 1
        for a in self.terms():
            p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
            yield p0, q0


def cf_expand(x, max_terms: int = 10_000) -> ContinuedFraction:
    """Continued fraction of a positive quadratic irrational with its period."""
    x = QuadExt.coerce(x)
    if x.is_rational:
        raise ValueError("cf_expand needs an irrational input")
    if x <= 0:
        raise ValueError("cf_expand needs a positive input")
    seen: dict[QuadExt, int] = {}
    terms: list[int] = []
    while len(terms) < max_terms:
        if x in seen:
            start = seen[x]
            return ContinuedFraction(tuple(terms[:start]), tuple(terms[start:]))
        seen[x] = len(terms)
        a = quad_floor(x)
        terms.append(a)
        x = ONE / (x - a)
    raise MaxTermsExceeded(f"no period within {max_terms} terms")


def single_field(values) -> int:
    """The common ``d`` of an iterable of QuadExt (1 if all rational)."""
    d = 1
    for v in values:
        v = QuadExt.coerce(v)
        if v.d == 1:
            continue
        if d == 1:
            d = v.d
        elif v.d != d:
            raise MixedFieldError(f"Q(√{d}) and Q(√{v.d}) mixed")
    return d
