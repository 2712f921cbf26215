from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import irrationals, quads, small_rats
from oracles import sqrt_cf_period, sqrt_sign_oracle
from reinhardt.exact_arith import (
    MixedFieldError,
    QuadExt,
    as_p_sqrt_q,
    cf_expand,
    format_rat,
    lattice_member,
    parse_rat,
    quad_arith,
    quad_floor,
    quad_normalize,
    quad_sign,
)

F = Fraction
R2 = QuadExt.sqrt(2)


@pytest.mark.parametrize("args, expected", [
    ((1, 2, 8), (1, 4, 2)),
    ((3, 5, 4), (13, 0, 1)),
    ((F(1, 2), F(1, 3), 12), (F(1, 2), F(2, 3), 3)),
    ((0, 1, F(1, 2)), (0, F(1, 2), 2)),
    ((0, 3, F(9, 4)), (F(9, 2), 0, 1)),
])
def test_normalize_examples(args, expected):
    x = quad_normalize(*args)
    assert (x.a, x.b, x.d) == expected


def test_canonical_form_is_enforced():
    with pytest.raises(ValueError):
        QuadExt(F(1), F(1), 8)
    with pytest.raises(ValueError):
        QuadExt(F(1), F(0), 2)


def test_arith_examples():
    one_r2 = 1 + R2
    assert quad_arith(one_r2, one_r2, "mul") == QuadExt.of(3, 2, 2)
    assert quad_arith(one_r2, R2 - 1, "mul") == 1
    assert quad_arith(QuadExt.of(3, 2, 2), one_r2, "div") == one_r2
    with pytest.raises(ZeroDivisionError):
        quad_arith(one_r2, QuadExt.of(0), "div")


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        R2 * QuadExt.sqrt(3)
    with pytest.raises(MixedFieldError):
        R2 + QuadExt.sqrt(3)
    # rationals mix freely with any field
    assert (R2 * 3).d == 2


@pytest.mark.parametrize("x, sign", [
    (1 + R2, 1),
    (QuadExt.of(F(-3, 2), 1, 2), -1),
    (quad_normalize(-2, 1, 4), 0),
    (QuadExt.of(F(-7, 5), 1, 2), 1),
    (QuadExt.of(F(3, 2), -1, 2), 1),
])
def test_sign_examples(x, sign):
    assert quad_sign(x) == sign


@given(quads())
def test_sign_matches_high_precision_oracle(x):
    assert quad_sign(x) == sqrt_sign_oracle(x.a, x.b, x.d)


@given(st.data())
def test_field_axioms(data):
    d = data.draw(st.sampled_from([2, 3, 5]))
    x, y, z = (data.draw(quads(d=d)) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x and x + y == y + x
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * (1 / x) == 1


@given(st.data())
def test_sign_is_multiplicative(data):
    d = data.draw(st.sampled_from([2, 3, 7]))
    x, y = data.draw(quads(d=d)), data.draw(quads(d=d))
    assert quad_sign(x) * quad_sign(y) == quad_sign(x * y)


@given(quads())
def test_floor_brackets(x):
    f = quad_floor(x)
    assert f <= x < f + 1


@given(irrationals())
def test_p_sqrt_q_roundtrip(x):
    form = as_p_sqrt_q(x)
    assert form.q > 0
    assert form.reconstruct() == x


def test_p_sqrt_q_examples():
    f = as_p_sqrt_q(1 + R2)
    assert (f.p, f.q, f.sign) == (1, 2, 1)
    f = as_p_sqrt_q(QuadExt.of(F(1, 2), F(-1, 2), 3))
    assert (f.p, f.q, f.sign) == (F(1, 2), F(3, 4), -1)
    assert as_p_sqrt_q(QuadExt.of(F(7, 3))) is None


def test_lattice_examples():
    assert lattice_member(2 + 3 * R2, R2) == (2, 3)
    assert lattice_member(QuadExt.sqrt(3), R2) is None
    assert lattice_member(R2, R2) == (0, 1)
    assert lattice_member(QuadExt.of(F(1, 2)), R2) is None
    assert lattice_member(QuadExt.of(5), R2) == (5, 0)


@given(st.integers(-50, 50), st.integers(-50, 50), irrationals(d=5))
def test_lattice_agrees_with_brute_force(k, l, beta):
    gamma = k + l * beta
    found = [(kk, ll) for kk in range(-50, 51) for ll in (l - 1, l, l + 1) if kk + ll * beta == gamma]
    assert lattice_member(gamma, beta) == (k, l)
    assert found == [(k, l)]


@given(irrationals(d=5), small_rats, small_rats)
def test_lattice_rejects_fractional_coordinates(beta, u, v):
    assume(u.denominator > 1 or v.denominator > 1)
    assert lattice_member(u + v * beta, beta) is None


@pytest.mark.parametrize("x, pre, period", [
    (R2, (1,), (2,)),
    (QuadExt.sqrt(3), (1,), (1, 2)),
    (QuadExt.of(F(1, 2), F(1, 2), 5), (), (1,)),
])
def test_cf_examples(x, pre, period):
    cf = cf_expand(x)
    assert (cf.preperiod, cf.period) == (pre, period)


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 8, 10, 13, 19, 22, 31, 46, 61, 94])
def test_cf_of_sqrt_matches_integer_recurrence(D):
    a0, period = sqrt_cf_period(D)
    cf = cf_expand(QuadExt.sqrt(D))
    assert cf.preperiod == (a0,) and cf.period == period


@given(irrationals())
def test_convergent_bound(x):
    assume(x > 0)
    cf = cf_expand(x)
    for _, (p, q) in zip(range(12), cf.convergents()):
        # |x - p/q| < 1/q^2  <=>  |q x - p| < 1/q
        assert abs(q * x - p) * q < 1


def test_rat_text_roundtrip():
    for r in (F(3), F(-7, 4), F(0)):
        assert parse_rat(format_rat(r)) == r
    assert format_rat(F(6, 3)) == "2"
    assert format_rat(F(-1, 2)) == "-1/2"
