"""Field arithmetic in Q(q): normal forms, quantum integers, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qvir.ratfunc import (
    LaurentPoly,
    ONE,
    ONE_POLY,
    Q,
    RatQ,
    ZERO,
    eval_at,
    format_ratq,
    normalize,
    parse_ratq,
    q_power_minus_inverse,
    qint,
)


def lp(coeffs):
    return LaurentPoly(coeffs)


def rq(coeffs, den=None):
    return normalize(lp(coeffs), lp(den) if den else ONE_POLY)


class TestNormalize:
    def test_cancel_common_factor(self):
        # (q^2 - q^-2) / (q - q^-1) reduces to q + q^-1 over a unit denominator
        got = normalize(lp({2: 1, -2: -1}), lp({1: 1, -1: -1}))
        assert got == rq({1: 1, -1: 1})
        assert got.den.is_one()

    def test_zero_numerator(self):
        assert normalize(lp({}), lp({5: 1})) == ZERO

    def test_content_reduction(self):
        # (2q, 4) -> numerator q over denominator 2
        got = normalize(lp({1: 2}), lp({0: 4}))
        assert got.num.coeffs == {1: 1}
        assert got.den.coeffs == {0: 2}

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            normalize(lp({0: 1}), lp({}))

    def test_common_scalar_invariance(self):
        a, b = lp({3: 2, 0: -1}), lp({1: 5, -2: 7})
        c = lp({4: 3, -1: -2})
        assert normalize(a * c, b * c) == normalize(a, b)

    def test_idempotent(self):
        x = normalize(lp({2: 6, -1: -3}), lp({3: 4, 0: 10}))
        assert normalize(x.num, x.den) == x

    def test_negative_value_sign_in_numerator(self):
        got = normalize(lp({0: -3}), lp({0: 6}))
        assert got.num.coeffs == {0: -1}
        assert got.den.coeffs == {0: 2}


class TestArithmetic:
    def test_add(self):
        assert Q + Q.inverse() == rq({1: 1, -1: 1})

    def test_mul_expands(self):
        # (q - q^-1) * [2] = q^2 - q^-2
        assert rq({1: 1, -1: -1}) * qint(2, 1) == rq({2: 1, -2: -1})

    def test_inverse_roundtrip(self):
        a = rq({1: 1, -1: -1})
        assert a * a.inverse() == ONE

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    def test_pow(self):
        assert Q ** -3 == RatQ.q_power(-3)
        assert (Q + ONE) ** 2 == rq({2: 1, 1: 2, 0: 1})


class TestQInt:
    def test_two(self):
        assert qint(2, 1) == Q + Q.inverse()

    def test_three_reduced(self):
        assert qint(3, 1) == rq({2: 1, 0: 1, -2: 1})

    def test_gamma_zero_convention(self):
        for m in range(-4, 5):
            assert qint(m, 0) == RatQ.from_int(m)

    def test_odd_symmetry(self):
        assert qint(-3, 2) == -qint(3, 2)

    def test_matches_defining_ratio(self):
        # independent oracle: the defining ratio pushed through normalize
        for n in range(-5, 6):
            for gamma in (-3, -1, 1, 2, 4):
                num = lp({-gamma * n: 1}) - lp({gamma * n: 1})
                den = lp({-gamma: 1}) - lp({gamma: 1})
                assert qint(n, gamma) == normalize(num, den)

    def test_base_inversion_symmetry(self):
        for n in range(-4, 5):
            for gamma in range(1, 5):
                assert qint(n, -gamma) == qint(n, gamma)

    def test_telescoping(self):
        # (q - q^-1) * [N] = q^N - q^-N
        qmqi = rq({1: 1, -1: -1})
        for n in range(-6, 7):
            assert qmqi * qint(n, 1) == q_power_minus_inverse(n)


class TestEval:
    def test_simple(self):
        assert eval_at(Q + Q.inverse(), 2) == Fraction(5, 2)

    def test_qint_at_one(self):
        # the reduced form of [3] survives q = 1
        assert eval_at(qint(3, 1), 1) == 3

    def test_zero(self):
        assert eval_at(ZERO, 7) == 0

    def test_pole_reported(self):
        a = normalize(lp({0: 1}), lp({1: 1, 0: -2}))
        with pytest.raises(ZeroDivisionError, match="vanishes"):
            eval_at(a, 2)

    def test_rejects_q_zero(self):
        with pytest.raises(ZeroDivisionError):
            eval_at(Q, 0)


coef = st.integers(min_value=-9, max_value=9)
exponent = st.integers(min_value=-5, max_value=5)
polys = st.dictionaries(exponent, coef, max_size=4).map(LaurentPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
q_points = st.sampled_from([Fraction(2), Fraction(3, 2), Fraction(-5, 3), Fraction(7)])


@given(polys, nonzero_polys, polys, nonzero_polys, q_points)
@settings(max_examples=150, deadline=None)
def test_eval_is_field_homomorphism(n1, d1, n2, d2, q0):
    a = normalize(n1, d1)
    b = normalize(n2, d2)
    assert eval_at(a * b, q0) == eval_at(a, q0) * eval_at(b, q0)
    assert eval_at(a + b, q0) == eval_at(a, q0) + eval_at(b, q0)
    if not a.is_zero() and eval_at(a, q0) != 0:
        assert eval_at(a.inverse(), q0) == 1 / eval_at(a, q0)


@given(polys, nonzero_polys)
@settings(max_examples=150, deadline=None)
def test_normalize_idempotent(num, den):
    x = normalize(num, den)
    assert normalize(x.num, x.den) == x


@given(polys, nonzero_polys)
@settings(max_examples=150, deadline=None)
def test_text_roundtrip(num, den):
    x = normalize(num, den)
    assert parse_ratq(format_ratq(x)) == x


def test_text_form_examples():
    assert format_ratq(ZERO) == "0"
    assert format_ratq(Q + Q.inverse()) == "1*q^-1 + 1*q^1"
    half_q = normalize(lp({1: 2}), lp({0: 4}))
    assert format_ratq(half_q) == "(1*q^1)/(2)"
    assert parse_ratq("(1*q^1)/(2)") == half_q
