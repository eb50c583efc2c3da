import pytest
from hypothesis import given, strategies as st

from kcb.laurent import (
    LaurentPoly,
    NotDivisibleError,
    bar_symmetrize_nonpos,
    exact_div,
    qfact,
    qint,
)


def P(d):
    return LaurentPoly(d)


class TestQint:
    def test_one(self):
        assert qint(1) == P({0: 1})

    def test_three(self):
        assert qint(3) == P({2: 1, 0: 1, -2: 1})

    def test_zero(self):
        assert qint(0) == P({})
        assert qint(0).is_zero()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            qint(-1)


class TestQfact:
    def test_zero_is_one(self):
        assert qfact(0) == LaurentPoly.one()

    def test_two(self):
        assert qfact(2) == qint(2) == P({1: 1, -1: 1})

    def test_three_expansion(self):
        # direct expansion of (v + v^-1)(v^2 + 1 + v^-2)
        assert qfact(3) == P({3: 1, 1: 2, -1: 2, -3: 1})


class TestBar:
    def test_definition(self):
        assert P({2: 1, -1: 3}).bar() == P({-2: 1, 1: 3})

    def test_qint_fixed(self):
        assert qint(3).bar() == qint(3)

    def test_zero(self):
        assert LaurentPoly.zero().bar().is_zero()

    def test_balanced_fixed_up_to_12(self):
        for n in range(13):
            assert qint(n).bar() == qint(n)
            assert qfact(n).bar() == qfact(n)


class TestExactDiv:
    def test_basic(self):
        assert exact_div(P({0: 1, 2: 1}), P({1: 1, -1: 1})) == P({1: 1})

    def test_identity_divisor(self):
        p = P({3: 2, -1: 5})
        assert exact_div(p, LaurentPoly.one()) == p

    def test_not_divisible(self):
        with pytest.raises(NotDivisibleError):
            exact_div(P({1: 1, -1: 1, 0: 1}), P({1: 1, -1: 1}))

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            exact_div(P({0: 1}), LaurentPoly.zero())


class TestBarSymmetrizeNonpos:
    def test_definition(self):
        assert bar_symmetrize_nonpos(P({-1: 2, 0: 1, 3: 5})) == P({-1: 2, 1: 2, 0: 1})

    def test_positive_only(self):
        assert bar_symmetrize_nonpos(P({2: 1})).is_zero()

    def test_bar_fixed_reproduced(self):
        assert bar_symmetrize_nonpos(qint(2)) == qint(2)

    def test_result_is_bar_fixed_and_matches_low_degrees(self):
        c = P({-3: 4, -1: -2, 0: 7, 1: 9, 5: -1})
        b = bar_symmetrize_nonpos(c)
        assert b.bar() == b
        for e in range(-6, 1):
            assert b.coeff(e) == c.coeff(e)
        assert all(e > 0 for e, _ in (c - b).items())


small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(LaurentPoly)


@given(small_polys)
def test_bar_involution(p):
    assert p.bar().bar() == p


@given(small_polys, small_polys)
def test_exact_div_roundtrip(p, q):
    if q.is_zero():
        return
    assert exact_div(p * q, q) == p


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(small_polys)
def test_json_roundtrip(p):
    assert LaurentPoly.from_json(p.to_json()) == p
