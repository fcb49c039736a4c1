"""Quadratic-extension algebra over Q(y)."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conewalks.polynomials import Poly1
from conewalks.quadext import DeltaMismatchError, PoleError, QuadExt, RatFun1, compose_ratfun

DELTA = Poly1([0, 1, 2, 1])  # y(1+y)^2, an arbitrary non-square radicand


def elem(a_num, b_num):
    return QuadExt(RatFun1(Poly1(a_num)), RatFun1(Poly1(b_num)), DELTA)


class TestBasics:
    def test_sqrt_times_sqrt_is_delta(self):
        s = QuadExt.sqrt_delta(DELTA)
        prod = s * s
        assert prod.is_rational
        assert prod.a == RatFun1(DELTA)

    def test_conjugate_norm_form(self):
        u = elem([1, 2], [0, 3])
        prod = u * u.conj()
        assert prod.is_rational
        assert prod.a == u.norm()

    def test_division_by_one(self):
        one = QuadExt.rational(1, DELTA)
        u = elem([5], [1, 1])
        assert u / one == u
        assert 1 / one == one

    def test_delta_mismatch_is_an_error(self):
        u = elem([1], [1])
        v = QuadExt(RatFun1(1), RatFun1(1), Poly1([0, 1]))
        with pytest.raises(DeltaMismatchError):
            _ = u + v

    def test_division_by_zero_element(self):
        u = elem([1], [0])
        zero = QuadExt.rational(0, DELTA)
        with pytest.raises(ZeroDivisionError):
            _ = u / zero


coeff_lists = st.lists(st.fractions(max_denominator=8), min_size=0, max_size=3)


@given(coeff_lists, coeff_lists, coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_conjugation_is_an_automorphism(a1, b1, a2, b2):
    u = elem(a1, b1)
    v = elem(a2, b2)
    assert (u * v).conj() == u.conj() * v.conj()
    assert (u + v).conj() == u.conj() + v.conj()


def test_normalization_idempotent():
    r = RatFun1(Poly1([0, 2, 2]), Poly1([0, 0, 4]))  # (2t+2t^2)/(4t^2)
    again = RatFun1(r.num, r.den)
    assert r == again
    assert r.num == Poly1([Fraction(1, 2), Fraction(1, 2)])
    assert r.den == Poly1([0, 1])


class TestComposition:
    def test_identity_composition(self):
        u = elem([1, 1], [2])
        assert compose_ratfun(RatFun1.x(), u) == u

    def test_constant_composition(self):
        u = elem([1, 1], [2])
        c = compose_ratfun(RatFun1.const(Fraction(7, 3)), u)
        assert c.is_rational
        assert c.a == RatFun1.const(Fraction(7, 3))

    def test_pole_detection(self):
        # f = 1/(t - u) composed with u itself: denominator identically zero
        u = QuadExt.rational(RatFun1(Poly1([0, 1])), DELTA)  # the variable y
        f = RatFun1(Poly1([1]), Poly1([0, 1]))  # 1/t
        zero = QuadExt.rational(0, DELTA)
        with pytest.raises(PoleError):
            compose_ratfun(f, zero)
        assert compose_ratfun(f, u).a == RatFun1(Poly1([1]), Poly1([0, 1]))

    def test_rational_function_arithmetic(self):
        x = RatFun1.x()
        omega = x / (1 - x) ** 2
        assert omega(Fraction(1, 2)) == 2
        d = omega.derivative()
        assert d(Fraction(1, 2)) == Fraction((1 + Fraction(1, 2)) * 8)
