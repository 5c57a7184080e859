import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from starmorita.errors import ModeMismatch, NeedsTruncation, NonUnit, NotFormallySmall, NotUnital
from starmorita.scalars import GR_I, GR_ONE, GaussianRational, LambdaSeries, series_residual

from conftest import random_gaussian, random_series


def lam(k=1, c=1, order=None):
    return LambdaSeries.lam(k, c, order)


class TestGaussianRational:
    def test_basic_arithmetic(self):
        a = GaussianRational(Fraction(1, 2), 1)
        b = GaussianRational(2, Fraction(-1, 3))
        assert a + b == GaussianRational(Fraction(5, 2), Fraction(2, 3))
        assert a * GR_I == GaussianRational(-1, Fraction(1, 2))
        assert (a / a) == GR_ONE

    def test_division_exact(self):
        a = GaussianRational(3, 4)
        assert a * (GR_ONE / a) == GR_ONE

    def test_conjugation_involution(self):
        rng = random.Random(7)
        for _ in range(25):
            a = random_gaussian(rng)
            assert a.conjugate().conjugate() == a

    def test_conjugation_multiplicative(self):
        rng = random.Random(8)
        for _ in range(25):
            a, b = random_gaussian(rng), random_gaussian(rng)
            assert (a * b).conjugate() == a.conjugate() * b.conjugate()

    def test_pow(self):
        assert GR_I**2 == GaussianRational(-1)
        assert GR_I**-1 == -GR_I


class TestLambdaSeriesArithmetic:
    def test_conjugate_fixes_lambda(self):
        # conjugate(i*lambda) = -i*lambda
        assert lam(c=GR_I).conjugate() == lam(c=-GR_I)

    def test_polynomial_identity(self):
        one = LambdaSeries.one()
        assert (one + lam()) * (one - lam()) == LambdaSeries([1, 0, -1])

    def test_trailing_zeros_trimmed(self):
        assert LambdaSeries([1, 0, 0]) == LambdaSeries([1])

    def test_mode_mismatch_rejected(self):
        with pytest.raises(ModeMismatch):
            LambdaSeries.one() + LambdaSeries.one(3)
        with pytest.raises(ModeMismatch):
            LambdaSeries.one(2) * LambdaSeries.one(3)

    def test_invert_geometric_series(self):
        # invert(1+L) at N=3 is the alternating geometric series
        s = (LambdaSeries.one(3) + lam(order=3)).invert()
        assert s == LambdaSeries([1, -1, 1, -1], 3)
        assert s * (LambdaSeries.one(3) + lam(order=3)) == LambdaSeries.one(3)

    def test_invert_requires_truncation(self):
        with pytest.raises(NeedsTruncation):
            (LambdaSeries.one() + lam()).invert()

    def test_invert_non_unit(self):
        with pytest.raises(NonUnit):
            lam(order=4).invert()

    def test_invert_random_roundtrip(self):
        rng = random.Random(11)
        for _ in range(20):
            s = LambdaSeries.one(5) + random_series(rng, 4, order=5).shift(1)
            assert s.invert() * s == LambdaSeries.one(5)

    @given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
    def test_ring_axioms(self, a, b, c):
        x = LambdaSeries([a, b])
        y = LambdaSeries([b, c])
        z = LambdaSeries([c, a, 1])
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x


class TestTranscendental:
    def test_exp_taylor(self):
        assert lam().exp(2) == LambdaSeries([1, 1, Fraction(1, 2)], 2)

    def test_exp_requires_small(self):
        with pytest.raises(NotFormallySmall):
            LambdaSeries.one().exp(3)

    def test_log_taylor(self):
        s = LambdaSeries.one() + lam()
        assert s.log(3) == LambdaSeries([0, 1, Fraction(-1, 2), Fraction(1, 3)], 3)

    def test_log_requires_unital(self):
        with pytest.raises(NotUnital):
            lam().log(3)

    def test_sqrt_inverse_squares_back(self):
        # square of (1+L)^(-1/2), then invert: recovers 1+L mod L^3
        s = LambdaSeries.one() + lam()
        r = s.sqrt_inverse(2)
        assert r == LambdaSeries([1, Fraction(-1, 2), Fraction(3, 8)], 2)
        assert (r * r).invert() == s.truncated(2)

    def test_exp_log_inverse(self):
        rng = random.Random(3)
        for _ in range(10):
            x = random_series(rng, 3, order=4).shift(1)
            s = LambdaSeries.one(4) + x
            assert s.log(4).exp(4) == s


def test_series_residual_mixed_modes():
    exact = LambdaSeries([1, 2, 3])
    trunc = LambdaSeries([1, 2], 1)
    assert series_residual(exact, trunc).is_zero()
    assert not series_residual(exact, LambdaSeries([1, 1], 1)).is_zero()
