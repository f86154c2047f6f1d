import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from landau_poisson.errors import DomainError
from landau_poisson.specfun import (
    PowerSeries,
    RealPolynomial,
    bessel_j0,
    bessel_j0_first_zero,
    charlier,
    laguerre,
    laguerre_coeffs,
    laguerre_zeros,
    least_zero_bounds,
    pochhammer_int,
    recip_gamma_int,
    series_from_log_derivative,
    series_log_derivative,
)


class TestLaguerre:
    def test_degree_zero(self):
        assert laguerre(0, 0, 7.3) == 1.0

    @pytest.mark.parametrize("x", [0.0, 0.3, 2.0, 11.5])
    def test_degree_one(self, x):
        assert laguerre(1, 0, x) == 1.0 - x

    def test_degree_one_at_cosine_argument(self):
        lam, u = 0.7, 1.1
        x = 2 * lam * (1 - math.cos(u))
        assert laguerre(1, 0, x) == pytest.approx(1 - 2 * lam * (1 - math.cos(u)), abs=1e-15)

    def test_degree_two_at_two(self):
        # 1 - 2x + x^2/2 at x = 2
        assert laguerre(2, 0, 2.0) == pytest.approx(-1.0, abs=1e-15)

    @pytest.mark.parametrize("n, alpha, x", [(5, 0.0, 3.3), (7, 2.0, 0.4), (12, 5.5, 9.0),
                                             (30, 0.0, 50.0), (4, 40.0, 20.0)])
    def test_against_scipy(self, n, alpha, x):
        ref = sp.eval_genlaguerre(n, alpha, x)
        assert laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-12, abs=1e-12)

    def test_array_degrees(self):
        n = np.array([0, 1, 2, 5])
        out = laguerre(n, 1.5, 0.8)
        ref = [sp.eval_genlaguerre(k, 1.5, 0.8) for k in n]
        np.testing.assert_allclose(out, ref, rtol=1e-13)

    def test_negative_degree_rejected(self):
        with pytest.raises(DomainError):
            laguerre(-1, 0, 1.0)

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20, 30])
    def test_recurrence_matches_coefficients(self, n):
        poly = laguerre_coeffs(n)
        x = np.linspace(0.0, 4.0 * max(n, 1), 201)
        rec = laguerre(n, 0, x)
        direct = poly(x)
        # the monomial sum cancels heavily, so compare in its own scale
        scale = np.maximum(1.0, sum(abs(c) * x ** k for k, c in enumerate(poly.coeffs)))
        assert np.max(np.abs(rec - direct) / scale) < 1e-12


class TestLaguerreCoeffs:
    def test_small_degrees(self):
        assert laguerre_coeffs(0).coeffs == (1.0,)
        assert laguerre_coeffs(1).coeffs == (1.0, -1.0)
        assert laguerre_coeffs(2).coeffs == (1.0, -2.0, 0.5)

    def test_general_entry(self):
        c = laguerre_coeffs(6).coeffs
        for j in range(7):
            assert c[j] == pytest.approx(math.comb(6, j) * (-1) ** j / math.factorial(j))


class TestLaguerreZeros:
    def test_m1(self):
        assert laguerre_zeros(1).zeros == pytest.approx((1.0,), abs=1e-15)

    def test_m2_quadratic_formula(self):
        z = laguerre_zeros(2).zeros
        assert z == pytest.approx((2 - math.sqrt(2), 2 + math.sqrt(2)), abs=1e-14)

    def test_m3_power_sums(self):
        z = laguerre_zeros(3).zeros
        assert sum(z) == pytest.approx(9.0, rel=1e-13)
        assert sum(x * x for x in z) == pytest.approx(45.0, rel=1e-13)

    @pytest.mark.parametrize("m", [1, 2, 5, 17, 50, 120, 200])
    def test_against_gauss_laguerre_nodes(self, m):
        ref = sp.roots_laguerre(m)[0]
        np.testing.assert_allclose(laguerre_zeros(m).zeros, ref, rtol=1e-11)

    @pytest.mark.parametrize("m", [1, 3, 10, 40, 200])
    def test_residual(self, m):
        for r in laguerre_zeros(m):
            # scipy evaluates without overflow only for moderate m
            if m <= 40:
                val = sp.eval_laguerre(m, r)
                dval = -sp.eval_genlaguerre(m - 1, 1, r)
                assert abs(val) <= 1e-10 * max(1.0, abs(dval) * r)

    def test_identities_up_to_50(self):
        for m in range(1, 51):
            z = laguerre_zeros(m).zeros
            assert all(b > a for a, b in zip(z, z[1:])) and z[0] > 0
            assert math.fsum(z) == pytest.approx(m * m, rel=1e-9)
            assert math.fsum(x * x for x in z) == pytest.approx(m * m * (2 * m - 1), rel=1e-9)

    def test_interlacing(self):
        for m in range(1, 31):
            a = laguerre_zeros(m).zeros
            b = laguerre_zeros(m + 1).zeros
            for k in range(m):
                assert b[k] < a[k] < b[k + 1]

    @pytest.mark.parametrize("m", [0, 201])
    def test_out_of_range(self, m):
        with pytest.raises(DomainError):
            laguerre_zeros(m)


class TestCharlier:
    def test_degree_zero(self):
        assert charlier(0, 4, 2.5) == 1.0

    @pytest.mark.parametrize("lam", [0.1, 1.0, 3.7])
    def test_low_degrees(self, lam):
        assert charlier(1, 1, lam) == pytest.approx(1 - lam)
        assert charlier(1, 2, lam) == pytest.approx(2 - lam)

    def test_rejects_l_below_q(self):
        with pytest.raises(DomainError):
            charlier(3, 2, 1.0)


class TestGammaFamily:
    @pytest.mark.parametrize("n, expected", [(0, 0.0), (-3, 0.0), (1, 1.0), (4, 1 / 6)])
    def test_recip_gamma_int(self, n, expected):
        assert recip_gamma_int(n) == pytest.approx(expected, abs=0)

    def test_recip_gamma_matches_scipy(self):
        for n in range(-5, 20):
            assert recip_gamma_int(n) == pytest.approx(sp.rgamma(n), rel=1e-14, abs=0)

    def test_pochhammer_negative_integer(self):
        assert pochhammer_int(-3, 0) == 1
        assert pochhammer_int(-3, 2) == 6
        assert pochhammer_int(-3, 3) == -6
        assert pochhammer_int(-3, 4) == 0
        assert pochhammer_int(-3, 7) == 0


class TestBessel:
    def test_first_zero_value(self):
        assert bessel_j0_first_zero() == pytest.approx(2.404825557695773, rel=1e-14)
        assert bessel_j0_first_zero() == pytest.approx(sp.jn_zeros(0, 1)[0], rel=1e-14)

    def test_is_a_zero(self):
        assert abs(bessel_j0(bessel_j0_first_zero())) < 1e-12
        assert abs(sp.j0(bessel_j0_first_zero())) < 1e-12

    @pytest.mark.parametrize("x", [0.0, 0.5, 2.0, 3.9])
    def test_series_matches_scipy(self, x):
        assert bessel_j0(x) == pytest.approx(sp.j0(x), abs=1e-14)

    def test_lower_bound_below_least_zero(self):
        j1 = bessel_j0_first_zero()
        for m in range(1, 21):
            assert (j1 / 2) ** 2 / (m + 0.5) < laguerre_zeros(m)[0]


class TestLeastZeroBounds:
    def test_m1(self):
        lower, upper = least_zero_bounds(1)
        assert upper == 1.0
        assert lower == pytest.approx(0.96386, abs=1e-5)
        assert laguerre_zeros(1)[0] == pytest.approx(upper, abs=1e-15)

    def test_brackets_up_to_50(self):
        for m in range(1, 51):
            lower, upper = least_zero_bounds(m)
            x1 = laguerre_zeros(m)[0]
            assert lower < x1 <= upper * (1 + 1e-15)
            assert upper / 4 == pytest.approx(0.75 / (2 * m + 1), rel=1e-15)


class TestPowerSeries:
    def test_log_derivative_of_one_plus_z(self):
        r = series_log_derivative(PowerSeries((1.0, 1.0), 1), 3)
        assert r.coeffs == (1.0, -1.0, 1.0, -1.0)

    def test_log_derivative_of_poisson(self):
        lam = 1.0
        p = [math.exp(-lam) * lam ** k / math.factorial(k) for k in range(40)]
        r = series_log_derivative(p, 10).coeffs
        assert r[0] == pytest.approx(1.0, rel=1e-14)
        assert max(abs(x) for x in r[1:]) < 1e-10

    def test_rejects_nonpositive_constant(self):
        with pytest.raises(DomainError):
            series_log_derivative([0.0, 1.0], 3)
        with pytest.raises(DomainError):
            series_log_derivative([-1.0, 1.0], 3)

    def test_order_and_padding(self):
        s = PowerSeries((1.0, 2.0), 4)
        assert s.coeffs == (1.0, 2.0, 0.0, 0.0, 0.0)
        assert len(s.coeffs) == s.order + 1

    def test_mul(self):
        a = PowerSeries.from_coeffs([1.0, 1.0])
        b = PowerSeries.from_coeffs([1.0, -1.0])
        assert (a * b).coeffs == (1.0, 0.0)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=1, max_size=6))
    def test_round_trip(self, tail):
        p = [1.0] + tail
        K = 12
        r = series_log_derivative(p, K)
        q = series_from_log_derivative(r, K).coeffs
        expected = p + [0.0] * (K + 1 - len(p))
        # terms beyond deg(p) are recovered as cancellation of growing numbers
        scale = max(1.0, max(abs(x) for x in r.coeffs))
        np.testing.assert_allclose(q, expected, atol=1e-10 * scale)


class TestRealPolynomial:
    def test_trailing_zeros_stripped(self):
        p = RealPolynomial((1.0, 2.0, 0.0, 0.0))
        assert p.degree == 1
        assert RealPolynomial((0.0, 0.0)).coeffs == (0.0,)

    def test_eval_and_derivative(self):
        p = RealPolynomial((1.0, -4.0, 2.0))
        assert p(3.0) == 7.0
        assert p.derivative().coeffs == (-4.0, 4.0)
