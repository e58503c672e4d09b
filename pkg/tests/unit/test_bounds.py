"""
Unit tests for the closed-form tail bounds.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from na_bounds.core import bounds as B
from na_bounds.core.errors import ConvergenceError, DegenerateInputError, DomainError
from na_bounds.core.transforms import default_truncation_level, young_transform
from na_bounds.types import BernsteinForm, BoundFamily, FukNagaevVariant, RioForm, SemiExpForm

mp.mp.dps = 50

ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9)


def rel_close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b)) or a == b


def mp_ell(t):
    t = mp.mpf(t)
    return (t - mp.log(t) - 1) + t / (mp.exp(t) - 1) + mp.log(1 - mp.exp(-t))


class TestGaussianFamily:
    """H_n, Bennett and Bernstein functions."""

    def test_h_n_at_x_equal_n(self):
        """At x = n only the first factor survives: (1/3)^{alpha n}."""
        assert B.fuk_nagaev_h(2.0, 1.0, 2, 0.5) == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_h_n_beyond_n_is_zero(self):
        assert B.fuk_nagaev_h(3.0, 1.0, 2, 0.5) == 0.0

    def test_h_n_interior_value(self):
        assert B.fuk_nagaev_h(1.0, 1.0, 2, 0.5) == pytest.approx(0.5 ** (1.0 / 3.0), rel=1e-13)

    def test_all_three_equal_one_at_zero(self):
        assert B.fuk_nagaev_h(0.0, 1.3, 10, 0.4) == 1.0
        assert B.bennett_b(0.0, 1.3, 0.4) == 1.0
        assert B.bernstein_b1(0.0, 1.3, 0.4) == 1.0

    def test_bennett_values(self):
        assert B.bennett_b(1.0, 1.0, 0.5) == pytest.approx(0.5 * math.exp(0.5), rel=1e-13)
        expected = (0.25 / 1.75) ** (0.9 * 1.75) * math.exp(0.9 * 1.5)
        assert B.bennett_b(1.5, 0.5, 0.9) == pytest.approx(expected, rel=1e-13)

    def test_bernstein_b1_values(self):
        assert B.bernstein_b1(1.0, 1.0, 0.5) == pytest.approx(math.exp(-0.1875), rel=1e-14)
        assert B.bernstein_b1(1.5, 0.5, 0.9) == pytest.approx(math.exp(-1.35), rel=1e-14)

    @pytest.mark.parametrize("x,v,n,alpha", [(0.3, 0.7, 5, 0.2), (4.0, 2.0, 12, 0.5), (9.5, 0.1, 10, 0.8)])
    def test_h_n_against_high_precision(self, x, v, n, alpha):
        """The log1p form matches a 50-digit evaluation of the defining product."""
        X, V2 = mp.mpf(x), mp.mpf(v) ** 2
        inner = (V2 / (X + V2)) ** (X + V2) * (n / (n - X)) ** (n - X)
        expected = inner ** (alpha * n / (n + V2))
        assert rel_close(B.fuk_nagaev_h(x, v, n, alpha), float(expected), 1e-12)

    @pytest.mark.parametrize("x,v,alpha", [(0.3, 0.7, 0.2), (4.0, 2.0, 0.5), (25.0, 0.5, 0.8)])
    def test_bennett_against_high_precision(self, x, v, alpha):
        X, V2 = mp.mpf(x), mp.mpf(v) ** 2
        expected = (V2 / (X + V2)) ** (alpha * (X + V2)) * mp.exp(alpha * X)
        assert rel_close(B.bennett_b(x, v, alpha), float(expected), 1e-12)

    def test_chain_on_grid(self):
        """H_n <= Bennett <= Bernstein over a grid of inputs."""
        for n in (2, 10, 100):
            for v in (0.1, 0.5, 1.0, 4.0):
                for alpha in ALPHAS:
                    for x in np.linspace(0.0, n, 20):
                        h = B.fuk_nagaev_h(float(x), v, n, alpha)
                        b = B.bennett_b(float(x), v, alpha)
                        b1 = B.bernstein_b1(float(x), v, alpha)
                        assert h <= b * (1.0 + 1e-12), (x, v, n, alpha)
                        assert b <= b1 * (1.0 + 1e-12), (x, v, n, alpha)

    @settings(max_examples=200, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=500),
        frac=st.floats(min_value=0.0, max_value=1.0),
        v=st.floats(min_value=1e-2, max_value=50.0),
        alpha=st.floats(min_value=0.01, max_value=0.99),
    )
    def test_chain_property(self, n, frac, v, alpha):
        x = frac * n
        h = B.fuk_nagaev_h(x, v, n, alpha)
        b = B.bennett_b(x, v, alpha)
        assert 0.0 <= h <= b * (1.0 + 1e-12)
        assert b <= B.bernstein_b1(x, v, alpha) * (1.0 + 1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            B.fuk_nagaev_h(-1.0, 1.0, 2, 0.5)
        with pytest.raises(DomainError):
            B.bennett_b(1.0, 0.0, 0.5)
        with pytest.raises(DomainError) as exc:
            B.bernstein_b1(1.0, 1.0, 1.0)
        assert "alpha" in str(exc.value)


class TestFukNagaev:
    """Fuk-Nagaev, weak-moment and p-th moment tail bounds."""

    def test_large_x_leaves_tail_term(self):
        result = B.fuk_nagaev_tail_bound(1e6, 1.0, 0.5, 10, 1.0, 0.0, FukNagaevVariant.HN)
        assert result.raw_value == 0.0
        assert result.family == BoundFamily.FUK_NAGAEV_TAIL

    def test_bernstein_variant_value(self):
        result = B.fuk_nagaev_tail_bound(5.0, 1.0, 0.5, 10, 4.0, 0.01, FukNagaevVariant.BERNSTEIN)
        expected = 2.0 * math.exp(-0.5 * 6.25 / (2.0 * (4.0 + 2.5 / 3.0))) + 0.01
        assert result.raw_value == pytest.approx(expected, rel=1e-13)
        assert result.chosen_params == {"alpha": 0.5, "y": 1.0}

    def test_variants_ordered(self):
        values = [
            B.fuk_nagaev_tail_bound(5.0, 1.0, 0.5, 100, 4.0, 0.01, variant).raw_value
            for variant in (FukNagaevVariant.HN, FukNagaevVariant.BENNETT, FukNagaevVariant.BERNSTEIN)
        ]
        assert values[0] <= values[1] * (1.0 + 1e-12)
        assert values[1] <= values[2] * (1.0 + 1e-12)

    def test_zero_truncated_variance(self):
        result = B.fuk_nagaev_tail_bound(5.0, 1.0, 0.5, 10, 0.0, 0.02)
        assert result.raw_value == 0.02
        assert "degenerate_variance" in result.flags

    def test_nonpositive_x_rejected(self):
        with pytest.raises(DomainError):
            B.fuk_nagaev_tail_bound(0.0, 1.0, 0.5, 10, 1.0, 0.0)

    def test_weak_moment_without_weak_term_matches_fuk_nagaev(self):
        weak = B.weak_moment_tail_bound(3.0, 1.5, 0.4, 20, 6.0, 0.0, 3.0)
        fuk = B.fuk_nagaev_tail_bound(3.0, 1.5, 0.4, 20, 6.0, 0.0, FukNagaevVariant.HN)
        assert weak.raw_value == fuk.raw_value

    def test_weak_moment_adds_weak_term(self):
        base = B.weak_moment_tail_bound(3.0, 1.5, 0.4, 20, 6.0, 0.0, 3.0).raw_value
        with_term = B.weak_moment_tail_bound(3.0, 1.5, 0.4, 20, 6.0, 2.0, 3.0).raw_value
        assert with_term == pytest.approx(base + 2.0 / 1.5**3, rel=1e-14)

    def test_weak_moment_order_in_n(self):
        """At n x with the default truncation the bound decays like (ln n)^p / n^{p-1}."""
        p, x = 3.0, 1.0
        scaled = []
        for n in (10**3, 10**4, 10**5, 10**6):
            y = default_truncation_level(x, n, p)
            bound = B.weak_moment_tail_bound(n * x, y, 0.5, n, float(n), float(n), p).raw_value
            scaled.append(bound * n ** (p - 1) / math.log(n) ** p)
        assert max(scaled) <= 10.0 * scaled[0]
        assert scaled[-1] == pytest.approx((2.0 * p / (3.0 * x)) ** p, rel=0.05)

    def test_fuk_tail_at_half_alpha(self):
        x, p, b_n, v_n = 7.0, 4.0, 3.0, 5.0
        expected = 2.0 ** (p + 1) * (1.0 + 2.0 / p) ** p * v_n / x**p + 2.0 * math.exp(
            -(x * x) / ((p + 2.0) ** 2 * math.exp(p) * b_n)
        )
        assert B.fuk_tail_bound(x, 0.5, p, b_n, v_n).raw_value == pytest.approx(expected, rel=1e-12)

    def test_fuk_tail_near_zero_overflows_to_one(self):
        result = B.fuk_tail_bound(1e-200, 0.5, 2.0, 1.0, 1.0)
        assert result.raw_value == math.inf
        assert result.clipped_value == 1.0

    def test_fuk_tail_order_in_n(self):
        p = 3.0
        scaled = [
            B.fuk_tail_bound(float(n), 0.5, p, float(n), float(n)).raw_value * n ** (p - 1)
            for n in (10**3, 10**4, 10**5, 10**6)
        ]
        assert max(scaled) <= 10.0 * scaled[0]

    def test_fuk_tail_rejects_small_p(self):
        with pytest.raises(DomainError):
            B.fuk_tail_bound(1.0, 0.5, 1.5, 1.0, 1.0)


class TestSemiExponential:
    def test_piecewise_branch_below_breakpoint(self):
        result = B.semi_exponential_tail_bound(3.0, 0.5, 0.5, 2.0, SemiExpForm.PIECEWISE)
        assert result.chosen_params["branch"] == "sub_gaussian"
        assert result.raw_value == pytest.approx(4.0 * math.exp(-9.0 / 16.0), rel=1e-14)

    def test_piecewise_at_half_alpha(self):
        p, k_n = 0.4, 3.0
        x_break = 2.0 * k_n ** (1.0 / (2.0 - p))
        for x in (0.5 * x_break, 3.0 * x_break):
            value = B.semi_exponential_tail_bound(x, 0.5, p, k_n).raw_value
            if x <= x_break:
                expected = 4.0 * math.exp(-x * x / (8.0 * k_n))
            else:
                expected = 4.0 * math.exp(-(x**p) / 2.0 ** (p + 1.0))
            assert value == pytest.approx(expected, rel=1e-13)

    def test_piecewise_continuous_at_breakpoint(self):
        for p in (0.1, 0.3, 0.5, 0.7, 0.9):
            for k_n in (1.0, 2.0, 5.0, 10.0, 100.0):
                for alpha in ALPHAS:
                    x_b = k_n ** (1.0 / (2.0 - p)) / alpha
                    below = B.semi_exponential_tail_bound(x_b * (1.0 - 1e-12), alpha, p, k_n).raw_value
                    above = B.semi_exponential_tail_bound(x_b * (1.0 + 1e-12), alpha, p, k_n).raw_value
                    assert rel_close(below, above, 1e-9), (p, k_n, alpha)

    def test_smoothed_at_half_alpha(self):
        x, p, k_n = 6.0, 0.5, 2.0
        expected = 4.0 * math.exp(-x * x / (8.0 * (k_n + (x / 2.0) ** (2.0 - p))))
        value = B.semi_exponential_tail_bound(x, 0.5, p, k_n, SemiExpForm.SMOOTHED).raw_value
        assert value == pytest.approx(expected, rel=1e-13)

    def test_small_k_n_rejected(self):
        with pytest.raises(DomainError) as exc:
            B.semi_exponential_tail_bound(1.0, 0.5, 0.5, 0.5)
        assert exc.value.error_code == "DOMAIN_VIOLATION"
        assert "K_n" in exc.value.message

    def test_nonincreasing_in_x(self):
        for form in SemiExpForm:
            values = [B.semi_exponential_tail_bound(float(x), 0.5, 0.5, 3.0, form).raw_value for x in range(1, 60)]
            assert all(b <= a * (1.0 + 1e-12) for a, b in zip(values, values[1:]))


class TestExponentialMoment:
    @pytest.fixture(scope="class")
    def constants(self):
        return B.exp_moment_constants(2.0, 1.0, 2.0)

    def test_young_conjugate_identities(self, constants):
        c = constants
        assert (c.q * c.tau) ** (1.0 / c.q) * (c.p * c.a) ** (1.0 / c.p) == pytest.approx(1.0, rel=1e-10)
        assert (c.q * c.tau1) ** (1.0 / c.q) * (c.p * c.a1) ** (1.0 / c.p) == pytest.approx(1.0, rel=1e-10)
        assert c.tau1 == pytest.approx(2.0 * c.tau, rel=1e-15)

    def test_t1_satisfies_its_inequality(self, constants):
        c = constants
        assert c.t1 >= c.a / 2.0
        lhs = 1.0 + c.K + c.c * c.t1**c.q * math.exp(c.tau * c.t1**c.q)
        assert lhs <= math.exp(c.tau1 * c.t1**c.q) * (1.0 + 1e-12)

    def test_derived_constants(self, constants):
        c = constants
        assert c.x1 == pytest.approx(c.q * c.tau1 * c.t1 ** (c.q - 1.0), rel=1e-15)
        assert c.K1 == pytest.approx(math.e + 2.0, rel=1e-15)
        assert c.A >= 2.0 * c.K1 / c.a**2
        assert c.A >= 4.0 * c.tau1 * c.t1**c.q / c.a**2
        assert c.B > 0.0

    def test_mgf_bound(self, constants):
        assert B.exp_moment_mgf_bound(0.0, 10, constants) == 1.0
        t = 2.0 * constants.t1
        expected = math.exp(10 * constants.tau1 * t**constants.q)
        assert B.exp_moment_mgf_bound(t, 10, constants) == pytest.approx(expected, rel=1e-13)

    def test_tail_branches_at_half_alpha(self, constants):
        c, n = constants, 10
        moderate = B.exp_moment_tail_bound(0.5 * n * c.x1, n, 0.5, c)
        assert moderate.chosen_params["branch"] == "moderate_deviation"
        x = 0.5 * n * c.x1
        assert moderate.raw_value == pytest.approx(2.0 * math.exp(-c.B * x * x / (2.0 * n)), rel=1e-13)

        x = 3.0 * n * c.x1
        large = B.exp_moment_tail_bound(x, n, 0.5, c)
        assert large.chosen_params["branch"] == "large_deviation"
        expected = 2.0 * math.exp(-c.a1 * x**c.p / (2.0 * n ** (c.p - 1.0)))
        assert large.raw_value == pytest.approx(expected, rel=1e-13)

    def test_boundary_records_gap(self, constants):
        n = 10
        result = B.exp_moment_tail_bound(n * constants.x1, n, 0.5, constants)
        assert result.chosen_params["branch"] == "boundary"
        assert result.chosen_params["continuity_gap"] >= 0.0

    def test_final_sum_is_free_of_alpha(self, constants):
        result = B.exp_moment_final_sum_bound(4.0, 10, constants)
        assert "alpha" not in result.chosen_params
        assert result.chosen_params["statistic"] == "FinalSum"

    def test_tau1_too_close_does_not_converge(self):
        with pytest.raises(ConvergenceError):
            B.exp_moment_constants(2.0, 1.0, 2.0, tau1_factor=1.0000001, cap_factor=10.0)

    def test_tau1_must_exceed_tau(self):
        with pytest.raises(DomainError):
            B.exp_moment_constants(2.0, 1.0, 2.0, tau1_factor=1.0)


class TestBernsteinCondition:
    def test_sharp_never_exceeds_simple(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            x, m, b_n = rng.uniform(0.01, 50.0), rng.uniform(0.01, 5.0), rng.uniform(0.1, 100.0)
            alpha = rng.uniform(0.05, 0.95)
            sharp = B.bernstein_condition_tail_bound(x, alpha, m, b_n, BernsteinForm.SHARP).raw_value
            simple = B.bernstein_condition_tail_bound(x, alpha, m, b_n, BernsteinForm.SIMPLE).raw_value
            assert sharp <= simple * (1.0 + 1e-12)

    def test_half_alpha_identities(self):
        x, m, b_n = 3.0, 0.4, 5.0
        sharp = B.bernstein_condition_tail_bound(x, 0.5, m, b_n, BernsteinForm.SHARP).raw_value
        simple = B.bernstein_condition_tail_bound(x, 0.5, m, b_n, BernsteinForm.SIMPLE).raw_value
        denominator = 2.0 * (b_n * (1.0 + math.sqrt(2.0 * x * m / b_n)) + x * m)
        assert sharp == pytest.approx(2.0 * math.exp(-x * x / denominator), rel=1e-14)
        assert simple == pytest.approx(2.0 * math.exp(-x * x / (4.0 * (b_n + x * m))), rel=1e-14)

    def test_optimized_exponent_never_below_sharp(self):
        """Minimizing the pre-optimization bound over t never beats the sharp form."""
        rng = np.random.default_rng(5)
        for _ in range(100):
            x, m, b_n = rng.uniform(0.1, 10.0), rng.uniform(0.1, 2.0), rng.uniform(0.5, 20.0)
            alpha = rng.uniform(0.1, 0.9)
            sharp = B.bernstein_condition_tail_bound(x, alpha, m, b_n).raw_value
            res = optimize.minimize_scalar(
                lambda t: B.bernstein_condition_exponent(t, x, alpha, m, b_n),
                bounds=(1e-9 / m, (1.0 - 1e-9) / m),
                method="bounded",
                options={"xatol": 1e-12},
            )
            assert res.fun >= sharp * (1.0 - 1e-9)

    def test_exponent_domain(self):
        with pytest.raises(DomainError):
            B.bernstein_condition_exponent(2.0, 1.0, 0.5, 1.0, 1.0)

    def test_nonincreasing_in_x(self):
        for form in BernsteinForm:
            values = [B.bernstein_condition_tail_bound(x, 0.5, 0.3, 10.0, form).raw_value for x in np.linspace(0.1, 40, 80)]
            assert all(b <= a * (1.0 + 1e-12) for a, b in zip(values, values[1:]))


class TestEll:
    """The function ell, its derivative and its Young transform."""

    def test_value_at_one(self):
        assert B.rio_ell(1.0) == pytest.approx(float(mp_ell(1)), rel=1e-13)
        assert B.rio_ell(1.0) == pytest.approx(0.12330, abs=1e-5)

    @pytest.mark.parametrize("t", [1e-6, 1e-5, 1e-4, 5e-4, 0.05, 0.5, 3.0, 20.0])
    def test_against_high_precision(self, t):
        assert rel_close(B.rio_ell(t), float(mp_ell(t)), 1e-9)

    def test_series_matches_closed_form(self):
        for t in np.geomspace(1e-3, 1e-1, 40):
            t = float(t)
            naive = (t - math.log(t) - 1.0) + t / (math.exp(t) - 1.0) + math.log(1.0 - math.exp(-t))
            assert abs(B.rio_ell(t) - naive) <= 1e-10

    def test_nonnegative_and_vanishing_at_zero(self):
        assert 0.0 <= B.rio_ell(1e-12) <= 1e-24
        assert all(B.rio_ell(float(t)) >= 0.0 for t in np.geomspace(1e-6, 50.0, 200))

    def test_derivative_matches_high_precision(self):
        for t in (1e-4, 5e-3, 0.02, 1.0, 10.0):
            expected = mp.diff(mp_ell, mp.mpf(t))
            assert rel_close(B.rio_ell_prime(t), float(expected), 1e-9)

    def test_ell_star_zero(self):
        assert B.rio_ell_star(0.0) == 0.0

    def test_ell_star_at_half(self):
        assert B.rio_ell_star(0.5) > 0.5277
        assert B.rio_ell_star(0.5) >= B.rio_ell_star_floor(0.5) - 1e-9

    def test_ell_star_above_floor(self):
        for x in np.linspace(0.01, 0.99, 99):
            assert B.rio_ell_star(float(x)) >= B.rio_ell_star_floor(float(x)) - 1e-9

    def test_ell_star_matches_generic_young_transform(self):
        for x in np.linspace(0.0, 0.98, 50):
            generic = young_transform(B.RIO_ELL, float(x)).value
            assert B.rio_ell_star(float(x)) == pytest.approx(max(0.0, generic), abs=1e-9)

    def test_ell_star_domain(self):
        with pytest.raises(DomainError):
            B.rio_ell_star(1.0)


class TestBoundedRanges:
    """Bounds for summands with known almost-sure ranges."""

    @pytest.fixture
    def signs(self):
        return B.BoundedRangeSpec.uniform(50, -1.0, 1.0)

    def test_range_functionals(self, signs):
        assert signs.n == 50
        assert signs.d == 100.0
        assert signs.m2 == 200.0
        assert signs.delta == 2.0

    def test_shift_keeps_widths(self, signs):
        shifted = signs.shifted([0.25] * 50)
        assert shifted.m2 == signs.m2
        assert shifted.d == signs.d

    def test_values_at_zero(self, signs):
        assert B.rio_tail_bound(0.0, 0.5, signs, RioForm.YOUNG).raw_value == pytest.approx(2.0, rel=1e-15)
        assert B.rio_tail_bound(0.0, 0.5, signs, RioForm.CLOSED).raw_value == 1.0
        assert B.rio_tail_bound(0.0, 0.5, signs, RioForm.HOEFFDING_AZUMA).raw_value == 1.0

    def test_closed_form_vanishes_at_full_range(self, signs):
        assert B.rio_tail_bound(100.0, 0.5, signs, RioForm.CLOSED).raw_value == 0.0
        assert B.rio_tail_bound(100.0, 0.5, signs, RioForm.YOUNG).raw_value == 0.0

    def test_beyond_range_rejected(self, signs):
        with pytest.raises(DomainError):
            B.rio_tail_bound(101.0, 0.5, signs, RioForm.YOUNG)

    def test_mgf_bound(self):
        unit = B.BoundedRangeSpec.uniform(1, 0.0, 1.0)
        assert B.rio_mgf_bound(0.0, unit) == 1.0
        assert B.rio_mgf_bound(0.7, unit) == pytest.approx(math.exp(B.rio_ell(0.7)), rel=1e-14)
        wide = B.BoundedRangeSpec.uniform(5, -1.0, 1.0)
        assert B.rio_mgf_bound(1.0, wide) == pytest.approx(math.exp(5.0 * B.rio_ell(2.0)), rel=1e-13)

    def test_half_alpha_identities(self, signs):
        d, m2 = signs.d, signs.m2
        x = 15.0
        young = B.rio_tail_bound(x, 0.5, signs, RioForm.YOUNG).raw_value
        closed = B.rio_tail_bound(x, 0.5, signs, RioForm.CLOSED).raw_value
        assert young == pytest.approx(2.0 * math.exp(-d * d / (2.0 * m2) * B.rio_ell_star(x / d)), rel=1e-13)
        assert closed == pytest.approx(((d - x) / d) ** (x * (2.0 * d - x) / (2.0 * m2)), rel=1e-13)

    def test_acceptance_values(self, signs):
        assert B.rio_tail_bound(15.0, 0.5, signs, RioForm.CLOSED).raw_value == pytest.approx(0.324, abs=2e-3)
        assert B.rio_tail_bound(15.0, 0.5, signs, RioForm.HOEFFDING_AZUMA).raw_value == pytest.approx(
            math.exp(-2.25), rel=1e-14
        )

    def test_young_within_closed_form(self, signs):
        """The floor of ell* puts YoungForm below ClosedForm / (1 - alpha)."""
        for alpha in ALPHAS:
            for x in np.linspace(0.5, 99.0, 40):
                young = B.rio_tail_bound(float(x), alpha, signs, RioForm.YOUNG).raw_value
                closed = B.rio_tail_bound(float(x), alpha, signs, RioForm.CLOSED).raw_value
                assert young <= closed / (1.0 - alpha) * (1.0 + 1e-9)

    def test_delta_form_below_relaxed(self, signs):
        for alpha in ALPHAS:
            for x in np.linspace(0.5, 99.0, 40):
                delta = B.rio_tail_bound(float(x), alpha, signs, RioForm.DELTA).raw_value
                relaxed = B.rio_tail_bound(float(x), alpha, signs, RioForm.DELTA_RELAXED).raw_value
                assert delta <= relaxed * (1.0 + 1e-9)

    def test_nonincreasing_in_x(self, signs):
        for form in RioForm:
            values = [B.rio_tail_bound(float(x), 0.5, signs, form).raw_value for x in np.linspace(0.0, 100.0, 101)]
            assert all(b <= a * (1.0 + 1e-12) for a, b in zip(values, values[1:])), form

    def test_zero_width_is_degenerate(self):
        point = B.BoundedRangeSpec.uniform(3, 0.5, 0.5)
        with pytest.raises(DegenerateInputError):
            B.rio_tail_bound(0.1, 0.5, point)

    def test_inverted_range_rejected(self):
        with pytest.raises(DomainError):
            B.BoundedRangeSpec(lower=(1.0,), upper=(0.0,))


class TestBoundResult:
    def test_clipping(self):
        result = B.BoundResult.build(BoundFamily.RIO, 1.7, {"x": 1.0}, {"alpha": 0.5})
        assert result.raw_value == 1.7
        assert result.clipped_value == 1.0

    def test_scaled_records_flag(self):
        result = B.BoundResult.build(BoundFamily.RIO, 0.5, {"x": 1.0}).scaled(1e-6)
        assert result.raw_value == pytest.approx(5e-7)
        assert result.flags[-1].startswith("scaled:")
