"""Closed-form constants, checked against independent high-precision
re-derivations (50-digit mpmath arithmetic, plus a continuous-k risk
minimization that reproduces the optimal-k ratio without its closed form).
"""
import numpy as np
import pytest
from mpmath import mp, mpf
from scipy.optimize import minimize_scalar

from interpnn import (
    DomainError,
    QuadratureFailure,
    bias_coef,
    cis_ratio_optimal_k,
    cis_ratio_same_k,
    delta_criterion,
    gamma_threshold,
    ownn_ratio,
    pr_optimal_k,
    pr_same_k,
    ratio_curve,
    var_coef,
)

mp.dps = 50


def mp_var(d, g):
    d, g = mpf(d), mpf(g)
    return (d - g) ** 2 / (d * (d - 2 * g))


def mp_bias(d, g):
    d, g = mpf(d), mpf(g)
    return (d - g) ** 2 * (d + 2) ** 2 / ((d + 2 - g) ** 2 * d ** 2)


def mp_pr_same(d, g):
    return (mp_var(d, g) + mpf(d) / 4 * mp_bias(d, g)) / (1 + mpf(d) / 4)


def mp_pr_opt(d, g):
    return mp_var(d, g) ** (mpf(4) / (d + 4)) * mp_bias(d, g) ** (mpf(d) / (d + 4))


def mp_ownn(d, g):
    const = mpf(2) ** (mpf(4) / (d + 4)) * (mpf(d + 2) / (d + 4)) ** (mpf(2 * d + 4) / (d + 4))
    return const / mp_pr_opt(d, g)


class TestCoefficients:
    @pytest.mark.parametrize("d", range(1, 21))
    def test_unity_at_gamma_zero(self, d):
        assert var_coef(d, 0.0) == 1.0
        assert bias_coef(d, 0.0) == 1.0
        assert abs(pr_same_k(d, 0.0) - 1.0) <= 1e-12
        assert abs(pr_optimal_k(d, 0.0) - 1.0) <= 1e-12

    def test_var_coef_substitution(self):
        assert var_coef(2, 0.5) == pytest.approx(1.125, abs=1e-15)

    def test_bias_coef_substitution(self):
        assert bias_coef(2, 0.5) == pytest.approx(36.0 / 49.0, abs=1e-15)

    def test_cis_same_substitution(self):
        assert cis_ratio_same_k(4, 1.0) == pytest.approx(np.sqrt(9.0 / 8.0), abs=1e-15)

    @pytest.mark.parametrize(
        "fn", [var_coef, pr_same_k, pr_optimal_k, ownn_ratio, cis_ratio_same_k, cis_ratio_optimal_k]
    )
    def test_pole_raises_domain_error(self, fn):
        with pytest.raises(DomainError):
            fn(2, 1.0)  # gamma = d/2
        with pytest.raises(DomainError):
            fn(2, -0.1)

    def test_bias_coef_pole(self):
        with pytest.raises(DomainError):
            bias_coef(2, 4.0)  # gamma = d + 2
        assert np.isfinite(bias_coef(2, 3.9))


class TestGoldenValues:
    """Frozen from the 50-digit evaluation; re-derived live as well."""

    CASES = [
        (pr_same_k, (2, 0.5), 0.9948979591836735, mp_pr_same),
        (pr_optimal_k, (2, 0.5), 0.9760464552457487, mp_pr_opt),
        (ownn_ratio, (2, 0.0), 0.9244816991341796, mp_ownn),
        (cis_ratio_same_k, (4, 1.0), 1.0606601717798212, lambda d, g: mp_var(d, g) ** mpf("0.5")),
    ]

    @pytest.mark.parametrize("fn,args,frozen,oracle", CASES)
    def test_against_high_precision(self, fn, args, frozen, oracle):
        got = fn(*args)
        assert got == pytest.approx(frozen, abs=1e-12)
        assert abs(got - float(oracle(*args))) < 1e-13

    def test_pr_optimal_k_against_minimization_oracle(self):
        # Independently: minimize v/k + (d/4) b k^{4/d} over continuous k for
        # gamma and for 0, and take the ratio of the minima.
        d, g = 2, 0.5

        def risk(gamma):
            v, b = var_coef(d, gamma), bias_coef(d, gamma)
            res = minimize_scalar(
                lambda lk: v / np.exp(lk) + (d / 4.0) * b * np.exp(lk) ** (4.0 / d),
                bounds=(-10.0, 10.0),
                method="bounded",
                options={"xatol": 1e-12},
            )
            return res.fun

        assert pr_optimal_k(d, g) == pytest.approx(risk(g) / risk(0.0), abs=1e-9)

    def test_pr_same_k_interior_minimizer_beats_one(self):
        res = minimize_scalar(lambda g: pr_same_k(5, g), bounds=(1e-6, 2.4), method="bounded")
        assert 0.0 < res.x < 5 / 2
        assert res.fun < 1.0
        assert pr_same_k(5, res.x) < pr_same_k(5, 1e-6)


class TestShapeProperties:
    @pytest.mark.parametrize("d", range(1, 21))
    def test_u_shape(self, d):
        g = np.arange(0.0, d / 2.0 - 1e-3 + 1e-12, 1e-3)
        for fn in (pr_same_k, pr_optimal_k):
            vals = fn(d, g)
            diffs = np.diff(vals)
            assert np.all(diffs != 0.0)
            signs = np.sign(diffs)
            changes = np.nonzero(np.diff(signs) != 0)[0]
            assert len(changes) == 1
            assert signs[0] < 0 and signs[-1] > 0

    def test_optimal_k_never_worse_than_shared(self):
        for d in range(1, 21):
            g = np.linspace(0.0, d / 3.0 - 1e-9, 400)
            assert np.all(pr_optimal_k(d, g) <= pr_same_k(d, g) + 1e-12)

    def test_cis_same_k_at_least_one(self):
        for d in range(1, 21):
            g = np.linspace(0.0, d / 3.0, 200)
            assert np.all(cis_ratio_same_k(d, g) >= 1.0 - 1e-15)

    def test_ownn_below_one_on_grid(self):
        for d in range(1, 21):
            g = np.linspace(0.0, d / 3.0 - 1e-9, 100)
            assert np.all(ownn_ratio(d, g) < 1.0)

    def test_ownn_approaches_one_in_dimension(self):
        # largest OWNN advantage sits at d = 4; from there the ratio rises
        # monotonely toward 1
        vals = np.array([ownn_ratio(d, 0.0) for d in range(1, 201)])
        assert int(np.argmin(vals)) + 1 == 4
        assert np.all(np.diff(vals[3:]) > 0.0)
        assert np.all(vals < 1.0)
        assert vals[-1] > 0.99

    def test_high_dimensions_benefit_less(self):
        for d in (300, 500):
            g = np.linspace(0.0, d / 3.0 - 1e-6, 2000)
            assert pr_same_k(d, g).min() > 1.0 - 1e-2
            assert pr_optimal_k(d, g).min() > 1.0 - 1e-2

    def test_cis_optimal_is_sqrt_of_pr(self):
        g = np.linspace(0.0, 1.5, 50)
        assert np.allclose(cis_ratio_optimal_k(5, g), np.sqrt(pr_optimal_k(5, g)), atol=1e-15)


class TestThresholds:
    def test_d4_exactly_d_over_3(self):
        assert gamma_threshold(4, "optimal_k") == pytest.approx(4.0 / 3.0, abs=1e-9)

    @pytest.mark.parametrize("d", [4, 7, 12, 20])
    def test_high_d_cap(self, d):
        assert gamma_threshold(d, "optimal_k") == pytest.approx(d / 3.0, abs=1e-9)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_low_d_below_cap(self, d):
        t = gamma_threshold(d, "optimal_k")
        assert t < d / 3.0
        # the root actually sits where the curve crosses 1
        assert pr_optimal_k(d, t - 1e-6) < 1.0 < pr_optimal_k(d, t + 1e-6)

    @pytest.mark.parametrize("d", range(1, 16))
    def test_same_k_threshold_not_larger(self, d):
        assert gamma_threshold(d, "same_k") <= gamma_threshold(d, "optimal_k") + 1e-12

    def test_unknown_which(self):
        with pytest.raises(DomainError):
            gamma_threshold(3, "nope")


class TestDeltaCriterion:
    @pytest.mark.parametrize("d", range(1, 11))
    def test_power_family_matches_analytic(self, d):
        # phi'(x, 0) = -ln x; int_0^1 (-ln x) x^m dx = 1/(m+1)^2 gives
        # Delta = -2 / (d^2 (d+2)^2)
        got = delta_criterion(lambda x: -np.log(x), d)
        assert got == pytest.approx(-2.0 / (d * d * (d + 2.0) ** 2), abs=1e-8)

    def test_one_minus_log_family_same_delta(self):
        # phi(x, gamma) = 1 - gamma ln x has the same phi'(x, 0)
        assert delta_criterion(lambda x: -np.log(x), 3) == pytest.approx(
            -2.0 / (9.0 * 25.0), abs=1e-8
        )

    def test_gamma_independent_scheme_is_zero(self):
        assert delta_criterion(lambda x: 0.0 * x, 4) == 0.0

    def test_negative_for_power_means_benefit(self):
        for d in range(1, 11):
            assert delta_criterion(lambda x: -np.log(x), d) < 0.0


class TestRatioCurve:
    def test_flags_and_values(self):
        g = np.array([0.0, 0.3, 0.7, 0.9])
        c = ratio_curve(2, g, "pr")
        assert c.values[0] == pytest.approx(1.0, abs=1e-12)
        assert list(c.in_theory_range) == [True, True, False, False]
        assert np.all(np.isfinite(c.values))

    def test_unknown_curve(self):
        with pytest.raises(DomainError):
            ratio_curve(2, [0.1], "nope")
