"""Singular series, tail bounds, sieve weights and the Perron sum."""

import math

import pytest

from normform.fields import make_context
from normform.localdata import gamma_estimate
from normform.series import (
    fixed_divisor_check,
    sieve_sum,
    sieve_sum_classical,
    sieve_weights,
    singular_series,
    singular_series_tilde,
)

CTX3 = make_context([-2, 0, 0], 1)
CTX4 = make_context([-2, 0, 0, 0], 1)


class TestSingularSeries:
    def test_positive_no_fixed_divisor(self):
        assert fixed_divisor_check(CTX3) is None
        S = singular_series(CTX3, 2000)
        assert S.value > 0

    def test_tilde_cauchy_within_certified_tail(self):
        a = singular_series_tilde(CTX4, 1000)
        b = singular_series_tilde(CTX4, 10000)
        assert abs(a.value - b.value) <= a.tail_cert

    def test_plain_cauchy_within_combined_tail(self):
        a = singular_series(CTX4, 1000)
        b = singular_series(CTX4, 10000)
        assert abs(a.value - b.value) <= a.tail_bound

    def test_unit_shape_factors(self):
        # fields where nu_p = 1 for a prime give factor near 1: sanity on
        # the per-prime table
        from normform.series import per_prime_factor_table

        rows = per_prime_factor_table(CTX3, 200)
        for r in rows:
            if r["nu_p"] == 1 and r["p"] > 3:
                assert abs(r["factor"] - 1.0) < 0.25

    def test_identity_s_equals_tilde_over_gamma(self):
        # S = S~ / gamma_K at q* = 1; with good-support counting the
        # estimator carries the bad-prime exclusion factor, which for
        # X^3 - 2 is exactly 1/3 of gamma_K and the tilde bad factors are 1
        S = singular_series(CTX3, 10000)
        St = singular_series_tilde(CTX3, 10000)
        gam_hat = gamma_estimate(10**6, CTX3)
        # gamma_hat = gamma_K * (1 - 1/2)(1 - 1/3) = gamma_K / 3
        assert St.value / (3 * gam_hat) == pytest.approx(S.value, rel=0.01)

    def test_pcut_guard(self):
        with pytest.raises(ValueError):
            singular_series(CTX3, 50)


class TestSieveWeights:
    def test_unit_ideal_weight(self):
        R = 50
        ws = sieve_weights(R, CTX3)
        unit = next(w for sym, w in ws if sym.factors == ())
        assert unit == pytest.approx(math.log(R))

    def test_norm_at_least_R_absent(self):
        R = 50
        ws = sieve_weights(R, CTX3)
        assert all(sym.norm < R for sym, _ in ws)

    def test_degree_one_weight(self):
        R = 50
        ws = sieve_weights(R, CTX3)
        for sym, w in ws:
            if len(sym.factors) == 1 and sym.factors[0][0].degree == 1:
                p = sym.factors[0][0].p
                assert w == pytest.approx(-math.log(R / p))


class TestSieveSum:
    def test_small_R_only_unit(self):
        # R below the smallest good prime-ideal norm: only the unit ideal
        # contributes log R.  Smallest good prime norm for X^3-2 is 5.
        assert sieve_sum(5, CTX3) == pytest.approx(math.log(5))

    def test_trend_toward_target(self):
        St = singular_series_tilde(CTX3, 10000)
        gam = gamma_estimate(10**6, CTX3)
        target = St.value / gam
        gaps = [abs(sieve_sum(R, CTX3) - target) for R in (100, 1000, 10000)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] / target < 0.10

    def test_classical_comparison_oracle(self):
        # with rho == 1 the sum must match an independently organized
        # summation over (norm, mu) pairs
        R = 400
        from normform.localdata import squarefree_ideal_symbols

        by_norm: dict[int, int] = {}
        for _f, nrm, mu, _r in squarefree_ideal_symbols(CTX3, R):
            by_norm[nrm] = by_norm.get(nrm, 0) + mu
        oracle = sum(cnt / nrm * math.log(R / nrm)
                     for nrm, cnt in sorted(by_norm.items()))
        assert sieve_sum_classical(R, CTX3) == pytest.approx(oracle, rel=1e-12)
