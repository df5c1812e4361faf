"""High-precision cross-checks of every closed-form quantity.

Each function under test is mirrored here in mpmath at 50 digits; agreement
is required to 12 significant digits on grids of at least 100 points.
"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from rainbowbip.formulas import (
    DIAM_LARGE,
    DIAM_SMALL,
    DIAM_UNDECIDED,
    RegimeParams,
    chernoff_lower_tail,
    diameter_criterion,
    per_pair_failure_bound,
    rainbow_success_prob,
    regime_valid,
    sharp_threshold,
    threshold_even,
    threshold_even_alt,
    threshold_odd,
)

from helpers_precision import (
    close12,
    mp_criterion,
    mp_failure_log_bound,
    mp_threshold_even,
    mp_threshold_odd,
)

mpmath.mp.dps = 50


SIZES = [47, 1000, 31623, 10**6, 10**11]
OTHER = [50, 343, 10**4, 10**7, 10**10]


class TestThresholdFidelity:
    def test_odd_grid(self):
        pts = [(m, n, d) for m in OTHER for n in SIZES for d in (3, 5, 7, 9)]
        assert len(pts) == 100
        for m, n, d in pts:
            assert close12(threshold_odd(m, n, d), mp_threshold_odd(m, n, d))

    def test_even_grid(self):
        pts = [(m, n, d) for m in OTHER for n in SIZES for d in (2, 4, 6, 8)]
        assert len(pts) == 100
        for m, n, d in pts:
            assert close12(threshold_even(m, n, d), mp_threshold_even(m, n, d))

    def test_even_alt_identity(self):
        # base-2 variant is the even threshold with log2 in place of ln
        for m, n, d in [(100, 100, 2), (10**6, 10**4, 4), (50, 10**9, 6)]:
            scale = (1.0 / math.log(2)) ** (1.0 / d)
            assert close12(
                threshold_even_alt(m, n, d), mpmath.mpf(threshold_even(m, n, d)) * scale
            )

    def test_dispatch(self):
        assert sharp_threshold(100, 200, 3) == threshold_odd(100, 200, 3)
        assert sharp_threshold(100, 200, 4) == threshold_even(100, 200, 4)
        with pytest.raises(ValueError):
            sharp_threshold(100, 200, 1)

    def test_parity_enforced(self):
        with pytest.raises(ValueError):
            threshold_odd(10, 10, 2)
        with pytest.raises(ValueError):
            threshold_even(10, 10, 3)

    def test_known_value(self):
        # spot value for d=3, m=n=100
        assert abs(threshold_odd(100, 100, 3) - 0.09729530713186157) < 1e-15

    def test_square_case_parity_gap(self):
        # at m=n the odd threshold is 2^(1/d) times the even one with d matched
        # to its own parity; compare the closed forms directly at equal d inputs
        n = 10**5
        for d in (3, 5):
            lhs = threshold_odd(n, n, d)
            rhs = 2.0 ** (1.0 / d) * math.log(n) ** (1.0 / d) / n ** ((d - 1) / d)
            assert abs(lhs / rhs - 1) < 1e-12

    def test_even_square_case(self):
        n = 10**5
        for d in (2, 4):
            want = math.log(n) ** (1.0 / d) / n ** ((d - 1) / d)
            assert abs(threshold_even(n, n, d) / want - 1) < 1e-12

    def test_monotone_in_n(self):
        ns = [10**e for e in range(2, 12)]
        odd = [threshold_odd(1000, n, 3) for n in ns]
        even4 = [threshold_even(1000, n, 4) for n in ns]
        # d=2 is the degenerate even case: no n power in the denominator,
        # so the threshold sqrt(ln n / m) actually grows with n
        even2 = [threshold_even(1000, n, 2) for n in ns]
        assert odd == sorted(odd, reverse=True)
        assert even4 == sorted(even4, reverse=True)
        assert even2 == sorted(even2)


class TestDiameterCriterion:
    def grid(self):
        combos = [
            (m, n, d, mult)
            for m in (100, 1000, 10**5)
            for n in (100, 2000, 10**6)
            for d in (2, 3, 4, 5, 6, 7)
            for mult in (0.25, 3.0)
        ]
        return combos[:100]

    def test_value_grid(self):
        pts = self.grid()
        assert len(pts) == 100
        for m, n, d, mult in pts:
            p = mult * sharp_threshold(m, n, d)
            got = diameter_criterion(m, n, p, d).value
            assert close12(got, mp_criterion(m, n, p, d))

    def test_sign_odd(self):
        # at p = C * threshold the odd-parity value is (C^d - 1) * ln(mn)
        for m, n in [(400, 400), (800, 300)]:
            for d in (3, 5):
                p0 = sharp_threshold(m, n, d)
                for c in (0.125, 0.25, 0.5):
                    assert diameter_criterion(m, n, c * p0, d).classification == DIAM_LARGE
                for c in (2.0, 4.0, 8.0):
                    assert diameter_criterion(m, n, c * p0, d).classification == DIAM_SMALL

    def test_sign_even(self):
        # even-parity value is (C^d - 2) * ln(n): crossing sits at C = 2^(1/d),
        # so multipliers in (1, 2^(1/d)] stay on the negative side
        for m, n in [(400, 400), (800, 300)]:
            for d in (2, 4):
                p0 = sharp_threshold(m, n, d)
                for c in (0.125, 0.25, 0.5, 1.099):
                    assert diameter_criterion(m, n, c * p0, d).classification == DIAM_LARGE
                for c in (2.0, 4.0, 8.0):
                    assert diameter_criterion(m, n, c * p0, d).classification == DIAM_SMALL

    def test_identity_at_multiple(self):
        m, n, d = 500, 2000, 2
        p0 = sharp_threshold(m, n, d)
        for c in (0.5, 2.0, 3.0):
            got = diameter_criterion(m, n, c * p0, d).value
            want = (c**d - 2.0) * math.log(n)
            assert abs(got - want) < 1e-9 * max(1.0, abs(want))

    def test_dead_band(self):
        m = n = 100
        p0 = sharp_threshold(m, n, 2)
        assert diameter_criterion(m, n, p0 * 2 ** (1 / 2.0), 2).classification == DIAM_UNDECIDED

    def test_monotone_in_p(self):
        values = [diameter_criterion(300, 300, p, 2).value for p in np.linspace(0.01, 0.9, 40)]
        assert values == sorted(values)


class TestRainbowSuccessProb:
    def test_known_fractions(self):
        assert rainbow_success_prob(2, 3).exact == Fraction(2, 9)
        assert rainbow_success_prob(2, 2).exact == Fraction(1, 2)
        assert rainbow_success_prob(3, 4).exact == Fraction(3, 32)
        assert rainbow_success_prob(3, 3).exact == Fraction(2, 9)

    def test_grid_against_mpmath(self):
        count = 0
        for d in range(2, 52):
            for plen in (d, d + 1):
                got = rainbow_success_prob(d, plen).value
                if plen == d + 1:
                    want = mpmath.factorial(d + 1) / mpmath.mpf(d + 1) ** (d + 1)
                else:
                    want = mpmath.factorial(d) / mpmath.mpf(d) ** d
                assert close12(got, want)
                count += 1
        assert count == 100

    def test_stirling_bounds(self):
        for d in range(2, 21):
            long_path = rainbow_success_prob(d, d + 1)
            short_path = rainbow_success_prob(d, d)
            assert long_path.value >= 8.0 ** (-d)
            assert short_path.value >= 4.0 ** (-d)
            assert long_path.stirling_bound == 8.0 ** (-d)
            assert short_path.stirling_bound == 4.0 ** (-d)

    def test_path_len_validation(self):
        with pytest.raises(ValueError):
            rainbow_success_prob(2, 4)
        with pytest.raises(ValueError):
            rainbow_success_prob(2, 1)


class TestFailureBound:
    def test_grid_against_mpmath(self):
        pts = [
            (k, d, c0)
            for k in (1, 2, 5, 17, 100)
            for d in (2, 3, 4, 5)
            for c0 in (1.0, 2.5, 7.0, 10.0, 30.0)
        ]
        assert len(pts) == 100
        for k, d, c0 in pts:
            got = per_pair_failure_bound(k, d, c0, 10**6).log_bound
            want = mp_failure_log_bound(k, d, c0, 10**6)
            assert close12(got, want)

    def test_k1_drops_binomial(self):
        fb = per_pair_failure_bound(1, 2, 1.0, 1000)
        assert fb.log_bound == fb.path_supply * math.log1p(-fb.q)

    def test_q_is_min(self):
        fb = per_pair_failure_bound(2, 2, 1.0, 1000)
        assert fb.q == 2.0 / 9.0

    def test_spec_scale_case(self):
        n = 10**6
        k = max(1, math.floor(math.log(n)))
        fb = per_pair_failure_bound(k, 2, 1.0, n)
        assert fb.log_bound <= -100.0 * math.log(n)
        assert fb.meets_n_minus_100

    def test_no_overflow_at_huge_n(self):
        n = 10**12
        k = max(1, math.floor(math.log(n)))
        fb = per_pair_failure_bound(k, 2, 1.0, n)
        assert math.isfinite(fb.log_bound)
        assert fb.exponent < -100

    def test_monotone_decreasing_in_n(self):
        ns = [10**e for e in range(3, 13)]
        bounds = []
        for n in ns:
            k = max(1, math.floor(math.log(n)))
            bounds.append(per_pair_failure_bound(k, 2, 1.0, n).log_bound)
        assert bounds == sorted(bounds, reverse=True)

    def test_validation(self):
        with pytest.raises(ValueError):
            per_pair_failure_bound(0, 2, 1.0, 100)
        with pytest.raises(ValueError):
            per_pair_failure_bound(2, 1, 1.0, 100)
        with pytest.raises(ValueError):
            per_pair_failure_bound(10**9, 2, 1.0, 100)  # k-1 beyond supply


class TestChernoff:
    def test_grid_against_mpmath(self):
        means = [0.5, 3.7, 12.0, 100.0, 650.0, 4000.0, 2.5e4, 1e5, 3e6, 1e8]
        fracs = [0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95]
        pts = [(mu, f) for mu in means for f in fracs]
        assert len(pts) == 100
        for mean, frac in pts:
            got = chernoff_lower_tail(mean, frac)
            want = mpmath.exp(-mpmath.mpf(frac) ** 2 * mpmath.mpf(mean) / 2)
            if float(want) == 0.0:
                assert got == 0.0
            else:
                assert close12(got, want)

    def test_reproduces_neighbor_count_bound(self):
        # mean pn/2 with frac 4/5
        p, n = 0.05, 2000
        got = chernoff_lower_tail(p * n / 2.0, 0.8)
        assert abs(got - math.exp(-0.5 * 0.64 * p * n / 2.0)) < 1e-18

    def test_bound_dominates_monte_carlo(self):
        # lower tail of a Binomial(trials, p) against the analytic bound
        rng = np.random.default_rng(404)
        trials, p, frac = 400, 0.1, 0.5
        mean = trials * p
        draws = rng.binomial(trials, p, size=20000)
        empirical = float((draws < (1 - frac) * mean).mean())
        bound = chernoff_lower_tail(mean, frac)
        se = math.sqrt(max(empirical, 1.0 / 20000) / 20000)
        assert empirical <= bound + 3 * se

    def test_validation(self):
        with pytest.raises(ValueError):
            chernoff_lower_tail(0.0, 0.5)
        with pytest.raises(ValueError):
            chernoff_lower_tail(10.0, 1.0)


class TestRegimeParams:
    def test_default_k(self):
        params = RegimeParams(50, 100, 3)
        assert params.k == max(1, math.floor(math.log(100)))

    def test_constants(self):
        params = RegimeParams(50, 100, 3, c0=1.0)
        assert params.C1 == 2.0**30
        assert params.C2 == 2.0**30 / params.epsilon
        assert abs(params.c1 - math.log(2) ** (1 / 3.0) / 2) < 1e-15
        assert abs(params.c2 - (2 * math.log(2)) ** (-1 / 3.0)) < 1e-15

    def test_c2_identity(self):
        # c2 * (2 ln n)^(1/d) equals (log2 n)^(1/d)
        for d in (2, 3, 4):
            params = RegimeParams(100, 10**6, d)
            lhs = params.c2 * (2 * math.log(10**6)) ** (1.0 / d)
            assert abs(lhs - math.log2(10**6) ** (1.0 / d)) < 1e-12

    def test_amplified_p_symbolic(self):
        value, symbolic = RegimeParams(50, 100, 3).amplified_p()
        assert symbolic  # C1 * p_star is astronomically above 1 here
        assert value > 1.0

    def test_p_star_matches_dispatch(self):
        assert RegimeParams(100, 200, 3).p_star == sharp_threshold(100, 200, 3)
        assert RegimeParams(100, 200, 4).p_star == sharp_threshold(100, 200, 4)

    def test_validation(self):
        with pytest.raises(ValueError):
            RegimeParams(1, 100, 3)
        with pytest.raises(ValueError):
            RegimeParams(100, 100, 1)
        with pytest.raises(ValueError):
            RegimeParams(100, 100, 3, c0=0.5)
        with pytest.raises(ValueError):
            RegimeParams(100, 100, 3, epsilon=1.5)


class TestRegimeValid:
    def test_odd_chain_values(self):
        m, n, p, d = 200, 1000, 0.3, 3
        check = regime_valid(m, n, p, d)
        names = [c.name for c in check.checks]
        assert len(names) == 2
        by_name = {c.name: c for c in check.checks}
        first = by_name[names[0]]
        assert first.lhs == pytest.approx(p * n)
        assert first.rhs == pytest.approx(p * m)

    def test_odd_known_valid(self):
        # pn >= pm >= (ln n)^4 comfortably
        n = 10**5
        p = 0.5
        check = regime_valid(n, n, p, 3)
        assert check.valid
        assert all(c.satisfied for c in check.checks)

    def test_odd_known_invalid(self):
        check = regime_valid(100, 100, 0.01, 3)
        assert not check.valid

    def test_even_needs_epsilon(self):
        with pytest.raises(ValueError):
            regime_valid(100, 100, 0.5, 2)

    def test_even_chain(self):
        m = n = 10**6
        p = 0.9
        check = regime_valid(m, n, p, 2, epsilon=0.1)
        assert check.valid
        weak = regime_valid(m, n, 1e-4, 2, epsilon=0.1)
        assert not weak.valid

    def test_slack_sign(self):
        check = regime_valid(10**5, 10**5, 0.5, 3)
        for c in check.checks:
            assert (c.slack >= 0) == c.satisfied
