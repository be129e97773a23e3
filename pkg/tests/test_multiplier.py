import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logevo.multiplier import (
    DEGENERATE_R,
    RHO_BRANCH_R,
    Regime,
    b_bounds_check,
    b_of,
    r_of_sigma,
    rho_of,
    roots_at,
    sigma_of,
    symbol_at,
)


def sigma_to_r(sigma: float) -> float:
    return r_of_sigma(sigma)


class TestSymbolAt:
    def test_branch_point(self):
        p = symbol_at(RHO_BRANCH_R)
        assert p.sigma == pytest.approx(1.0, abs=1e-15)
        assert p.rho == pytest.approx(0.5, abs=1e-15)

    def test_origin_is_degenerate(self):
        p = symbol_at(0.0)
        assert p.sigma == 0.0
        assert p.rho == 0.0
        assert p.regime is Regime.DEGENERATE

    def test_double_root_frequency(self):
        p = symbol_at(DEGENERATE_R)
        assert p.sigma == pytest.approx(4.0, rel=1e-14)
        assert p.regime is Regime.DEGENERATE
        assert DEGENERATE_R == pytest.approx(7.3211, abs=1e-3)

    def test_rho_branches_agree_at_junction(self):
        below = 0.5 * sigma_of(RHO_BRANCH_R)
        assert below == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -1.0])
    def test_domain_errors(self, bad):
        with pytest.raises(ValueError):
            symbol_at(bad)

    def test_sigma_zero_iff_r_zero(self):
        assert sigma_of(0.0) == 0.0
        assert sigma_of(1e-160) > 0.0  # log1p keeps tiny r away from zero


class TestRoots:
    def test_complex_example(self):
        pair = roots_at(symbol_at(sigma_to_r(1.0)))
        assert pair.lambda_plus == pytest.approx(complex(-0.5, math.sqrt(3) / 2), rel=1e-14)
        assert pair.a == pytest.approx(0.5)
        assert pair.b == pytest.approx(math.sqrt(3) / 2, rel=1e-14)

    def test_degenerate_example(self):
        pair = roots_at(symbol_at(sigma_to_r(4.0)))
        assert pair.lambda_plus == pair.lambda_minus
        assert pair.lambda_plus.real == pytest.approx(-2.0, rel=1e-12)
        assert pair.b == 0.0

    def test_real_example(self):
        pair = roots_at(symbol_at(sigma_to_r(12.0)))
        assert pair.lambda_plus.real == pytest.approx(-6.0 + 2.0 * math.sqrt(6), rel=1e-12)
        assert pair.lambda_minus.real == pytest.approx(-6.0 - 2.0 * math.sqrt(6), rel=1e-12)
        assert pair.lambda_plus.imag == 0.0 == pair.lambda_minus.imag
        assert pair.lambda_minus.real < pair.lambda_plus.real < 0.0

    @given(st.floats(min_value=1e-8, max_value=1e3))
    @settings(max_examples=200)
    def test_vieta(self, sigma):
        pair = roots_at(symbol_at(sigma_to_r(sigma)))
        total = pair.lambda_plus + pair.lambda_minus
        prod = pair.lambda_plus * pair.lambda_minus
        assert abs(total + sigma) <= 1e-12 * max(1.0, sigma)
        assert abs(prod - sigma) <= 1e-12 * max(1.0, sigma)

    @given(st.floats(min_value=0.0, max_value=1e3))
    @settings(max_examples=200)
    def test_decay_signs(self, sigma):
        pair = roots_at(symbol_at(sigma_to_r(sigma)))
        assert pair.lambda_plus.real <= 0.0
        assert pair.lambda_minus.real <= 0.0
        if sigma == 0.0:
            assert pair.lambda_plus.real == 0.0
        elif sigma > 1e-12:  # strict decay away from underflow scale
            assert pair.lambda_plus.real < 0.0
            assert pair.lambda_minus.real < 0.0

    @pytest.mark.parametrize("eps", [1e-6, 1e-9])
    def test_continuity_through_double_root(self, eps):
        for sigma in (4.0 - eps, 4.0 + eps):
            pair = roots_at(symbol_at(sigma_to_r(sigma)))
            assert abs(pair.lambda_plus - (-2.0)) < 10.0 * math.sqrt(eps)
            assert abs(pair.lambda_minus - (-2.0)) < 10.0 * math.sqrt(eps)


class TestRhoAndB:
    def test_rho_nondecreasing_and_bounded(self):
        r = np.linspace(0.0, 20.0, 4001)
        rho = rho_of(r)
        assert np.all(np.diff(rho) >= -1e-15)
        assert np.all(rho**2 <= sigma_of(r) / 4.0 + 1e-15)

    def test_rho_continuous_at_branch(self):
        eps = 1e-9
        assert rho_of(RHO_BRANCH_R - eps) == pytest.approx(rho_of(RHO_BRANCH_R + eps), abs=1e-9)

    @pytest.mark.parametrize("r", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_b_bounds_inside_unit_ball(self, r):
        assert b_bounds_check(r)

    @pytest.mark.parametrize("r", [-0.1, 1.5])
    def test_b_bounds_domain(self, r):
        with pytest.raises(ValueError):
            b_bounds_check(r)

    def test_b_vanishes_outside_complex_band(self):
        assert b_of(100.0) == 0.0
