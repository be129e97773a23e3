import math

import numpy as np
import pytest

from logevo.quadrature import (
    GAUSS_WEIGHTS,
    GK_NODES,
    GK_WEIGHTS,
    IntegralSpec,
    adaptive_quad,
    integrate,
    ip_ratio_curve,
    jp_ratio_curve,
    oracle_integrate,
    tail_cutoff,
)

# frozen second-opinion values (QUADPACK at 10x tighter tolerance, different rule)
SCRIPT_I1_AT_100 = 296.5013096282422
COS_OVER_Y_AT_4 = -0.5639625266617954
IP_HALF_AT_50 = 0.6838684412889017
SCRIPT_I3_AT_1000 = 0.17619615207682943
JP_RATIO_P3_AT_1000 = 1.0020040080155426
JP_RATIO_PM2_AT_1000 = 0.9970089582578464


def closed_ip1(t: float) -> float:
    return (1.0 - 2.0 ** (1.0 - t)) / (2.0 * (t - 1.0))


def closed_jp1(t: float) -> float:
    return 2.0 ** (1.0 - t) / (2.0 * (t - 1.0))


class TestKronrodRule:
    def test_polynomial_exactness_through_degree_22(self):
        for deg in range(23):
            exact = 2.0 / (deg + 1.0) if deg % 2 == 0 else 0.0
            approx = float(np.sum(GK_WEIGHTS * GK_NODES**deg))
            assert approx == pytest.approx(exact, abs=5e-14)

    def test_rule_shape(self):
        assert GK_NODES.size == 15
        assert np.all(np.diff(GK_NODES) > 0)
        assert np.allclose(GK_NODES, -GK_NODES[::-1], atol=1e-15)
        assert np.all(GK_WEIGHTS > 0)
        assert float(GK_WEIGHTS.sum()) == pytest.approx(2.0, abs=1e-14)

    def test_embedded_gauss_rule(self):
        xg, wg = np.polynomial.legendre.leggauss(7)
        assert np.allclose(np.sort(xg), GK_NODES[1::2], atol=1e-13)
        assert np.allclose(wg[np.argsort(xg)], GAUSS_WEIGHTS[1::2], atol=1e-13)
        # Gauss-7 exact through degree 13, not 14: the error estimate is not void
        g14 = float(np.sum(GAUSS_WEIGHTS * GK_NODES**14))
        assert abs(g14 - 2.0 / 15.0) > 1e-6


class TestAdaptiveEngine:
    def test_smooth_integrand(self):
        res = adaptive_quad(np.exp, [0.0, 1.0])
        assert res.converged
        assert res.value == pytest.approx(math.e - 1.0, rel=1e-13)
        assert abs(res.value - (math.e - 1.0)) <= max(1e-12, res.abs_error_estimate)

    def test_budget_exhaustion_is_loud(self):
        spiky = lambda x: np.abs(x - 1.0 / 3.0) ** (-0.5)
        res = adaptive_quad(spiky, [0.0, 1.0], rel_tol=1e-13, abs_tol=1e-15, node_budget=300)
        assert not res.converged
        assert res.nodes_used <= 300 + 2 * 15  # one refinement sweep may finish in flight

    def test_bad_breakpoints(self):
        with pytest.raises(ValueError):
            adaptive_quad(np.exp, [1.0, 0.0])
        with pytest.raises(ValueError):
            adaptive_quad(np.exp, [0.0])


class TestIntegralSpecs:
    def test_ip_requires_p_above_minus_one(self):
        with pytest.raises(ValueError):
            IntegralSpec("Ip", -1.0, 2.0)

    def test_script_requires_integer_dimension(self):
        with pytest.raises(ValueError):
            IntegralSpec("ScriptI_n", 1.5, 2.0)

    def test_middle_requires_eta(self):
        with pytest.raises(ValueError):
            IntegralSpec("Middle", 0.0, 2.0)

    def test_cos_needs_t_above_one(self):
        with pytest.raises(ValueError):
            IntegralSpec("CosOverY", 0.0, 1.0)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            IntegralSpec("Kp", 0.0, 2.0)

    def test_nonfinite_t(self):
        with pytest.raises(ValueError):
            IntegralSpec("Ip", 1.0, float("inf"))


class TestNamedIntegrals:
    def test_ip_closed_form(self):
        res = integrate(IntegralSpec("Ip", 1.0, 2.0))
        assert res.converged
        assert res.value == pytest.approx(0.25, abs=1e-12)

    @pytest.mark.parametrize("t", [3.0, 10.0, 100.0, 1e4])
    def test_ip_p1_any_t(self, t):
        res = integrate(IntegralSpec("Ip", 1.0, t))
        assert res.value == pytest.approx(closed_ip1(t), rel=1e-9)

    def test_ip_integrable_singularity(self):
        res = integrate(IntegralSpec("Ip", -0.5, 50.0))
        assert res.converged
        assert res.value == pytest.approx(IP_HALF_AT_50, rel=1e-8)

    def test_jp_closed_form(self):
        res = integrate(IntegralSpec("Jp", 1.0, 2.0))
        assert res.converged
        assert res.value == pytest.approx(0.25, rel=1e-9)

    def test_jp_divergence_guard(self):
        with pytest.raises(ValueError):
            integrate(IntegralSpec("Jp", 3.0, 1.5))

    def test_middle_band(self):
        res = integrate(IntegralSpec("Middle", 0.0, 5.0, eta=0.5))
        ref = oracle_integrate(IntegralSpec("Middle", 0.0, 5.0, eta=0.5))
        assert res.value == pytest.approx(ref.value, rel=1e-10)

    def test_script_two_rule_agreement(self):
        res = integrate(IntegralSpec("ScriptI_n", 1.0, 100.0))
        assert res.converged
        assert res.value == pytest.approx(SCRIPT_I1_AT_100, rel=1e-8)

    def test_script_n3_large_t(self):
        res = integrate(IntegralSpec("ScriptI_n", 3.0, 1000.0))
        assert res.value == pytest.approx(SCRIPT_I3_AT_1000, rel=1e-8)

    def test_script_positive_and_finite(self):
        for n in (1, 2, 3):
            for t in (2.0, 10.0, 1000.0):
                res = integrate(IntegralSpec("ScriptI_n", float(n), t))
                assert res.converged
                assert 0.0 < res.value < math.inf
        res = integrate(IntegralSpec("ScriptI_n", 4.0, 3.0))
        assert res.converged and 0.0 < res.value < math.inf

    def test_script_divergence_guard(self):
        # the radial tail is log-divergent once 2t <= n
        with pytest.raises(ValueError):
            IntegralSpec("ScriptI_n", 4.0, 2.0)

    def test_cos_over_y(self):
        res = integrate(IntegralSpec("CosOverY", 0.0, 4.0))
        assert res.value == pytest.approx(COS_OVER_Y_AT_4, rel=1e-8)
        assert -1.0 <= res.value <= 1.0

    def test_tail_truncation_soundness(self):
        # doubling the cutoff moves Jp and ScriptI_n by less than abs_tol
        t, p = 12.0, 2.0
        hi = tail_cutoff(t, p, 1e-14)
        f = lambda r: np.exp(-t * np.log1p(r * r)) * r**p
        base = adaptive_quad(f, [1.0, hi]).value
        doubled = adaptive_quad(f, [1.0, 2.0 * hi]).value
        assert abs(doubled - base) < 1e-12

        spec = IntegralSpec("ScriptI_n", 2.0, 50.0)
        v1 = integrate(spec).value
        import logevo.quadrature as q

        cut = q._script_cutoff(2, 50.0, spec.abs_tol)
        osc = q.oscillation_squared_over_sigma(50.0)
        w = q.power_weight(50.0)
        g = lambda r: w(r) * osc(r) * r
        pts = q._phase_breakpoints(50.0, 2.0 * cut)
        v2 = 2.0 * math.pi * adaptive_quad(g, pts).value
        assert abs(v2 - v1) < 1e-12


class TestRatioCurves:
    def test_low_band_p1_matches_closed_form(self):
        for t, ratio in ip_ratio_curve(1.0, [10.0, 100.0, 1e4]):
            assert ratio == pytest.approx(closed_ip1(t) * t, rel=1e-9)

    def test_low_band_limits(self):
        # the t -> inf constant is Gamma((p+1)/2)/2 (verified numerically, not assumed)
        for p in (-0.5, 0.0, 1.0, 3.0):
            (_, ratio), = ip_ratio_curve(p, [1e5])
            assert ratio == pytest.approx(0.5 * math.gamma(0.5 * (p + 1.0)), rel=5e-5)

    def test_low_band_rejects_bad_p(self):
        with pytest.raises(ValueError):
            ip_ratio_curve(-1.0, [10.0])

    def test_high_band_p1_is_exactly_one(self):
        for _, ratio in jp_ratio_curve(1.0, [10.0, 20.0, 50.0, 500.0]):
            assert ratio == pytest.approx(1.0, abs=1e-9)

    def test_high_band_recorded_limits(self):
        (_, r3), = jp_ratio_curve(3.0, [1000.0])
        assert r3 == pytest.approx(JP_RATIO_P3_AT_1000, rel=1e-9)
        (_, rm2), = jp_ratio_curve(-2.0, [1000.0])
        assert rm2 == pytest.approx(JP_RATIO_PM2_AT_1000, rel=1e-9)

    def test_high_band_no_overflow_at_huge_t(self):
        (_, ratio), = jp_ratio_curve(0.0, [5000.0])
        assert 0.9 < ratio < 1.1  # 2^5000 would overflow any direct route

    def test_middle_compensated_decreasing(self):
        # exponential middle-band bound: compensated integral is monotone in t
        for eta in (0.25, 0.5, 0.75):
            vals = []
            for t in np.linspace(5.0, 200.0, 14):
                res = integrate(IntegralSpec("Middle", 0.0, float(t), eta=eta))
                vals.append(res.value * (1.0 + eta * eta) ** t)
            assert all(b <= a * (1.0 + 1e-9) for a, b in zip(vals, vals[1:]))


class TestTwoRuleAgreement:
    # every shipped example value is confirmed by the second-opinion rule
    @pytest.mark.parametrize(
        "spec",
        [
            IntegralSpec("Ip", 1.0, 2.0),
            IntegralSpec("Ip", -0.5, 50.0),
            IntegralSpec("Jp", 1.0, 2.0),
            IntegralSpec("Middle", 0.0, 5.0, eta=0.5),
            IntegralSpec("ScriptI_n", 1.0, 100.0),
            IntegralSpec("ScriptI_n", 3.0, 1000.0),
            IntegralSpec("CosOverY", 0.0, 4.0),
        ],
        ids=lambda s: f"{s.kind}-t{s.t:g}",
    )
    def test_primary_matches_oracle(self, spec):
        primary = integrate(spec)
        second = oracle_integrate(spec)
        assert primary.converged
        assert primary.value == pytest.approx(second.value, rel=1e-8, abs=1e-13)


class TestRatioPreconditions:
    def test_grid_must_start_at_ten(self):
        with pytest.raises(ValueError):
            ip_ratio_curve(1.0, [5.0, 20.0])
        with pytest.raises(ValueError):
            jp_ratio_curve(1.0, [5.0, 20.0])

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            ip_ratio_curve(1.0, [100.0, 50.0])
