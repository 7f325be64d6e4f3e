"""Energy functionals, moments, uncertainty products, and test families."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_sphere import (
    GegenbauerParam,
    HeatFamily,
    SphereCoeffs,
    ZonalCoeffs,
    b_lambda,
    circle_counterexample,
    gradient_norm_sq,
    hardy_check,
    hardy_rellich_constant,
    heat_limits,
    localized_energy,
    moment_first,
    moment_vector,
    sharpness_family,
    sharpness_ratio,
    sphere_quadrature,
    uncertainty_constant,
    uncertainty_product,
    zero_moment_family,
)
from hardy_sphere.sphere import basis_matrix


class TestLocalizedEnergy:
    def test_single_mode(self):
        c = ZonalCoeffs(GegenbauerParam(1.0), [0.0, 2.0])
        # no adjacent pair: J = n(n+2 lam) fhat^2 = 3 * 4
        assert localized_energy(c) == pytest.approx(12.0, rel=1e-14)

    def test_rejects_mean(self):
        with pytest.raises(ValueError):
            localized_energy(ZonalCoeffs(GegenbauerParam(1.0), [1.0, 1.0]))

    @pytest.mark.parametrize("lam", [0.0, 1.0])
    def test_hardy_rellich_on_random_corpus(self, lam):
        rng = np.random.default_rng(42)
        c_opt = hardy_rellich_constant(lam=lam)
        for _ in range(1000):
            coeffs = np.concatenate([[0.0], rng.standard_normal(12)])
            c = ZonalCoeffs(GegenbauerParam(lam), coeffs)
            assert c.norm_sq <= c_opt * localized_energy(c) * (1 + 1e-12)

    def test_sphere_matches_quadrature(self):
        rng = np.random.default_rng(1)
        d, nmax = 3, 3
        c = SphereCoeffs.random_band(d, nmax, rng)
        pts, w = sphere_quadrature(d, 2 * nmax + 4)
        labels, mat = basis_matrix(d, nmax, pts)
        vec = np.array([c.block(n, k)[j - 1] for (n, k, j) in labels])
        scale = np.array([math.sqrt(n * (n + d - 2)) for (n, _, _) in labels])
        gv = (vec * scale) @ mat
        quad = float(np.sum(w * (1.0 - pts[:, 0]) * gv * gv))
        assert localized_energy(c) == pytest.approx(quad, rel=1e-10)


class TestMoments:
    def test_constant_function(self):
        c = SphereCoeffs(3, 0, {(0, 0): [1.0]})
        np.testing.assert_allclose(moment_vector(c), np.zeros(3), atol=1e-14)

    def test_zonal_vector_shape(self):
        c = ZonalCoeffs(GegenbauerParam(0.5), [0.0, 1.0, 0.5])
        v = moment_vector(c)
        assert v.shape == (3,)
        assert v[1] == v[2] == 0.0
        assert v[0] == pytest.approx(moment_first(c))

    def test_circle_family_vector(self):
        eps = 0.25
        c = SphereCoeffs(2, 1, {(0, 0): [1.0], (1, 0): [eps / math.sqrt(2.0)]})
        tau = moment_vector(c)
        np.testing.assert_allclose(tau, [0.0, eps], atol=1e-13)

    def test_heat_family_concentrates(self):
        tau1 = moment_first(HeatFamily.build(1.0, 0.5).coeffs.normalized())
        tau2 = moment_first(HeatFamily.build(1.0, 0.05).coeffs.normalized())
        assert 0 < tau1 < tau2 < 1.0

    def test_zonal_coefficient_vs_quadrature(self):
        rng = np.random.default_rng(8)
        d = 3
        c = SphereCoeffs.random_band(d, 4, rng, zero_mean=False)
        tau = moment_vector(c)
        assert tau[0] == pytest.approx(moment_first(c), abs=1e-11)


class TestUncertaintyConstant:
    def test_circle_value(self):
        assert uncertainty_constant(2).value == pytest.approx(0.125)

    def test_d3_closed_form(self):
        want = 2.0 - 2.0 * math.sqrt(6.0) / 3.0
        assert uncertainty_constant(3).value == pytest.approx(want, abs=1e-12)
        assert b_lambda(0.5) == pytest.approx(want, abs=1e-15)

    def test_fixed_point_consistency(self):
        from scipy.optimize import brentq

        for d in range(3, 51):
            bd = uncertainty_constant(d)
            t_root = brentq(
                lambda t, d=d: (d - 1) / 4.0 * (1 - t) ** 2 / (2 - t) - t,
                1e-12,
                1.0,
                xtol=1e-15,
            )
            assert bd.t_star == pytest.approx(t_root, abs=1e-12)
            assert bd.value == pytest.approx((d - 1) * t_root, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 4, 5])
    def test_bounds_ordering(self, d):
        bd = uncertainty_constant(d)
        assert bd.lower - 1e-15 <= bd.value <= bd.upper + 1e-15

    def test_b_lambda_sharp_range(self):
        assert b_lambda(0.0) == pytest.approx(0.125)
        assert b_lambda(1.0) == pytest.approx(0.125)
        assert b_lambda(1.5) == pytest.approx(0.5)
        # beyond the sharp range: the certified mode-bound infimum
        assert b_lambda(2.0) == pytest.approx(141.0 / 128.0, rel=1e-12)


class TestUncertaintyProduct:
    def test_circle_lower_bound(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            c = ZonalCoeffs(GegenbauerParam(0.0), np.concatenate([[0.0], rng.standard_normal(8)]))
            rep = uncertainty_product(c)
            assert rep.product >= 0.125 - 1e-10

    @pytest.mark.parametrize("d", [3, 4])
    def test_sphere_corpus(self, d):
        rng = np.random.default_rng(d)
        bd = uncertainty_constant(d)
        for _ in range(50):
            c = SphereCoeffs.random_band(d, 4, rng)
            rep = uncertainty_product(c)
            assert rep.product >= bd.value - 1e-10
            assert rep.weak_product >= rep.weak_rhs - 1e-10

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            uncertainty_product(ZonalCoeffs(GegenbauerParam(1.0), [0.0]))

    def test_localization_equals_min_over_poles(self):
        # 1 - |tau| equals the smaller of the two pole localizations for a
        # zonal function (computed by quadrature on each side)
        from hardy_sphere import gauss_rule, synthesize

        rng = np.random.default_rng(4)
        param = GegenbauerParam(0.5)
        c = ZonalCoeffs(param, np.concatenate([[0.0], rng.standard_normal(6)])).normalized()
        rep = uncertainty_product(c)
        rule = gauss_rule(param, 24)
        fv = synthesize(c, rule.nodes)
        loc_plus = float(np.dot(rule.weights, (1 - rule.nodes) * fv * fv))
        loc_minus = float(np.dot(rule.weights, (1 + rule.nodes) * fv * fv))
        assert rep.localization == pytest.approx(min(loc_plus, loc_minus), abs=1e-10)


class TestHeat:
    def test_coefficients_positive_decreasing(self):
        # positive everywhere; decreasing beyond the diffusion scale
        # sqrt((lam+1/2)/(2t)) (for small t the prefactor n^(lam+1/2) wins
        # first, so "decreasing from n = 2" only holds once t is O(1))
        fam = HeatFamily.build(0.7, 0.01)
        v = fam.coeffs.coeffs[1:]
        assert np.all(v > 0)
        n_star = math.ceil(math.sqrt((0.7 + 0.5) / (2 * 0.01))) + 1
        assert np.all(np.diff(v[n_star:]) < 0)
        late = HeatFamily.build(0.7, 1.0).coeffs.coeffs[1:]
        assert np.all(np.diff(late[1:]) < 0)

    def test_truncation_size(self):
        fam = HeatFamily.build(1.0, 1e-4)
        assert fam.coeffs.degree == math.ceil(math.sqrt(40.0 / 1e-4))

    def test_rejects_bad_time(self):
        with pytest.raises(ValueError):
            HeatFamily.build(1.0, 0.0)

    @pytest.mark.parametrize("lam", [1.0, 2.0])
    def test_limits_generic(self, lam):
        hl = heat_limits(lam, [1e-2, 1e-3, 1e-4])
        assert hl.extrapolated["gradient_ratio"] == pytest.approx(lam + 0.5, rel=0.02)
        assert hl.extrapolated["localization_ratio"] == pytest.approx((lam + 0.5) / 2, rel=0.02)
        assert hl.extrapolated["product"] == pytest.approx((2 * lam + 1) ** 2 / 8, rel=0.02)

    def test_half_anomaly(self):
        # at lam = 1/2 the gradient ratio still hits lam + 1/2 = 1, but the
        # localization ratio and the product converge to 3/2: three times
        # the generic-formula values (the localization numerator stays O(1))
        hl = heat_limits(0.5, [1e-2, 1e-3, 1e-4])
        assert hl.extrapolated["gradient_ratio"] == pytest.approx(1.0, rel=1e-3)
        assert hl.extrapolated["localization_ratio"] == pytest.approx(1.5, rel=1e-3)
        assert hl.extrapolated["product"] == pytest.approx(1.5, rel=1e-3)

    def test_product_monotone_toward_limit(self):
        hl = heat_limits(1.0, [1e-1, 1e-2, 1e-3, 1e-4])
        prods = [r["product"] for r in hl.rows]
        assert all(prods[i + 1] <= prods[i] for i in range(len(prods) - 1))
        assert all(p >= b_lambda(1.0) for p in prods)


class TestSharpnessFamily:
    def test_family_matches_streamed_ratio(self):
        for lam in (0.0, 0.5, 1.0):
            fam = sharpness_family(lam, 1, 24)
            ratio = fam.norm_sq / localized_energy(fam)
            assert sharpness_ratio(lam, 1, 24) == pytest.approx(ratio, rel=1e-10)

    def test_chunked_evaluation_consistent(self):
        full = sharpness_ratio(0.5, 1, 40)
        small_chunks = sharpness_ratio(0.5, 1, 40, chunk=97)
        assert small_chunks == pytest.approx(full, rel=1e-12)

    def test_memory_guard(self):
        with pytest.raises(ValueError, match="cap"):
            sharpness_family(0.0, 1, 4000)

    def test_circle_ratio_increases_below_eight(self):
        ratios = [sharpness_ratio(0.0, 1, n) for n in (64, 128, 256, 512)]
        assert all(r1 < r2 for r1, r2 in zip(ratios, ratios[1:]))
        assert all(r < 8.0 for r in ratios)

    def test_divergence_at_half(self):
        r1 = sharpness_ratio(0.5, 1, 64)
        r4 = sharpness_ratio(0.5, 1, 256)
        assert r4 > r1

    def test_ramp_log_sum(self):
        # sum 1/(4n) over [1, N] = (log N)/4 + O(1)
        for nn in (2**8, 2**10, 2**12):
            n = np.arange(1, nn + 1, dtype=float)
            s = float(np.sum(1.0 / (4.0 * n)))
            assert abs(s - math.log(nn) / 4.0) < 0.2

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            sharpness_ratio(0.0, 4, 6)


class TestHardyCheck:
    def test_single_entry(self):
        m = hardy_check([1.0])
        assert m.adjacent == pytest.approx(7.0 / 8.0)
        assert m.hardy_p2 == pytest.approx(7.0)

    def test_harmonic_sequence(self):
        n = np.arange(1, 10_001, dtype=float)
        m = hardy_check(1.0 / n)
        assert m.adjacent >= -1e-12
        assert m.hardy_p2 >= -1e-12

    def test_bulk_random(self):
        rng = np.random.default_rng(123)
        a = rng.uniform(-1e3, 1e3, size=(100_000, 24))
        n = np.arange(1, 25, dtype=float)
        lhs = np.sum(np.abs(a[:, :-1] * a[:, 1:]), axis=1)
        rhs = np.sum((1 - 1 / (8 * n * n)) * a * a, axis=1)
        assert float(np.min(rhs - lhs)) >= -1e-9 * float(np.max(rhs))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=1, max_size=40))
    def test_margins_nonnegative_property(self, seq):
        m = hardy_check(seq)
        scale = max(1.0, max(abs(x) for x in seq) ** 2)
        assert m.adjacent >= -1e-10 * scale
        assert m.hardy_p2 >= -1e-10 * scale


class TestCounterexamples:
    def test_circle_closed_forms(self):
        eps = 0.1
        (row,) = circle_counterexample([eps])
        denom = 1 + eps * eps / 2
        np.testing.assert_allclose(row["tau"], [0.0, eps / denom], atol=1e-13)
        assert row["grad_sq"] == pytest.approx((eps * eps / 2) / denom, rel=1e-12)

    def test_moment_product_vanishes(self):
        rows = circle_counterexample([1e-1, 1e-2, 1e-3])
        vals = [r["moment_product"] for r in rows]
        assert vals[2] < vals[1] < vals[0]
        assert vals[2] < 1e-2  # defeats any fixed positive lower bound

    def test_half_slope(self):
        (row,) = circle_counterexample([1e-3])
        assert row["moment_product_over_eps"] == pytest.approx(0.5, rel=0.05)
        # series: R(eps)/eps = (1 - eps + eps^2/2) / (2 (1 + eps^2/2))
        eps = 1e-3
        want = (1 - eps + eps * eps / 2) / (2 * (1 + eps * eps / 2))
        assert row["moment_product_over_eps"] == pytest.approx(want, rel=1e-9)

    def test_zero_moment_family_exact(self):
        fam = zero_moment_family(3, 4, 2)
        assert fam["tau_first"] == 0
        assert fam["mean"] == Fraction(1, 3)

    @pytest.mark.parametrize("d,n,k", [(3, 4, 2), (3, 5, 3), (4, 4, 1), (2, 6, 2), (5, 7, 4)])
    def test_zero_moment_family_grid(self, d, n, k):
        fam = zero_moment_family(d, n, k)
        assert fam["tau_first"] == 0
        assert fam["norm_sq"] > 0

    def test_zero_mean_variant_degenerates_weak_form(self):
        # odd monomial power: zero mean, so the localization bound applies
        # while the weak (moment-form) inequality reads 0 >= 0
        fam = zero_moment_family(3, 5, 3)
        assert fam["mean"] == 0
        u = [float(x) for x in fam["raw_coeffs"]]
        param = GegenbauerParam(0.5)
        from hardy_sphere.gegenbauer import gegenbauer_norm_table

        h = gegenbauer_norm_table(len(u) - 1, param)
        c = ZonalCoeffs(param, np.asarray(u) * np.sqrt(h))
        rep = uncertainty_product(c)
        assert rep.tau_norm == pytest.approx(0.0, abs=1e-14)
        assert rep.weak_rhs == pytest.approx(0.0, abs=1e-14)
        assert rep.product > 0.1  # the strong form stays informative
        assert rep.product >= uncertainty_constant(3).value - 1e-10

    def test_quadrature_cross_check(self):
        # the exact tau of the mixed-parity family vanishes also under
        # product quadrature of the synthesized function
        from hardy_sphere import gauss_rule, synthesize
        from hardy_sphere.gegenbauer import gegenbauer_norm_table

        fam = zero_moment_family(3, 4, 2)
        u = np.array([float(x) for x in fam["raw_coeffs"]])
        param = GegenbauerParam(0.5)
        h = gegenbauer_norm_table(len(u) - 1, param)
        c = ZonalCoeffs(param, u * np.sqrt(h))
        rule = gauss_rule(param, 16)
        fv = synthesize(c, rule.nodes)
        assert float(np.dot(rule.weights, rule.nodes * fv * fv)) == pytest.approx(0.0, abs=1e-13)
        assert c.norm_sq == pytest.approx(float(fam["norm_sq"]), rel=1e-12)
