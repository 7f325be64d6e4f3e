"""Self-contained verification suites behind ``hardy-sphere verify``.

Each check returns a row {suite, check, passed, detail}; suites are kept
light enough for interactive use (the exhaustive versions live in the test
suite).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import certify, functionals
from .gegenbauer import GegenbauerParam, ZonalCoeffs
from .sphere import (
    SphereCoeffs,
    SpectralMultiplier,
    apply_multiplier,
    basis_matrix,
    sphere_quadrature,
    x1_bilinear_form,
)

__all__ = ["SUITE_NAMES", "run_suite"]

SUITE_NAMES = ("identities", "constants", "sharpness", "uncertainty", "erratum")


def _row(suite: str, check: str, passed: bool, detail: str) -> dict:
    return {"suite": suite, "check": check, "passed": bool(passed), "detail": detail}


def _suite_identities(seed: int, **_) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    # zonal first-coordinate identity against quadrature, several weights
    from .gegenbauer import gauss_rule, synthesize

    for lam in (0.0, 0.3, 0.5, 1.0, 2.4):
        param = GegenbauerParam(lam)
        c = ZonalCoeffs(param, np.concatenate([[0.0], rng.standard_normal(8)]))
        rule = gauss_rule(param, 24)
        fv = synthesize(c, rule.nodes)
        quad = float(np.dot(rule.weights, rule.nodes * fv * fv))
        coef = x1_bilinear_form(c, c)
        ok = abs(quad - coef) <= 1e-10 * max(1.0, abs(quad))
        rows.append(_row("identities", f"zonal-x1-form lam={lam}", ok, f"|diff|={abs(quad-coef):.2e}"))
    # sphere identity + Parseval for d = 3, 4
    for d in (3, 4):
        nmax = 4
        pts, w = sphere_quadrature(d, 2 * nmax + 2)
        labels, mat = basis_matrix(d, nmax, pts)
        c = SphereCoeffs.random_band(d, nmax, rng)
        vec = np.array([c.block(n, k)[j - 1] for (n, k, j) in labels])
        fv = vec @ mat
        quad = float(np.sum(w * pts[:, 0] * fv * fv))
        coef = x1_bilinear_form(c, c)
        ok = abs(quad - coef) <= 1e-10 * max(1.0, abs(quad))
        rows.append(_row("identities", f"sphere-x1-form d={d}", ok, f"|diff|={abs(quad-coef):.2e}"))
        pars = abs(float(np.sum(w * fv * fv)) - c.norm_sq)
        rows.append(_row("identities", f"parseval d={d}", pars <= 1e-10 * c.norm_sq, f"|diff|={pars:.2e}"))
    # multiplier composition
    param = GegenbauerParam(0.7)
    c = ZonalCoeffs(param, np.concatenate([[0.0], rng.standard_normal(6)]))
    m1 = apply_multiplier(apply_multiplier(c, SpectralMultiplier(0.5, 0.7)), SpectralMultiplier(-0.5, 0.7))
    err = float(np.max(np.abs(m1.coeffs - c.coeffs)))
    rows.append(_row("identities", "multiplier-composition", err <= 1e-12, f"max err={err:.2e}"))
    return rows


def _suite_constants(**_) -> list[dict]:
    rows = []
    for lam, want in ((0.5, 0), (1.0, 0), (Fraction(2, 3), 0), (2, 4), (1.5, 0)):
        got = certify.stable_tail_index(lam)
        rows.append(_row("constants", f"stable-tail-index lam={lam}", got == want, f"got {got}, want {want}"))
    tau6, arg6 = certify.min_mode_bound(2, exact=True)
    ok = tau6 == Fraction(141, 128) and arg6 == 2
    rows.append(_row("constants", "min-mode-bound d=6", ok, f"got {tau6} at n={arg6}"))
    for d in (7, 8, 9, 10):
        lam = (d - 2) / 2.0
        v, arg = certify.min_mode_bound(lam)
        formula = (d - 1) * (1 - 7 * math.sqrt(math.pi) * math.gamma(d / 2) / (4 * d * math.gamma((d - 1) / 2)))
        ok = arg == 1 and abs(float(v) - formula) <= 1e-12 * max(1.0, formula)
        rows.append(_row("constants", f"first-mode-minimum d={d}", ok, f"min={float(v):.15g} formula={formula:.15g}"))
    scan = certify.scan_lambda0()
    ok = 1.824 <= scan.estimate <= 1.827
    rows.append(_row("constants", "monotone-certificate-boundary", ok, f"estimate={scan.estimate:.5f} bracket={scan.bracket}"))
    a = certify.factor_sq_table(2.0, 2000)
    n = np.arange(1, 2000)
    g = np.sqrt(a[1:-1] * a[2:])
    gt = np.sqrt(1.0 - 2.0 / ((n + 2.0) * (n + 3.0)))
    err = float(np.max(np.abs(g - gt) / gt))
    rows.append(_row("constants", "coupling-factorization lam=2", err <= 1e-12, f"max rel err={err:.2e}"))
    return rows


def _suite_sharpness(**_) -> list[dict]:
    rows = []
    ratios = [functionals.sharpness_ratio(0.0, 1, n) for n in (32, 64, 128)]
    ok = ratios[0] < ratios[1] < ratios[2] < 8.0
    rows.append(_row("sharpness", "circle-family-ratio-increasing", ok, f"ratios={[f'{r:.3f}' for r in ratios]}"))
    ratios_half = [functionals.sharpness_ratio(0.5, 1, n) for n in (32, 128)]
    ok = ratios_half[1] > ratios_half[0]
    rows.append(_row("sharpness", "divergence-at-half", ok, f"ratios={[f'{r:.3f}' for r in ratios_half]}"))
    rep = certify.rayleigh_certify(0.0, 0, (64, 128, 256, 512))
    ok = rep.monotone and all(m >= 0.125 - 1e-10 for m in rep.mu)
    rows.append(_row("sharpness", "rayleigh-monotone-bounded", ok, f"constants={[f'{c:.3f}' for c in rep.constants]}"))
    return rows


def _suite_uncertainty(seed: int, t_list=None, **_) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for d in (3, 4):
        bd = functionals.uncertainty_constant(d)
        worst = math.inf
        worst_weak = math.inf
        pts, w = sphere_quadrature(d, 12)
        labels, mat = basis_matrix(d, 5, pts)
        for _ in range(100):
            c = SphereCoeffs.random_band(d, 5, rng)
            vec = np.array([c.block(n, k)[j - 1] for (n, k, j) in labels])
            vec /= np.linalg.norm(vec)
            fv = vec @ mat
            tau = (pts * (w * fv * fv)[:, None]).sum(axis=0)
            tn = float(np.linalg.norm(tau))
            grad = sum(
                n * (n + d - 2) * v * v for (n, _, _), v in zip(labels, vec)
            )
            worst = min(worst, (1.0 - tn) * grad - bd.value)
            worst_weak = min(worst_weak, (1.0 - tn * tn) * grad - ((d - 1) / 2.0) ** 2 * tn * tn)
        rows.append(_row("uncertainty", f"product-above-Bd d={d}", worst >= -1e-10, f"worst margin={worst:.3e}"))
        rows.append(_row("uncertainty", f"weak-form d={d}", worst_weak >= -1e-10, f"worst margin={worst_weak:.3e}"))
    b3 = functionals.uncertainty_constant(3).value
    ok = abs(b3 - (2.0 - 2.0 * math.sqrt(6.0) / 3.0)) <= 1e-12
    rows.append(_row("uncertainty", "closed-form d=3", ok, f"B_3={b3:.15f}"))
    ts = t_list or (1e-2, 1e-3)
    hl = functionals.heat_limits(1.0, ts)
    got = hl.extrapolated["product"]
    rows.append(
        _row("uncertainty", "heat-product lam=1", abs(got - 1.125) <= 0.05, f"extrapolated={got:.4f}")
    )
    return rows


def _suite_erratum(eps_list=None, **_) -> list[dict]:
    rows = []
    fam = functionals.zero_moment_family(3, 4, 2)
    ok = fam["tau_first"] == 0
    rows.append(_row("erratum", "zero-moment-family", ok, f"tau={fam['tau_first']}"))
    eps = eps_list or (1e-1, 1e-2, 1e-3)
    table = functionals.circle_counterexample(eps)
    decreasing = all(
        table[i + 1]["moment_product"] < table[i]["moment_product"] for i in range(len(table) - 1)
    )
    rows.append(
        _row(
            "erratum",
            "moment-product-vanishes",
            decreasing and table[-1]["moment_product"] < 1e-2,
            f"R({table[-1]['eps']:g})={table[-1]['moment_product']:.3e}",
        )
    )
    r_over = table[-1]["moment_product_over_eps"]
    rows.append(_row("erratum", "half-slope", abs(r_over - 0.5) <= 0.05 * 0.5, f"R/eps={r_over:.4f}"))
    return rows


_SUITES = {
    "identities": _suite_identities,
    "constants": _suite_constants,
    "sharpness": _suite_sharpness,
    "uncertainty": _suite_uncertainty,
    "erratum": _suite_erratum,
}


def run_suite(name: str, seed: int = 0, t_list=None, eps_list=None) -> list[dict]:
    """Run one named suite (or 'all'); returns check rows."""
    if name == "all":
        out = []
        for s in SUITE_NAMES:
            out.extend(run_suite(s, seed=seed, t_list=t_list, eps_list=eps_list))
        return out
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    return _SUITES[name](seed=seed, t_list=t_list, eps_list=eps_list)
