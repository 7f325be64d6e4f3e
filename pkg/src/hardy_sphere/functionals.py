"""Inequality functionals and the test families probing their sharpness.

Covers the localized energy form, first-moment (concentration) vectors,
uncertainty products with their reference constants, heat-kernel sharpness
probes, the explicit slow-growth family showing the constant 8 is sharp on
the circle (and that no constant exists at lam = 1/2), the discrete Hardy
margins, and the two counterexample families around the withdrawn
moment-form inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certify import factor_sq_table, min_mode_bound, mode_bound_limit
from .gegenbauer import (
    GegenbauerParam,
    ZonalCoeffs,
    gegenbauer_norm,
    gegenbauer_norm_table,
)
from .sphere import (
    SphereCoeffs,
    SpectralMultiplier,
    apply_multiplier,
    gradient_norm_sq,
    sphere_quadrature,
    sphere_synthesize,
    x1_bilinear_form,
    x1_form_with_mean,
)

__all__ = [
    "localized_energy",
    "moment_first",
    "moment_vector",
    "UncertaintyConstant",
    "uncertainty_constant",
    "b_lambda",
    "UncertaintyReport",
    "uncertainty_product",
    "HeatFamily",
    "heat_limits",
    "HeatLimits",
    "sharpness_family",
    "sharpness_ratio",
    "hardy_check",
    "HardyMargins",
    "circle_counterexample",
    "zero_moment_family",
]


# ---------------------------------------------------------------------------
# energy form and moments
# ---------------------------------------------------------------------------


def localized_energy(c) -> float:
    """J(f) = (1/om_d) int (1 - x1) |(-Delta0)^(1/2) f|^2 dsig for zero-mean f
    (zonal version with the weight measure on [-1, 1]).

    Computed in coefficient space as ||g||^2 - x1_bilinear_form(g, g) with
    g the half-power multiplier image of f.
    """
    if isinstance(c, ZonalCoeffs):
        lam = c.param.lam
    elif isinstance(c, SphereCoeffs):
        lam = c.lam
    else:
        raise TypeError(f"unsupported coefficient type {type(c)!r}")
    if not c.mean_is_zero:
        raise ValueError("localized energy requires zero-mean input")
    g = apply_multiplier(c, SpectralMultiplier(0.5, lam))
    if isinstance(g, ZonalCoeffs):
        return g.norm_sq - x1_bilinear_form(g, g)
    return g.norm_sq - x1_bilinear_form(g, g)


def moment_first(c) -> float:
    """First component of the moment vector, (1/om_d) int x1 |f|^2, straight
    from the coefficient coupling (valid for any mean and any dimension)."""
    return x1_form_with_mean(c)


def moment_vector(c, d: int | None = None, order: int | None = None) -> np.ndarray:
    """Moment vector (1/om_d) int x |f|^2 dsig.

    Zonal input is rotation-symmetric about the first axis, so the vector is
    (moment_first, 0, ..., 0) exactly (give d to fix its length).  Sphere
    input uses product quadrature, hence d <= 4.
    """
    if isinstance(c, ZonalCoeffs):
        if d is None:
            d = int(round(2 * c.param.lam + 2))
        out = np.zeros(d)
        out[0] = moment_first(c)
        return out
    if isinstance(c, SphereCoeffs):
        if order is None:
            order = 2 * c.nmax + 1
        pts, w = sphere_quadrature(c.dim, order)
        fv = sphere_synthesize(c, pts)
        return (pts * (w * fv * fv)[:, None]).sum(axis=0)
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


# ---------------------------------------------------------------------------
# uncertainty constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UncertaintyConstant:
    """Certified lower constant for localization x gradient energy, with the
    bracketing bounds on the (unknown, d >= 3) optimal value."""

    value: float
    lower: float
    upper: float
    t_star: float


def uncertainty_constant(d: int) -> UncertaintyConstant:
    """B_d = (d-1)(1 - 2/sqrt(d+3)) for d >= 3; the circle value is 1/8.

    t_star is the minimizing localization level: the root in (0, 2) of
    (d-1)/4 (1-t)^2/(2-t) = t, with B_d = (d-1) t_star.  The optimal
    constant sits in [(d-3)^2/8, (d-1)^2/8].
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    lower = (d - 3) ** 2 / 8.0
    upper = (d - 1) ** 2 / 8.0
    if d == 2:
        return UncertaintyConstant(0.125, lower, upper, 0.125)
    t_star = 1.0 - 2.0 / math.sqrt(d + 3.0)
    return UncertaintyConstant((d - 1) * t_star, lower, upper, t_star)


def b_lambda(lam: float) -> float:
    """Weight-parameter version of the uncertainty constant.

    2 - 2 sqrt(6)/3 at lam = 1/2; (2 lam - 1)^2/8 on 0 <= lam <= 3/2 (the
    inverse optimal inequality constant there); beyond, the certified value
    is the infimum of the mode bounds.
    """
    if lam == 0.5:
        return 2.0 - 2.0 * math.sqrt(6.0) / 3.0
    if 0.0 <= lam <= 1.5:
        return mode_bound_limit(lam)
    v, _ = min_mode_bound(lam, exact=False)
    return float(v)


@dataclass(frozen=True)
class UncertaintyReport:
    """Localization/gradient data of a unit-normalized function."""

    norm_sq: float
    tau: np.ndarray
    tau_norm: float
    grad_sq: float
    localization: float
    product: float
    weak_product: float
    weak_rhs: float
    bounds: UncertaintyConstant
    mean_is_zero: bool

    def to_dict(self) -> dict:
        return {
            "norm_sq": self.norm_sq,
            "tau": list(self.tau),
            "tau_norm": self.tau_norm,
            "grad_sq": self.grad_sq,
            "localization": self.localization,
            "product": self.product,
            "weak_product": self.weak_product,
            "weak_rhs": self.weak_rhs,
            "mean_is_zero": self.mean_is_zero,
        }


def uncertainty_product(c) -> UncertaintyReport:
    """Uncertainty data of f (normalized internally to unit norm).

    localization = 1 - |tau| is the minimum over poles e of the localization
    integral (1/om_d) int (1 - <x, e>) |f|^2; product multiplies it by the
    gradient energy.  The weak_* fields carry the no-mean-condition form
    (1 - |tau|^2) grad^2 >= ((d-1)/2)^2 |tau|^2.
    """
    norm_sq = c.norm_sq
    if norm_sq == 0.0:
        raise ValueError("cannot analyze the zero function")
    f = c.normalized()
    if isinstance(f, ZonalCoeffs):
        d = int(round(2 * f.param.lam + 2))
        tau = moment_vector(f, d=max(d, 1))
        bounds_d = d if d >= 2 and abs(2 * f.param.lam + 2 - d) < 1e-12 else None
        bounds = (
            uncertainty_constant(bounds_d)
            if bounds_d
            else UncertaintyConstant(b_lambda(f.param.lam), mode_bound_limit(f.param.lam), (2 * f.param.lam + 1) ** 2 / 8.0, math.nan)
        )
        dd = max(d, 2)
    else:
        tau = moment_vector(f)
        bounds = uncertainty_constant(f.dim)
        dd = f.dim
    tau_norm = float(np.linalg.norm(tau))
    grad_sq = gradient_norm_sq(f)
    localization = 1.0 - tau_norm
    return UncertaintyReport(
        norm_sq=norm_sq,
        tau=tau,
        tau_norm=tau_norm,
        grad_sq=grad_sq,
        localization=localization,
        product=localization * grad_sq,
        weak_product=(1.0 - tau_norm**2) * grad_sq,
        weak_rhs=((dd - 1) / 2.0) ** 2 * tau_norm**2,
        bounds=bounds,
        mean_is_zero=c.mean_is_zero,
    )


# ---------------------------------------------------------------------------
# heat-kernel sharpness probes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeatFamily:
    """Zonal heat kernel at time t: orthonormal coefficients
    exp(-n(n+2 lam) t) (n+lam)/lam sqrt(h_n) (Chebyshev form at lam = 0),
    truncated where the tail is below working precision."""

    lam: float
    t: float
    coeffs: ZonalCoeffs

    @classmethod
    def build(cls, lam: float, t: float, tail_tol: float = 1e-12) -> "HeatFamily":
        if t <= 0:
            raise ValueError("time must be positive")
        if lam < 0:
            raise ValueError("weight parameter must be >= 0 for the heat family")
        nmax = int(math.ceil(math.sqrt(40.0 / t)))
        n = np.arange(1, nmax + 1, dtype=float)
        decay = np.exp(-n * (n + 2.0 * lam) * t)
        if lam == 0.0:
            vals = math.sqrt(2.0) * decay
        else:
            h = gegenbauer_norm_table(nmax, GegenbauerParam(lam))
            vals = decay * ((n + lam) / lam) * np.sqrt(h[1:])
        out = np.concatenate([[0.0], vals])
        tail = (vals[-1] / max(np.max(vals), 1e-300)) ** 2 * nmax
        if tail > tail_tol:
            raise ValueError(f"heat truncation insufficient (tail mass {tail:.2e})")
        return cls(lam=lam, t=t, coeffs=ZonalCoeffs(GegenbauerParam(lam), out))


@dataclass(frozen=True)
class HeatLimits:
    """Normalized heat ratios per time, plus sqrt(t)-Richardson limits.

    Ratios carry the diffusion normalization sigma^2 = 2t:
      localization_ratio = (1 - tau)/(2t)        -> (lam + 1/2)/2  (lam > 1/2)
      gradient_ratio     = 2t ||grad||^2/||f||^2 -> lam + 1/2
      product            = (1 - tau) grad^2      -> (2 lam + 1)^2/8 (lam > 1/2)
    At lam = 1/2 exactly, the localization numerator stays O(1) instead of
    O(sqrt(1/t)), and the true limits are 3/2 and 3/2 (three times the
    generic values); below 1/2 the product diverges.
    """

    lam: float
    rows: list
    extrapolated: dict
    targets: dict


def heat_limits(lam: float, t_list) -> HeatLimits:
    rows = []
    for t in sorted(t_list, reverse=True):
        fam = HeatFamily.build(lam, float(t))
        f = fam.coeffs
        nrm = f.norm_sq
        tau = moment_first(f) / nrm
        grad = gradient_norm_sq(f) / nrm
        rows.append(
            {
                "t": float(t),
                "localization_ratio": (1.0 - tau) / (2.0 * t),
                "gradient_ratio": grad * 2.0 * t,
                "product": (1.0 - tau) * grad,
            }
        )
    extr = {}
    if len(rows) >= 2:
        a, b = rows[-2], rows[-1]
        s1, s2 = math.sqrt(a["t"]), math.sqrt(b["t"])
        for key in ("localization_ratio", "gradient_ratio", "product"):
            extr[key] = (b[key] * s1 - a[key] * s2) / (s1 - s2)
    return HeatLimits(
        lam=lam,
        rows=rows,
        extrapolated=extr,
        targets={
            "localization_ratio": (lam + 0.5) / 2.0,
            "gradient_ratio": lam + 0.5,
            "product": (2.0 * lam + 1.0) ** 2 / 8.0,
        },
    )


# ---------------------------------------------------------------------------
# the explicit sharpness family
# ---------------------------------------------------------------------------

_FAMILY_COEFF_CAP = 10**7


def _family_profile(n: np.ndarray, n_hi: int) -> np.ndarray:
    """sqrt(n) on the ramp, sqrt(n_hi - n/n_hi + 1) on the taper."""
    return np.where(
        n <= n_hi,
        np.sqrt(n),
        np.sqrt(np.maximum(n_hi - n / n_hi + 1.0, 0.0)),
    )


def sharpness_family(lam: float, n_lo: int, n_hi: int) -> ZonalCoeffs:
    """The slow-growth trial family: integrated profile sqrt(n) over
    [n_lo, n_hi] tapering off across (n_hi, n_hi^2 + n_hi].

    Coefficients are profile / (factor(n) sqrt(n(n+2 lam))).  Materializes
    n_hi^2 + n_hi coefficients, guarded at 1e7 (use sharpness_ratio for the
    quotient at larger sizes).
    """
    if n_lo < 1 or n_hi < 2 * n_lo:
        raise ValueError("need 1 <= n_lo and n_hi >= 2 n_lo")
    total = n_hi * n_hi + n_hi
    if total + 1 > _FAMILY_COEFF_CAP:
        raise ValueError(
            f"{total} coefficients exceed the materialization cap; "
            "use sharpness_ratio instead"
        )
    n = np.arange(0, total + 1, dtype=float)
    g = np.zeros(total + 1)
    g[n_lo:] = _family_profile(n[n_lo:], n_hi)
    asq = factor_sq_table(lam, total)
    asq[0] = 1.0
    with np.errstate(invalid="ignore", divide="ignore"):
        coeffs = g / np.sqrt(asq * n * (n + 2.0 * lam))
    coeffs[0] = 0.0
    return ZonalCoeffs(GegenbauerParam(lam), coeffs)


def sharpness_ratio(lam: float, n_lo: int, n_hi: int, chunk: int = 1 << 20) -> float:
    """||f||^2 / J(f) for the sharpness family, streamed in chunks.

    The energy is accumulated in the telescoped form
        J = (1/2)(g_{n_lo}^2 + sum (g_n - g_{n+1})^2) - sum g_n^2 e_n/(1+e_n)
    (e_n = factor(n)^2 - 1), which avoids the massive cancellation of the
    naive diagonal-minus-cross difference.  Approaches the optimal constant
    from below as n_hi grows (at a 1/log rate); diverges for lam = 1/2.
    """
    if n_lo < 1 or n_hi < 2 * n_lo:
        raise ValueError("need 1 <= n_lo and n_hi >= 2 n_lo")
    chunk = max(int(chunk), 8)
    total = n_hi * n_hi + n_hi
    from .certify import factor_sq_excess_table

    norm_sq = 0.0
    energy = 0.0
    prev_g = None  # profile at the previous index, None before the support
    log_carry: dict[int, float] = {}  # parity -> log(1+e) at its last index
    for start in range(n_lo, total + 1, chunk):
        stop = min(start + chunk - 1, total)
        n = np.arange(start, stop + 1, dtype=float)
        g = _family_profile(n, n_hi)
        if not log_carry:
            e = factor_sq_excess_table(lam, stop)[start:]
            loge = np.log1p(e)
        else:
            # continue log(1+e) chunk-locally: same-parity cumulative sums of
            # the one-step interpolant log-ratios at x = (n-2)/2
            x = 0.5 * (n - 2.0)
            dlog = np.log1p(
                lam * (lam - 1.0) / ((x + lam) * (2.0 * x + 1.0) * (2.0 * x + lam + 2.0))
            )
            loge = np.empty(len(n))
            ints = n.astype(np.int64)
            for p in (0, 1):
                mask = (ints % 2) == p
                if mask.any():
                    loge[mask] = log_carry[p] + np.cumsum(dlog[mask])
            e = np.expm1(loge)
        g_sq = g * g
        norm_sq += float(np.sum(g_sq / ((1.0 + e) * n * (n + 2.0 * lam))))
        energy -= float(np.sum(g_sq * (e / (1.0 + e))))
        if prev_g is None:
            energy += 0.5 * float(g_sq[0])  # boundary term at the support start
        else:
            energy += 0.5 * (prev_g - float(g[0])) ** 2
        d = np.diff(g)
        energy += 0.5 * float(np.dot(d, d))
        prev_g = float(g[-1])
        if len(n) >= 2:
            log_carry = {int(n[-1]) % 2: float(loge[-1]), int(n[-2]) % 2: float(loge[-2])}
        else:
            log_carry[int(n[-1]) % 2] = float(loge[-1])
    # profile ends at zero, so no closing boundary term
    return norm_sq / energy


# ---------------------------------------------------------------------------
# discrete Hardy margins
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HardyMargins:
    """RHS - LHS of the two discrete inequalities; both must be >= 0."""

    adjacent: float  # sum (1 - 1/(8n^2)) a_n^2  -  sum |a_n a_{n+1}|
    hardy_p2: float  # 4 sum (a_n - a_{n-1})^2  -  sum a_n^2/n^2


def hardy_check(a) -> HardyMargins:
    """Margins of the adjacent-product inequality
    sum |a_n a_{n+1}| <= sum (1 - 1/(8 n^2)) a_n^2 and of the p = 2 Hardy
    inequality it derives from (a is a_1, a_2, ..., extended by zero)."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or len(a) == 0:
        raise ValueError("need a nonempty 1-d sequence")
    n = np.arange(1, len(a) + 1, dtype=float)
    lhs = float(np.sum(np.abs(a[:-1] * a[1:])))
    rhs = float(np.sum((1.0 - 1.0 / (8.0 * n * n)) * a * a))
    diff = np.diff(np.concatenate([[0.0], a, [0.0]]))
    hardy = 4.0 * float(np.sum(diff * diff)) - float(np.sum(a * a / (n * n)))
    return HardyMargins(adjacent=rhs - lhs, hardy_p2=hardy)


# ---------------------------------------------------------------------------
# counterexample families
# ---------------------------------------------------------------------------


def circle_counterexample(eps_list) -> list[dict]:
    """The circle family 1 + eps sin(phi), which drives the moment-form
    product (1 - |tau|) ||grad f||^2 / |tau| to zero as eps -> 0, defeating
    the withdrawn claim that it is bounded below.

    Built and evaluated through the d = 2 coefficient machinery; R/eps
    approaches 1/2.
    """
    rows = []
    for eps in eps_list:
        eps = float(eps)
        if not 0.0 < eps < 1.0:
            raise ValueError("eps must lie in (0, 1)")
        c = SphereCoeffs(
            2, 1, {(0, 0): [1.0], (1, 0): [eps / math.sqrt(2.0)]}
        )
        f = c.normalized()
        tau = moment_vector(f)
        tau_norm = float(np.linalg.norm(tau))
        grad = gradient_norm_sq(f)
        ratio = (1.0 - tau_norm) * grad / tau_norm
        rows.append(
            {
                "eps": eps,
                "tau": tau,
                "tau_norm": tau_norm,
                "grad_sq": grad,
                "moment_product": ratio,
                "moment_product_over_eps": ratio / eps,
                "weak_product": (1.0 - tau_norm**2) * grad,
                "weak_rhs": 0.25 * tau_norm**2,  # ((d-1)/2)^2 at d = 2
            }
        )
    return rows


def _exact_h_table(lam_q: Fraction, nmax: int, chebyshev: bool) -> list[Fraction]:
    h = [Fraction(1)]
    for k in range(nmax):
        if chebyshev:
            h.append(Fraction(1, 2))
        else:
            h.append(h[-1] * (2 * lam_q + k) * (k + lam_q) / ((k + 1 + lam_q) * (k + 1)))
    return h


def _monomial_in_basis(k: int, lam_q: Fraction, chebyshev: bool) -> list[Fraction]:
    """Exact coefficients u with t^k = sum u_m C_m (T_m when chebyshev)."""
    u = [Fraction(1)]
    for _ in range(k):
        new = [Fraction(0)] * (len(u) + 1)
        for m, c in enumerate(u):
            if c == 0:
                continue
            if chebyshev:
                if m == 0:
                    new[1] += c
                else:
                    new[m + 1] += c / 2
                    new[m - 1] += c / 2
            else:
                up = Fraction(m + 1, 1) / (2 * (m + lam_q))
                new[m + 1] += c * up
                if m >= 1:
                    down = (m + 2 * lam_q - 1) / (2 * (m + lam_q))
                    new[m - 1] += c * down
        u = new
    return u


def zero_moment_family(d: int, n: int, k: int) -> dict:
    """The zonal family Y + Q with Y the degree-n zonal harmonic and
    Q = x1^k, k <= n-2: its moment vector vanishes identically, so the
    weak inequality degenerates to 0 >= 0 while the localization product
    keeps its positive lower bound.

    All arithmetic is exact (Fractions); returns the raw-basis coefficients,
    the exact first moment (always 0), the exact mean, and the exact squared
    norm.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if not (n >= 3 and 1 <= k <= n - 2):
        raise ValueError("need n >= 3 and 1 <= k <= n-2")
    lam_q = Fraction(d - 2, 2)
    chebyshev = lam_q == 0
    u = _monomial_in_basis(k, lam_q, chebyshev)
    u += [Fraction(0)] * (n + 1 - len(u))
    u[n] += 1  # the zonal harmonic contribution
    h = _exact_h_table(lam_q, n + 1, chebyshev)
    # c_lam int t C_m C_{m+1} w: (m+1) h_{m+1} / (2 (m+lam)); Chebyshev:
    # h_{m+1}/2 for m >= 1 and 1/2 for m = 0.
    tau = Fraction(0)
    for m in range(n):
        if u[m] == 0 or u[m + 1] == 0:
            continue
        if chebyshev:
            w = Fraction(1, 2) if m == 0 else h[m + 1] / 2
        else:
            w = (m + 1) * h[m + 1] / (2 * (m + lam_q))
        tau += 2 * u[m] * u[m + 1] * w
    norm_sq = sum(u[m] * u[m] * h[m] for m in range(n + 1))
    return {
        "dim": d,
        "degree": n,
        "monomial_power": k,
        "raw_coeffs": u,
        "tau_first": tau,
        "mean": u[0],
        "norm_sq": norm_sq,
    }
