"""Sharp-constant certification for the zonal Hardy-Rellich inequality.

The optimal constant of

    ||f||^2 <= C * c_lam int (1-t) |(-D_lam)^(1/2) f|^2 w_lam dt

over zero-mean f is certified from two sides:

* mode bounds: the adjacent-mode coupling gamma_n^n factors as
  factor(n) * factor(n+1), and the discrete Hardy inequality turns the
  energy form into a diagonal bound with per-mode constants
  mode_bound(n) = (1 - factor(n)^2 (1 - 1/(8 n^2))) n (n + 2 lam),
  whose limit is (2 lam - 1)^2 / 8.  If every mode bound from some index on
  sits at or above the limit, C = 8/(2 lam - 1)^2 is certified on that
  restricted class.

* Rayleigh quotients: truncating to modes n0 < n <= N gives a symmetric
  tridiagonal pencil whose minimal generalized eigenvalue mu_N bounds the
  best constant on the truncated class by 1/mu_N, increasing in N.

lam = 1/2 (the two-sphere) is the degenerate case: the limit is 0 and the
certified constant diverges, so no finite constant exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import backend
from .sphere import zonal_coupling_sq

__all__ = [
    "factor_sq",
    "factor",
    "factor_sq_table",
    "factor_sq_excess_table",
    "mode_bound",
    "mode_bound_limit",
    "mode_bound_table",
    "factor_sq_interp",
    "bound_interp",
    "tail_poly",
    "tail_poly_grouped",
    "third_difference",
    "third_difference_prefactor",
    "direct_mode_bound",
    "direct_floor",
    "tail_window",
    "stable_tail_index",
    "min_mode_bound",
    "hardy_rellich_constant",
    "rayleigh_certify",
    "scan_lambda0",
    "sequence_table",
    "SequenceTable",
    "CertificateReport",
    "Lambda0Scan",
    "TailNotCertifiedError",
]


class TailNotCertifiedError(RuntimeError):
    """The scanned window could not certify the decreasing tail."""


# ---------------------------------------------------------------------------
# factor sequence (the factorization gamma_n^n = factor(n) factor(n+1))
# ---------------------------------------------------------------------------


def _require_rational(lam) -> Fraction:
    q = Fraction(lam) if not isinstance(lam, float) else Fraction(lam).limit_denominator(10**9)
    if float(q) != float(lam):
        raise ValueError("exact mode requires a rational parameter")
    return q


def _factor_sq_base_exact(lam_q: Fraction) -> tuple[Fraction, Fraction]:
    """Exact (factor(1)^2, factor(2)^2) for integer lam >= 0."""
    if lam_q.denominator != 1 or lam_q < 0:
        raise ValueError("exact factor values require an integer parameter >= 0")
    lam = int(lam_q)
    # factor(1)^2 = lam! / ((lam+1) prod_{i<lam} (i+1/2))
    p = Fraction(1)
    for i in range(lam):
        p *= Fraction(2 * i + 1, 2)
    a1 = Fraction(math.factorial(lam)) / ((lam + 1) * p)
    # factor(2)^2 = 2 prod_{i<lam} (3/2+i) / ((lam+2) lam!)
    q = Fraction(1)
    for i in range(lam):
        q *= Fraction(2 * i + 3, 2)
    a2 = Fraction(2) * q / ((lam + 2) * math.factorial(lam))
    return a1, a2


def _ratio_exact(m: int, lam_q: Fraction) -> Fraction:
    """factor(m)^2 / factor(m-2)^2 at x = (m-2)/2."""
    x = Fraction(m - 2, 2)
    return 1 + lam_q * (lam_q - 1) / ((x + lam_q) * (2 * x + 1) * (2 * x + lam_q + 2))


def factor_sq(n: int, lam, exact: bool = False, dps: int | None = None):
    """Squared factorization weight factor(n)^2.

    These are the Gamma-ratio quantities whose adjacent products reproduce
    the zonal coupling: zonal_coupling(n)^2 = factor(n)^2 factor(n+1)^2.
    ``exact`` (integer lam) returns a Fraction; ``dps`` computes with mpmath
    at that precision.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    if exact:
        lam_q = _require_rational(lam)
        a1, a2 = _factor_sq_base_exact(lam_q)
        val = a1 if n % 2 else a2
        start = 1 if n % 2 else 2
        for m in range(start + 2, n + 1, 2):
            val *= _ratio_exact(m, lam_q)
        return val
    if dps is not None:
        with mp.workdps(dps):
            lam_mp = mp.mpf(lam)
            if n % 2:
                m = (n - 1) // 2
                v = (
                    2
                    * mp.gamma(m + mp.mpf(3) / 2)
                    * mp.gamma(m + 1 + lam_mp)
                    / ((2 * m + lam_mp + 1) * mp.gamma(m + 1) * mp.gamma(m + lam_mp + mp.mpf(1) / 2))
                )
            else:
                m = n // 2
                v = (
                    2
                    * mp.gamma(m + 1)
                    * mp.gamma(m + lam_mp + mp.mpf(1) / 2)
                    / ((2 * m + lam_mp) * mp.gamma(m + mp.mpf(1) / 2) * mp.gamma(m + lam_mp))
                )
            return v
    return 1.0 + float(factor_sq_excess_table(lam, n)[n])


def factor(n: int, lam: float) -> float:
    """factor(n) itself (positive square root)."""
    return math.sqrt(factor_sq(n, lam))


def _excess_base(lam: float) -> tuple[float, float]:
    """(factor(1)^2 - 1, factor(2)^2 - 1), absolutely accurate.

    Computed once per table at 30 digits: the downstream mode bounds multiply
    the excess by n^2, so float64 rounding here would be amplified.
    """
    with mp.workdps(30):
        lm = mp.mpf(lam)
        h = mp.mpf(1) / 2
        e1 = 2 * mp.gamma(1 + h) * mp.gamma(1 + lm) / ((lm + 1) * mp.gamma(lm + h)) - 1
        e2 = 2 * mp.gamma(lm + 1 + h) / ((2 + lm) * mp.gamma(1 + h) * mp.gamma(1 + lm)) - 1
        return float(e1), float(e2)


def factor_sq_excess_table(lam: float, nmax: int) -> np.ndarray:
    """factor(n)^2 - 1 for n = 1..nmax (absolutely accurate; decays ~1/n^2)."""
    e1, e2 = _excess_base(float(lam))
    return backend.factor_sq_excess(float(lam), nmax, e1, e2)


def factor_sq_table(lam: float, nmax: int) -> np.ndarray:
    return 1.0 + factor_sq_excess_table(lam, nmax)


# ---------------------------------------------------------------------------
# mode bounds
# ---------------------------------------------------------------------------


def mode_bound(n: int, lam, exact: bool = False, dps: int | None = None):
    """Per-mode certified bound
    (1 - factor(n)^2 (1 - 1/(8 n^2))) n (n + 2 lam).

    Note the sign: the 1/(8 n^2) Hardy gain is *added* back, which is the
    form that reproduces the exact rational anchors (141/128 at lam=2, n=2)
    and the (2 lam - 1)^2/8 limit.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    if exact:
        lam_q = _require_rational(lam)
        a2 = factor_sq(n, lam_q, exact=True)
        return (1 - a2 * (1 - Fraction(1, 8 * n * n))) * n * (n + 2 * lam_q)
    if dps is not None:
        with mp.workdps(dps):
            a2 = factor_sq(n, lam, dps=dps)
            one = mp.mpf(1)
            return (one - a2 * (one - one / (8 * n * n))) * n * (n + 2 * mp.mpf(lam))
    return float(mode_bound_table(lam, n)[n])


def mode_bound_limit(lam, exact: bool = False):
    """Limit (2 lam - 1)^2 / 8 of the mode bounds."""
    if exact:
        lam_q = Fraction(lam)
        return (2 * lam_q - 1) ** 2 / 8
    return (2.0 * lam - 1.0) ** 2 / 8.0


def mode_bound_table(lam: float, nmax: int) -> np.ndarray:
    """mode_bound(1..nmax) as floats (index 0 is nan).

    Computed from the factor excess so the near-cancellation against 1 does
    not lose the 1/n^2 scale.
    """
    e = factor_sq_excess_table(lam, nmax)
    n = np.arange(nmax + 1, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = 1.0 / (8.0 * n * n)
        return (s - e * (1.0 - s)) * n * (n + 2.0 * lam)


# ---------------------------------------------------------------------------
# continuous interpolants and the decreasing-tail certificate
# ---------------------------------------------------------------------------


def factor_sq_interp(x, lam, dps: int | None = None):
    """Continuous interpolant of the squared factors:

        Phi(x) = Gamma(x+1) Gamma(x+1/2+lam) / ((x+lam/2) Gamma(x+1/2) Gamma(x+lam))

    with Phi(n) = factor(2n)^2 and Phi(n+1/2) = factor(2n+1)^2.  Its large-x
    expansion is 1 + (lam - lam^2)/(8 x^2) + O(x^-3) (confirmed numerically;
    this is the coefficient consistent with Phi == 1 at lam = 1 and with the
    mode-bound limit).
    """
    if dps is not None:
        with mp.workdps(dps):
            xm, lm = mp.mpf(x), mp.mpf(lam)
            return (
                mp.gamma(xm + 1)
                * mp.gamma(xm + mp.mpf(1) / 2 + lm)
                / ((xm + lm / 2) * mp.gamma(xm + mp.mpf(1) / 2) * mp.gamma(xm + lm))
            )
    lg = math.lgamma
    return math.exp(
        lg(x + 1.0) + lg(x + 0.5 + lam) - lg(x + 0.5) - lg(x + lam)
    ) / (x + 0.5 * lam)


def bound_interp(x, lam, dps: int | None = None):
    """Continuous interpolant of the mode bounds:

        Psi(x) = (1 - Phi(x) + Phi(x)/(32 x^2)) x (x + lam),

    with mode_bound(2n) = 4 Psi(n) and mode_bound(2n+1) = 4 Psi(n+1/2)."""
    if dps is not None:
        with mp.workdps(dps):
            xm, lm = mp.mpf(x), mp.mpf(lam)
            ph = factor_sq_interp(xm, lm, dps=dps)
            return (1 - ph + ph / (32 * xm * xm)) * xm * (xm + lm)
    ph = factor_sq_interp(x, lam)
    return (1.0 - ph + ph / (32.0 * x * x)) * x * (x + lam)


_TAIL_COEFFS = (
    # coefficient polynomials in lam for x^1..x^6 of the tail sextic
    (-568, 308, 1346, 325, -574, -501),
    (288, 1544, 12, -1120, -908, 192, 32),
    (1080, -388, -1576, -1004, 320, 416),
    (-160, -1264, -784, -128, 768),
    (-512, -384, -256, 384),
    (-128,),
)


def _polyval(coeffs, lam):
    out = 0 * lam
    for c in reversed(coeffs):
        out = out * lam + c
    return out


def tail_poly(x, lam):
    """Sextic controlling the third difference of the bound interpolant.

    Transcribed expanded form.  For lam >= ~0.7 it is negative from
    x = 3 lam^3 on; for smaller lam a short positive window survives past
    3 lam^3 (at lam = 0.6 up to x ~ 0.74), but the decreasing-tail argument
    only consumes values at x + 1, where it is negative throughout.  Works
    with Fractions as well as floats.
    """
    out = -lam * (1 + lam) * (2 + lam) * (4 + lam) * (37 - 77 * lam + 37 * lam * lam)
    xp = 1
    for coeffs in _TAIL_COEFFS:
        xp = xp * x
        out = out + _polyval(coeffs, lam) * xp
    return out


_TAIL_GROUPED = (
    (10, 79, 49, 104, 24, 48),
    (-270, 97, 394, 371, 868, 484, 1248, 288, 576),
    (-72, -386, -3, -530, 518, 1134, 1105, 2604, 1452, 3744, 864, 1728),
    (568, -308, -1346, -1189, -4058, 465, -6360, 6216, 13608, 13260, 31248, 17424, 44928, 10368, 20736),
)


def tail_poly_grouped(x, lam):
    """Same sextic regrouped in powers of (x - 3 lam^3): every term is
    manifestly nonpositive once x >= 3 lam^3 (and lam >= 1)."""
    u = x - 3 * lam**3
    out = -128 * u * x**5
    out = out - 128 * (4 + 3 * lam + 2 * lam * lam) * u * x**4
    out = out - 16 * _polyval(_TAIL_GROUPED[0], lam) * u * x**3
    out = out - 4 * _polyval(_TAIL_GROUPED[1], lam) * u * x**2
    out = out - 4 * _polyval(_TAIL_GROUPED[2], lam) * u * x
    out = out - _polyval(_TAIL_GROUPED[3], lam) * x
    out = out - lam * (1 + lam) * (2 + lam) * (4 + lam) * (37 - 77 * lam + 37 * lam * lam)
    return out


def third_difference(x, lam, dps: int = 50):
    """Psi(x+3) - 3 Psi(x+2) + 3 Psi(x+1) - Psi(x), computed at high
    precision (heavy cancellation)."""
    with mp.workdps(dps):
        return (
            bound_interp(x + 3, lam, dps=dps)
            - 3 * bound_interp(x + 2, lam, dps=dps)
            + 3 * bound_interp(x + 1, lam, dps=dps)
            - bound_interp(x, lam, dps=dps)
        )


def third_difference_prefactor(x, lam, dps: int = 50):
    """Gamma-ratio prefactor P(x) in the identity

        third_difference(x) = 3 lam * tail_poly(x+1) * P(x).

    The 3 lam factor and the x+1 shift are required for the identity to
    hold; both were confirmed exactly at integer lam and numerically
    elsewhere.
    """
    with mp.workdps(dps):
        xm, lm = mp.mpf(x), mp.mpf(lam)
        denom = 128 * (lm + 2 * xm) * (2 + lm + 2 * xm) * (4 + lm + 2 * xm) * (6 + lm + 2 * xm)
        grat = mp.gamma(xm) * mp.gamma(xm + lm + mp.mpf(1) / 2) / (
            mp.gamma(xm + mp.mpf(7) / 2) * mp.gamma(xm + lm + 3)
        )
        return grat / denom


# ---------------------------------------------------------------------------
# the direct (coupling-gap) bound used off the sharp range
# ---------------------------------------------------------------------------


def direct_mode_bound(n: int, lam: float) -> float:
    """(1 - zonal_coupling(n)) n (n + 2 lam): the bound available without
    the discrete Hardy step.  Zero identically at lam = 1."""
    if n < 1:
        raise ValueError("index must be >= 1")
    g = math.sqrt(zonal_coupling_sq(n, lam))
    return (1.0 - g) * n * (n + 2.0 * lam)


def direct_floor(lam: float) -> float:
    """Uniform floor (1/2) lam(lam-1) x1/(1+sqrt(x1)) of the direct bounds,
    positive when lam(lam-1) > 0; x1 = zonal_coupling(1)^2."""
    x1 = zonal_coupling_sq(1, lam)
    return 0.5 * lam * (lam - 1.0) * x1 / (1.0 + math.sqrt(x1))


# ---------------------------------------------------------------------------
# stable tail index, minima, constants
# ---------------------------------------------------------------------------


def tail_window(lam: float, margin: int = 8) -> int:
    """Scan window for tail certification: ceil(6 lam^3) + margin.

    The decreasing-tail guarantee covers interpolant arguments x >= 3 lam^3,
    i.e. sequence indices beyond ~6 lam^3; below that the bounds can still
    be *increasing toward the limit from below* (they are at lam = 3 up to
    n ~ 55), which a shorter window cannot certify.
    """
    return max(int(math.ceil(6.0 * float(lam) ** 3)) + margin, margin + 2, 10)


def _certify_tail(beta: np.ndarray, window: int, rtol: float) -> None:
    scale = max(1.0, abs(float(beta[window])))
    for n in range(max(1, window - 9), window - 1):
        if float(beta[n + 2] - beta[n]) > rtol * scale:
            raise TailNotCertifiedError(
                f"mode bounds not decreasing at the window end (n={n}); "
                "enlarge the margin"
            )


_EXACT_SCAN_CAP = 64  # exact comparisons near the limit happen at small n


def _below_limit(n: int, beta_f: np.ndarray, lam, limit_f: float, exact: bool, rtol: float) -> bool:
    if exact and n <= _EXACT_SCAN_CAP:
        lam_q = _require_rational(lam)
        return mode_bound(n, lam_q, exact=True) < mode_bound_limit(lam_q, exact=True)
    return float(beta_f[n]) < limit_f - rtol * max(1.0, limit_f)


def stable_tail_index(lam, exact: bool | None = None, margin: int = 8, rtol: float = 1e-12) -> int:
    """Smallest n0 with min over n >= n0 of mode_bound equal to the limit.

    Scans the certification window and certifies the remaining tail by
    checking that both parity subsequences are decreasing at the window end
    (beyond it they decrease to the limit from above).  Comparisons near
    the limit use exact rational arithmetic for integer lam (the dips all
    occur at small n), float64 with relative tolerance ``rtol`` otherwise.
    """
    if exact is None:
        exact = float(lam) == int(float(lam)) and float(lam) >= 0
    window = tail_window(lam, margin)
    beta_f = mode_bound_table(float(lam), window)
    limit_f = mode_bound_limit(float(lam))
    _certify_tail(beta_f, window, rtol)
    worst = 0
    for n in range(1, window + 1):
        if _below_limit(n, beta_f, lam, limit_f, exact, rtol):
            worst = n
    return worst + 1 if worst else 0


def min_mode_bound(lam, exact: bool | None = None, margin: int = 8):
    """Infimum over n >= 1 of the mode bounds (tau_d with lam = (d-2)/2).

    Returns (value, argmin) where argmin is None when the infimum is the
    limit rather than an attained minimum.
    """
    if exact is None:
        exact = float(lam) == int(float(lam)) and float(lam) >= 0
    window = tail_window(lam, margin)
    beta_f = mode_bound_table(float(lam), window)
    _certify_tail(beta_f, window, 1e-12)
    arg = int(np.nanargmin(beta_f[1:])) + 1
    if exact:
        lam_q = _require_rational(lam)
        # confirm the float argmin exactly against its neighbours and limit
        best = mode_bound(arg, lam_q, exact=True)
        for m in range(1, min(window, _EXACT_SCAN_CAP) + 1):
            cand = mode_bound(m, lam_q, exact=True)
            if cand < best:
                best, arg = cand, m
        if best < mode_bound_limit(lam_q, exact=True):
            return best, arg
        return mode_bound_limit(lam_q, exact=True), None
    best = float(beta_f[arg])
    limit_f = mode_bound_limit(float(lam))
    if best < limit_f - 1e-12 * max(1.0, limit_f):
        return best, arg
    return limit_f, None


def hardy_rellich_constant(lam=None, d=None, exact: bool = False):
    """Optimal constant 8/(2 lam - 1)^2; infinite at lam = 1/2 (d = 3),
    where no finite constant exists."""
    if (lam is None) == (d is None):
        raise ValueError("give exactly one of lam or d")
    if d is not None:
        if d < 2:
            raise ValueError("dimension must be >= 2")
        lam = Fraction(d - 2, 2) if exact else (d - 2) / 2.0
    if float(lam) == 0.5:
        return math.inf
    if exact:
        lam_q = Fraction(lam)
        return 8 / (2 * lam_q - 1) ** 2
    return 8.0 / (2.0 * float(lam) - 1.0) ** 2


# ---------------------------------------------------------------------------
# Rayleigh certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateReport:
    """Minimal truncated Rayleigh quotients and the implied constants.

    mu[i] is the minimal generalized eigenvalue over modes n0 < n <= sizes[i];
    constants[i] = 1/mu[i] increases toward the optimal constant.  The limit
    is approached only logarithmically, so ``extrapolated_constant`` reports
    the 1/(log N + c)^2 model fitted on the last three sizes (None when the
    model cannot bracket, e.g. for the divergent lam = 1/2 case).
    """

    lam: float
    n0: int
    sizes: tuple
    mu: tuple
    lower_bound: float
    extrapolated_constant: float | None
    log_slope: float
    monotone: bool

    @property
    def constants(self) -> tuple:
        return tuple(1.0 / m for m in self.mu)

    def to_dict(self) -> dict:
        return {
            "lam": self.lam,
            "n0": self.n0,
            "sizes": list(self.sizes),
            "mu": list(self.mu),
            "constants": list(self.constants),
            "limit_lower_bound": self.lower_bound,
            "extrapolated_constant": self.extrapolated_constant,
            "log_slope": self.log_slope,
            "monotone": self.monotone,
        }


def _min_quotient(lam: float, n0: int, size: int, tol: float) -> float:
    n = np.arange(n0 + 1, size + 1, dtype=float)
    t = n * (n + 2.0 * lam)
    if len(t) == 1:
        return float(t[0])
    nn = n[:-1]
    gsq = 1.0 - lam * (lam - 1.0) / ((nn + lam) * (nn + lam + 1.0))
    off_sq = 0.25 * gsq * t[:-1] * t[1:]
    return float(backend.tridiag_min_eig(t, off_sq, 0.0, float(t[0]), tol))


def _extrapolate_mu(sizes, mus) -> float | None:
    """Fit mu(N) = mu_inf + a/(log N + c)^2 through the last three points."""
    if len(sizes) < 3:
        return None
    (l1, l2, l3) = [math.log(s) for s in sizes[-3:]]
    (m1, m2, m3) = mus[-3:]
    if not (m1 > m2 > m3):
        return None

    def gap(m):
        v1 = 1.0 / math.sqrt(m1 - m)
        v2 = 1.0 / math.sqrt(m2 - m)
        v3 = 1.0 / math.sqrt(m3 - m)
        return (v2 - v1) / (l2 - l1) - (v3 - v2) / (l3 - l2)

    lo = m3 - 10.0 * (m1 - m3)
    hi = m3 - 1e-14 * max(1.0, abs(m3))
    glo, ghi = gap(lo), gap(hi)
    if glo * ghi > 0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = gap(mid)
        if glo * gm <= 0:
            hi = mid
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


def rayleigh_certify(lam: float, n0: int, sizes, tol: float = 1e-13) -> CertificateReport:
    """Certify the inequality constant by truncated tridiagonal pencils.

    For each N in sizes, forms diag(n(n+2 lam)) with off-diagonal
    -gamma_n^n sqrt(t_n t_{n+1})/2 over n0 < n <= N and takes the smallest
    eigenvalue by Sturm bisection (absolute tolerance ``tol``).
    """
    sizes = tuple(int(s) for s in sizes)
    if any(s < n0 + 1 for s in sizes):
        raise ValueError("every truncation size must exceed n0")
    if sorted(sizes) != list(sizes):
        raise ValueError("sizes must be ascending")
    from concurrent.futures import ThreadPoolExecutor

    workers = min(backend.worker_count(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            mus = list(pool.map(lambda s: _min_quotient(lam, n0, s, tol), sizes))
    else:
        mus = [_min_quotient(lam, n0, s, tol) for s in sizes]
    monotone = all(mus[i + 1] <= mus[i] + tol for i in range(len(mus) - 1))
    slope = 0.0
    if len(sizes) >= 2:
        ls = np.log(np.asarray(sizes, dtype=float))
        cs = np.log(1.0 / np.asarray(mus))
        slope = float(np.polyfit(ls, cs, 1)[0])
    mu_inf = _extrapolate_mu(sizes, mus)
    return CertificateReport(
        lam=lam,
        n0=n0,
        sizes=sizes,
        mu=tuple(mus),
        lower_bound=mode_bound_limit(lam),
        extrapolated_constant=(1.0 / mu_inf if mu_inf and mu_inf > 0 else None),
        log_slope=slope,
        monotone=monotone,
    )


# ---------------------------------------------------------------------------
# the monotone-certificate boundary in lam
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lambda0Scan:
    estimate: float
    bracket: tuple
    grid: tuple
    predicate: tuple


def monotone_from_start(lam: float, rtol: float = 1e-12) -> bool:
    """True when both parity subsequences of the mode bounds decrease from
    their first index on (which certifies stable_tail_index == 0)."""
    window = tail_window(lam)
    beta = mode_bound_table(lam, window)
    scale = max(1.0, float(np.nanmax(np.abs(beta[1:]))))
    d = beta[3:] - beta[1:-2]
    return bool(np.all(d <= rtol * scale))


def scan_lambda0(grid=None, xtol: float = 1e-4) -> Lambda0Scan:
    """Boundary of the monotone certificate in lam, by bisection.

    Below the boundary the mode bounds decrease to their limit from the
    start (so the sharp constant is certified with no excluded modes); the
    first violation as lam grows is the third/fifth bound pair crossing.
    The raw predicate min_n mode_bound >= limit stays true a bit longer
    (up to ~1.934), so this boundary is the conservative, certificate-based
    one, matching the published estimate 1.8258.
    """
    if grid is None:
        grid = np.linspace(1.5, 2.1, 13)
    grid = np.asarray(grid, dtype=float)
    if grid.min() <= 1.0 or grid.max() >= 2.5:
        raise ValueError("grid must lie inside (1, 2.5)")
    pred = [monotone_from_start(l) for l in grid]
    if not any(pred) or all(pred):
        raise ValueError("grid does not bracket the boundary")
    flips = [i for i in range(len(pred) - 1) if pred[i] != pred[i + 1]]
    if len(flips) != 1 or not pred[0] or pred[-1]:
        raise ValueError("predicate is not monotone on the grid")
    lo, hi = float(grid[flips[0]]), float(grid[flips[0] + 1])
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if monotone_from_start(mid):
            lo = mid
        else:
            hi = mid
    return Lambda0Scan(
        estimate=0.5 * (lo + hi),
        bracket=(lo, hi),
        grid=tuple(float(g) for g in grid),
        predicate=tuple(bool(p) for p in pred),
    )


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceTable:
    """Values of the certification sequences over an index range."""

    lam: float
    rows: list = field(default_factory=list)


def sequence_table(lam, nmax: int, exact: bool = False) -> SequenceTable:
    rows = []
    lam_f = float(lam)
    beta = None if exact else mode_bound_table(lam_f, nmax + 1)
    for n in range(1, nmax + 1):
        if exact:
            lam_q = _require_rational(lam)
            a2 = factor_sq(n, lam_q, exact=True)
            b = mode_bound(n, lam_q, exact=True)
            g2 = zonal_coupling_sq(n, lam_q, exact=True)
        else:
            a2 = float(factor_sq_table(lam_f, n)[n])
            b = float(beta[n])
            g2 = zonal_coupling_sq(n, lam_f)
        rows.append(
            {
                "n": n,
                "factor_sq": a2,
                "mode_bound": b,
                "zonal_coupling_sq": g2,
                "direct_bound": direct_mode_bound(n, lam_f),
            }
        )
    return SequenceTable(lam=lam_f, rows=rows)
