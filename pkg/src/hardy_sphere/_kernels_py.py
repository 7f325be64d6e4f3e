"""Pure-Python/numpy fallback for the hot kernels.

Same call signatures as the compiled extension ``hardy_sphere._kernels``;
``hardy_sphere.backend`` picks whichever is importable.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "gegenbauer_eval",
    "gegenbauer_table",
    "sturm_count",
    "tridiag_min_eig",
    "factor_sq_excess",
]


def gegenbauer_eval(n: int, lam: float, t: np.ndarray) -> np.ndarray:
    """Evaluate C_n^lam at the points t by the three-term recurrence.

    lam == 0 evaluates the Chebyshev polynomial T_n instead (the lam -> 0
    normalization used throughout the package).
    """
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if n == 0:
        return prev
    cur = t.copy() if lam == 0.0 else 2.0 * lam * t
    for k in range(2, n + 1):
        if lam == 0.0:
            prev, cur = cur, 2.0 * t * cur - prev
        else:
            prev, cur = cur, (2.0 * (k - 1 + lam) * t * cur - (k - 2 + 2 * lam) * prev) / k
    return cur


def gegenbauer_table(nmax: int, lam: float, t: np.ndarray) -> np.ndarray:
    """Table of C_0..C_nmax at the points t, shape (nmax+1, t.size)."""
    t = np.asarray(t, dtype=float)
    out = np.empty((nmax + 1, t.size))
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = t if lam == 0.0 else 2.0 * lam * t
    for k in range(2, nmax + 1):
        if lam == 0.0:
            out[k] = 2.0 * t * out[k - 1] - out[k - 2]
        else:
            out[k] = (2.0 * (k - 1 + lam) * t * out[k - 1] - (k - 2 + 2 * lam) * out[k - 2]) / k
    return out


def sturm_count(diag: np.ndarray, off_sq: np.ndarray, sigma: float) -> int:
    """Number of eigenvalues below sigma of the symmetric tridiagonal matrix
    with diagonal ``diag`` and squared off-diagonal ``off_sq``."""
    count = 0
    q = diag[0] - sigma
    if q < 0.0:
        count += 1
    for i in range(1, len(diag)):
        if q == 0.0:
            q = 1e-300
        q = diag[i] - sigma - off_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def tridiag_min_eig(diag: np.ndarray, off_sq: np.ndarray, lo: float, hi: float, tol: float) -> float:
    """Smallest eigenvalue via Sturm-count bisection on [lo, hi]."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off_sq = np.ascontiguousarray(off_sq, dtype=float)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sturm_count(diag, off_sq, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def factor_sq_excess(lam: float, nmax: int, e1: float, e2: float) -> np.ndarray:
    """Table of factor(n)^2 - 1 for n = 1..nmax (index 0 is nan).

    e1, e2 are the exact excesses at n = 1, 2.  Propagation uses the
    one-step ratio of the even/odd interpolant,
        ratio(x) = 1 + lam(lam-1) / ((x+lam)(2x+1)(2x+lam+2)),  x = (n-2)/2,
    applied in excess form e' = e*(1+d) + d so absolute accuracy is kept
    while the excess decays like 1/n^2.
    """
    out = np.full(nmax + 1, np.nan)
    if nmax >= 1:
        out[1] = e1
    if nmax >= 2:
        out[2] = e2
    c = lam * (lam - 1.0)
    for m in range(3, nmax + 1):
        x = 0.5 * (m - 2)
        d = c / ((x + lam) * (2.0 * x + 1.0) * (2.0 * x + lam + 2.0))
        e = out[m - 2]
        out[m] = e * (1.0 + d) + d
    return out
