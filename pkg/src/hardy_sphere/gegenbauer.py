"""Gegenbauer (ultraspherical) machinery on [-1, 1].

Everything is normalized: integrals against the weight
w_lam(t) = (1-t^2)^(lam-1/2) carry the constant c_lam = 1/int w_lam, so the
measure has total mass 1 and the orthonormal family is h_n^(-1/2) C_n^lam.

lam = 0 is the Chebyshev limit: C_n is replaced by T_n with squared norm
h_0 = 1, h_n = 1/2 (n >= 1), which is the pointwise limit of the
orthonormalized family as lam -> 0.  All callers see one uniform interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
import scipy.linalg

from . import backend

__all__ = [
    "GegenbauerParam",
    "ZonalCoeffs",
    "QuadratureRule",
    "eval_gegenbauer",
    "gegenbauer_norm",
    "gegenbauer_norm_table",
    "gauss_rule",
    "analyze",
    "synthesize",
    "weight_norm_const",
]


@dataclass(frozen=True)
class GegenbauerParam:
    """Weight parameter lam > -1/2 for (1-t^2)^(lam-1/2) on [-1, 1]."""

    lam: float

    def __post_init__(self) -> None:
        if not (self.lam > -0.5) or not math.isfinite(self.lam):
            raise ValueError(f"weight parameter must be > -1/2, got {self.lam}")

    @property
    def is_chebyshev(self) -> bool:
        return self.lam == 0.0

    @classmethod
    def from_dimension(cls, d: int) -> "GegenbauerParam":
        """Zonal parameter lam = (d-2)/2 of the sphere S^(d-1)."""
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        return cls((d - 2) / 2.0)

    def weight(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return (1.0 - t * t) ** (self.lam - 0.5)

    @property
    def norm_const(self) -> float:
        """c_lam = Gamma(lam+1) / (sqrt(pi) Gamma(lam+1/2))."""
        return weight_norm_const(self.lam)


def weight_norm_const(lam: float) -> float:
    return math.exp(math.lgamma(lam + 1.0) - math.lgamma(lam + 0.5)) / math.sqrt(math.pi)


def eval_gegenbauer(n: int, param: GegenbauerParam, t) :
    """C_n^lam(t) by the three-term recurrence (T_n when lam = 0).

    Stable for degrees up to at least 1e4 in float64.  Accepts scalars or
    arrays; t must lie in [-1, 1].
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-14):
        raise ValueError("evaluation points must lie in [-1, 1]")
    out = backend.gegenbauer_eval(n, param.lam, arr)
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def gegenbauer_norm(n: int, param: GegenbauerParam, exact: bool = False):
    """Squared norm h_n = c_lam int (C_n^lam)^2 w_lam.

    h_n^lam = lam (2 lam)_n / ((n+lam) n!); built multiplicatively from
    h_0 = 1 via h_{k+1}/h_k = (2 lam + k)(k + lam) / ((k+1+lam)(k+1)).
    With ``exact`` and rational lam the value is a Fraction.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lam = param.lam
    if exact:
        lam_q = Fraction(lam).limit_denominator(10**12)
        if float(lam_q) != lam:
            raise ValueError("exact mode requires a rational weight parameter")
        if param.is_chebyshev:
            return Fraction(1) if n == 0 else Fraction(1, 2)
        h = Fraction(1)
        for k in range(n):
            h *= Fraction((2 * lam_q + k) * (k + lam_q), (k + 1 + lam_q) * (k + 1))
        return h
    if param.is_chebyshev:
        return 1.0 if n == 0 else 0.5
    h = 1.0
    for k in range(n):
        h *= (2.0 * lam + k) * (k + lam) / ((k + 1 + lam) * (k + 1))
    return h


def gegenbauer_norm_table(nmax: int, param: GegenbauerParam) -> np.ndarray:
    """h_0..h_nmax as a float array."""
    lam = param.lam
    h = np.empty(nmax + 1)
    h[0] = 1.0
    if param.is_chebyshev:
        h[1:] = 0.5
        return h
    for k in range(nmax):
        h[k + 1] = h[k] * (2.0 * lam + k) * (k + lam) / ((k + 1 + lam) * (k + 1))
    return h


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights integrating the normalized measure c_lam w_lam dt.

    Weights sum to 1; polynomials of degree <= exact_degree are integrated
    exactly.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def integrate(self, f) -> float:
        values = f(self.nodes) if callable(f) else np.asarray(f, dtype=float)
        return float(np.dot(self.weights, values))


def gauss_rule(param: GegenbauerParam, m: int) -> QuadratureRule:
    """m-point Gauss rule for the normalized weight, exact to degree 2m-1.

    Golub-Welsch on the Jacobi matrix of the orthonormal recurrence; the
    off-diagonal entries are b_1 = sqrt(1/(2(lam+1))) and
    b_{n+1} = sqrt((n+1)(n+2 lam) / (4 (n+lam)(n+lam+1))).
    """
    if m < 1:
        raise ValueError("point count must be >= 1")
    lam = param.lam
    if m == 1:
        return QuadratureRule(np.zeros(1), np.ones(1), 1)
    n = np.arange(1, m - 1, dtype=float)
    off = np.empty(m - 1)
    off[0] = math.sqrt(1.0 / (2.0 * (lam + 1.0)))
    off[1:] = np.sqrt((n + 1.0) * (n + 2.0 * lam) / (4.0 * (n + lam) * (n + lam + 1.0)))
    nodes, vecs = scipy.linalg.eigh_tridiagonal(np.zeros(m), off)
    weights = vecs[0] ** 2
    return QuadratureRule(nodes, weights, 2 * m - 1)


@dataclass(frozen=True)
class ZonalCoeffs:
    """Coefficients against the orthonormal family h_n^(-1/2) C_n^lam.

    The represented function is f(t) = sum_n coeffs[n] h_n^(-1/2) C_n^lam(t),
    so Parseval reads c_lam int f^2 w_lam = sum coeffs^2.
    """

    param: GegenbauerParam
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=float)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def norm_sq(self) -> float:
        return float(np.dot(self.coeffs, self.coeffs))

    @property
    def mean_is_zero(self) -> bool:
        return abs(float(self.coeffs[0])) <= 1e-13 * max(1.0, math.sqrt(self.norm_sq))

    def normalized(self) -> "ZonalCoeffs":
        s = math.sqrt(self.norm_sq)
        if s == 0.0:
            raise ValueError("cannot normalize the zero function")
        return ZonalCoeffs(self.param, self.coeffs / s)

    @classmethod
    def unit(cls, param: GegenbauerParam, n: int) -> "ZonalCoeffs":
        c = np.zeros(n + 1)
        c[n] = 1.0
        return cls(param, c)


def analyze(
    f: Callable[[np.ndarray], np.ndarray],
    param: GegenbauerParam,
    nmax: int,
    rule: QuadratureRule | None = None,
    f_degree: int | None = None,
    check: bool = False,
    tol: float = 1e-10,
) -> ZonalCoeffs:
    """Orthonormal coefficients of f up to degree nmax by Gauss quadrature.

    When f is a polynomial, pass ``f_degree`` so the rule is exact for every
    coefficient integral; otherwise a generous default rule is used.  With
    ``check`` the synthesis residual at the nodes is verified against
    ``tol`` (loss-of-orthogonality guard).
    """
    if nmax < 0:
        raise ValueError("max degree must be nonnegative")
    if rule is None:
        deg = f_degree if f_degree is not None else nmax + 32
        m = (nmax + deg) // 2 + 2
        rule = gauss_rule(param, max(m, nmax + 1))
    fv = np.asarray(f(rule.nodes), dtype=float)
    table = backend.gegenbauer_table(nmax, param.lam, rule.nodes)
    h = gegenbauer_norm_table(nmax, param)
    coeffs = (table * (rule.weights * fv)).sum(axis=1) / np.sqrt(h)
    out = ZonalCoeffs(param, coeffs)
    if check:
        resid = float(np.max(np.abs(synthesize(out, rule.nodes) - fv)))
        scale = max(1.0, float(np.max(np.abs(fv))))
        if resid > tol * scale:
            raise ValueError(
                f"analysis round-trip residual {resid:.3e} exceeds tolerance; "
                "increase the rule size or the coefficient cutoff"
            )
    return out


def synthesize(c: ZonalCoeffs, t):
    """Evaluate sum_n coeffs[n] h_n^(-1/2) C_n(t)."""
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    table = backend.gegenbauer_table(c.degree, c.param.lam, arr)
    h = gegenbauer_norm_table(c.degree, c.param)
    vals = (c.coeffs / np.sqrt(h)) @ table
    return float(vals[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else vals
