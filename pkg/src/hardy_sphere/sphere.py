"""Spherical-harmonic coefficient algebra on S^(d-1).

Functions are represented by coefficients against an orthonormal basis whose
elements are indexed (n, k, j): degree n, a Gegenbauer factor in the first
coordinate of order k, and a lower-dimensional harmonic Y_j of degree n-k.
In spherical coordinates x = (cos th, xi sin th),

    P_{j,k}^n(x) = C_k^{n-k+lam}(cos th) (sin th)^(n-k) Y_j^{n-k}(xi),

with lam = (d-2)/2.  The basis diagonalizes multiplication by x1 up to
nearest-neighbour coupling, which is what every identity here exploits.

d = 2 fits the same scheme (k = n is the cos channel, k = n-1 the sin
channel over the two-point sphere S^0), so the circle needs no special
casing in the coefficient algebra.

Pointwise evaluation and product quadrature are provided for d <= 4 only;
coefficient-space operations work for every d >= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import backend
from .gegenbauer import (
    GegenbauerParam,
    ZonalCoeffs,
    gauss_rule,
    gegenbauer_norm,
    weight_norm_const,
)

__all__ = [
    "harmonic_dim",
    "basis_norm",
    "basis_labels",
    "eval_basis",
    "coupling",
    "zonal_coupling",
    "zonal_coupling_sq",
    "recurrence_up",
    "recurrence_down",
    "SphereCoeffs",
    "SpectralMultiplier",
    "apply_multiplier",
    "gradient_norm_sq",
    "x1_bilinear_form",
    "x1_form_with_mean",
    "sphere_quadrature",
    "sphere_synthesize",
    "basis_matrix",
]

_POINTWISE_MAX_DIM = 4


def _a(m: int, d: int) -> int:
    """dim of degree-m spherical harmonics on S^(d-1), incl. the d=1 base."""
    if m < 0:
        return 0
    if d == 1:
        return 1 if m <= 1 else 0
    if m == 0:
        return 1
    if m == 1:
        return d
    return math.comb(m + d - 1, d - 1) - math.comb(m + d - 3, d - 1)


def harmonic_dim(n: int, d: int) -> int:
    """Dimension a_n^d of the space of degree-n spherical harmonics.

    d = 2 uses the circle convention a_0 = 1, a_n = 2.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _a(n, d)


def basis_norm(n: int, k: int, lam: float) -> float:
    """Squared norm H_k^n of the raw basis element P_{j,k}^n.

    H_k^n = (c_lam / c_mu) h_k^mu with mu = n-k+lam: the weight picked up by
    (sin th)^(2(n-k)) re-normalizes to the order-mu measure, so the plain
    h_k^mu needs the ratio of weight constants.  Verified against explicit
    product quadrature.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    mu = n - k + lam
    h = gegenbauer_norm(k, GegenbauerParam(mu))
    if mu == lam:
        return float(h)
    return weight_norm_const(lam) / weight_norm_const(mu) * float(h)


def coupling(n: int, k: int, lam: float) -> float:
    """Nearest-neighbour coupling gamma_k^n of multiplication by x1:

        (1/om_d) int x1 f g dsig couples (n,k,j) with (n+1,k+1,j) at weight
        gamma_k^n = sqrt((2n-k+2 lam)(k+1) / ((n+lam)(n+lam+1))).

    Well defined for n = k = 0 (value sqrt(2/(lam+1))) including lam = 0.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if n == 0:
        return math.sqrt(2.0 / (lam + 1.0))
    return math.sqrt((2 * n - k + 2 * lam) * (k + 1) / ((n + lam) * (n + lam + 1)))


def zonal_coupling(n: int, lam: float) -> float:
    """gamma_n^n, the zonal (k = n) coupling weight."""
    return coupling(n, n, lam)


def zonal_coupling_sq(n: int, lam, exact: bool = False):
    """(gamma_n^n)^2 = 1 - lam(lam-1)/((n+lam)(n+lam+1)); Fraction if exact."""
    if exact:
        lam = Fraction(lam)
        if n == 0:
            return 2 / (lam + 1)
        return 1 - lam * (lam - 1) / ((n + lam) * (n + lam + 1))
    if n == 0:
        return 2.0 / (lam + 1.0)
    return 1.0 - lam * (lam - 1.0) / ((n + lam) * (n + lam + 1.0))


def recurrence_up(n: int, k: int, lam: float) -> float:
    """A_k^n = (k+1)/(2(n+lam)): weight of P_{j,k+1}^{n+1} in x1 P_{j,k}^n."""
    return (k + 1) / (2.0 * (n + lam))


def recurrence_down(n: int, k: int, lam: float) -> float:
    """B_k^n = (2n-k+2 lam-1)/(2(n+lam)): weight of P_{j,k-1}^{n-1}."""
    return (2 * n - k + 2 * lam - 1) / (2.0 * (n + lam))


@dataclass(frozen=True)
class SphereCoeffs:
    """Orthonormal-basis coefficients of a function on S^(d-1).

    blocks[(n, k)] is the vector over j = 1..a_{n-k}^{d-1}; Parseval gives
    ||f||_2^2 = sum of squares over all blocks.  Degrees above nmax are zero.
    """

    dim: int
    nmax: int
    blocks: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        clean = {}
        for (n, k), v in self.blocks.items():
            if not 0 <= k <= n <= self.nmax:
                raise ValueError(f"bad block index (n={n}, k={k})")
            v = np.atleast_1d(np.asarray(v, dtype=float))
            want = _a(n - k, self.dim - 1)
            if len(v) != want:
                raise ValueError(
                    f"block (n={n}, k={k}) must have {want} entries, got {len(v)}"
                )
            if want:
                clean[(n, k)] = v
        object.__setattr__(self, "blocks", clean)

    @property
    def lam(self) -> float:
        return (self.dim - 2) / 2.0

    def block(self, n: int, k: int) -> np.ndarray:
        v = self.blocks.get((n, k))
        if v is None:
            return np.zeros(_a(n - k, self.dim - 1))
        return v

    @property
    def norm_sq(self) -> float:
        return float(sum(np.dot(v, v) for v in self.blocks.values()))

    def degree_norm_sq(self, n: int) -> float:
        return float(
            sum(np.dot(v, v) for (nn, _), v in self.blocks.items() if nn == n)
        )

    @property
    def mean_is_zero(self) -> bool:
        v = self.blocks.get((0, 0))
        mean = 0.0 if v is None else float(v[0])
        return abs(mean) <= 1e-13 * max(1.0, math.sqrt(self.norm_sq))

    def scaled(self, factor: float) -> "SphereCoeffs":
        return SphereCoeffs(
            self.dim, self.nmax, {key: factor * v for key, v in self.blocks.items()}
        )

    def normalized(self) -> "SphereCoeffs":
        s = math.sqrt(self.norm_sq)
        if s == 0.0:
            raise ValueError("cannot normalize the zero function")
        return self.scaled(1.0 / s)

    @classmethod
    def random_band(
        cls,
        dim: int,
        nmax: int,
        rng: np.random.Generator,
        zero_mean: bool = True,
    ) -> "SphereCoeffs":
        blocks = {}
        for n in range(1 if zero_mean else 0, nmax + 1):
            for k in range(n + 1):
                sz = _a(n - k, dim - 1)
                if sz:
                    blocks[(n, k)] = rng.standard_normal(sz)
        return cls(dim, nmax, blocks)


def basis_labels(d: int, nmax: int) -> list[tuple[int, int, int]]:
    """All (n, k, j) labels up to degree nmax, j 1-based."""
    out = []
    for n in range(nmax + 1):
        for k in range(n + 1):
            for j in range(1, _a(n - k, d - 1) + 1):
                out.append((n, k, j))
    return out


def _harmonic_labels(dim: int, m: int) -> list[tuple[int, int]]:
    """(k', j') pairs enumerating the degree-m orthonormal basis on the
    sphere with ``dim`` ambient coordinates."""
    return [
        (kp, jp)
        for kp in range(m + 1)
        for jp in range(1, _a(m - kp, dim - 1) + 1)
    ]


def _eval_harmonic(dim: int, m: int, j: int, xi: np.ndarray) -> np.ndarray:
    """Orthonormal degree-m harmonic number j on the sphere in R^dim."""
    if dim == 1:
        # S^0 = {-1, +1}: the constant and the coordinate itself.
        if m == 0:
            return np.ones(xi.shape[0])
        return xi[:, 0].copy()
    if dim == 2:
        if m == 0:
            return np.ones(xi.shape[0])
        phi = np.arctan2(xi[:, 1], xi[:, 0])
        # ascending k': j=1 is the sin channel (k'=m-1), j=2 the cos (k'=m)
        if j == 1:
            return math.sqrt(2.0) * np.sin(m * phi)
        return math.sqrt(2.0) * np.cos(m * phi)
    kp, jp = _harmonic_labels(dim, m)[j - 1]
    lam = (dim - 2) / 2.0
    raw = _eval_raw_basis(dim, m, kp, jp, xi)
    return raw / math.sqrt(basis_norm(m, kp, lam))


def _eval_raw_basis(d: int, n: int, k: int, j: int, x: np.ndarray) -> np.ndarray:
    """Unnormalized P_{j,k}^n on S^(d-1) at points x (npts, d)."""
    lam = (d - 2) / 2.0
    m = n - k
    t = np.clip(x[:, 0], -1.0, 1.0)
    mu = m + lam
    cval = backend.gegenbauer_eval(k, mu, t)
    if m == 0:
        return cval
    sin_th = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    vals = cval * sin_th**m
    safe = sin_th > 1e-15
    xi = np.zeros((x.shape[0], d - 1))
    xi[safe] = x[safe, 1:] / sin_th[safe, None]
    xi[~safe, 0] = 1.0
    yv = _eval_harmonic(d - 1, m, j, xi)
    return vals * yv


def eval_basis(n: int, k: int, j: int, x, d: int) -> np.ndarray:
    """Orthonormal basis element (n, k, j) at sphere points x, d <= 4.

    x has shape (npts, d) (a single point may be passed as a flat vector);
    points must satisfy |x| = 1 within 1e-12.
    """
    if d < 2 or d > _POINTWISE_MAX_DIM:
        raise ValueError(f"pointwise evaluation supports 2 <= d <= {_POINTWISE_MAX_DIM}")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if not 1 <= j <= _a(n - k, d - 1):
        raise ValueError(f"j out of range for (n={n}, k={k})")
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    if pts.shape[1] != d:
        raise ValueError(f"points must have {d} coordinates")
    r = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(r - 1.0) > 1e-12):
        raise ValueError("points must lie on the unit sphere (within 1e-12)")
    lam = (d - 2) / 2.0
    vals = _eval_raw_basis(d, n, k, j, pts) / math.sqrt(basis_norm(n, k, lam))
    return vals if np.asarray(x).ndim > 1 else float(vals[0])


def sphere_quadrature(d: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Product rule (points, weights) exact for spherical polynomials of the
    given total degree, against the normalized measure dsig/om_d.

    Recursive Gauss rule in cos(theta) times a rule on S^(d-2); the circle
    uses order+1 uniform points.
    """
    if d < 2 or d > _POINTWISE_MAX_DIM:
        raise ValueError(f"quadrature supports 2 <= d <= {_POINTWISE_MAX_DIM}")
    if order < 0:
        raise ValueError("order must be nonnegative")
    if d == 2:
        m = order + 1
        phi = 2.0 * np.pi * np.arange(m) / m
        pts = np.column_stack([np.cos(phi), np.sin(phi)])
        return pts, np.full(m, 1.0 / m)
    lam = (d - 2) / 2.0
    rule = gauss_rule(GegenbauerParam(lam), order // 2 + 1)
    sub_pts, sub_w = sphere_quadrature(d - 1, order)
    t = np.repeat(rule.nodes, len(sub_w))
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    xi = np.tile(sub_pts, (len(rule.nodes), 1))
    pts = np.column_stack([t, s[:, None] * xi])
    w = np.repeat(rule.weights, len(sub_w)) * np.tile(sub_w, len(rule.nodes))
    return pts, w


def basis_matrix(d: int, nmax: int, points: np.ndarray):
    """(labels, matrix) with matrix[i] = orthonormal basis element labels[i]
    evaluated at all points.  Used by cross-validation and moment code."""
    labels = basis_labels(d, nmax)
    out = np.empty((len(labels), points.shape[0]))
    for i, (n, k, j) in enumerate(labels):
        lam = (d - 2) / 2.0
        out[i] = _eval_raw_basis(d, n, k, j, points) / math.sqrt(basis_norm(n, k, lam))
    return labels, out


def sphere_synthesize(c: SphereCoeffs, points: np.ndarray) -> np.ndarray:
    """Pointwise values of the coefficient function, d <= 4."""
    if c.dim > _POINTWISE_MAX_DIM:
        raise ValueError("pointwise synthesis supports d <= 4 only")
    vals = np.zeros(points.shape[0])
    lam = c.lam
    for (n, k), v in c.blocks.items():
        for j in range(1, len(v) + 1):
            if v[j - 1] != 0.0:
                vals += v[j - 1] * _eval_raw_basis(c.dim, n, k, j, points) / math.sqrt(
                    basis_norm(n, k, lam)
                )
    return vals


@dataclass(frozen=True)
class SpectralMultiplier:
    """Diagonal action (n(n+2 lam))^exponent on degree-n blocks.

    The n = 0 block is always annihilated; a negative exponent additionally
    requires zero-mean input.
    """

    exponent: float
    lam: float

    def factor(self, n: int) -> float:
        if n == 0:
            return 0.0
        return (n * (n + 2.0 * self.lam)) ** self.exponent


def _require_lam_match(c_lam: float, m: SpectralMultiplier) -> None:
    if abs(c_lam - m.lam) > 1e-12:
        raise ValueError(f"multiplier lam={m.lam} does not match coefficients lam={c_lam}")


def apply_multiplier(c, m: SpectralMultiplier):
    """Blockwise (n(n+2 lam))^r; domain error on negative power of a mean."""
    if isinstance(c, ZonalCoeffs):
        _require_lam_match(c.param.lam, m)
        if m.exponent < 0 and not c.mean_is_zero:
            raise ValueError("negative spectral power requires zero-mean input")
        out = c.coeffs.copy()
        out[0] = 0.0
        for n in range(1, len(out)):
            out[n] *= m.factor(n)
        return ZonalCoeffs(c.param, out)
    if isinstance(c, SphereCoeffs):
        _require_lam_match(c.lam, m)
        if m.exponent < 0 and not c.mean_is_zero:
            raise ValueError("negative spectral power requires zero-mean input")
        blocks = {
            (n, k): m.factor(n) * v for (n, k), v in c.blocks.items() if n > 0
        }
        return SphereCoeffs(c.dim, c.nmax, blocks)
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


def gradient_norm_sq(c) -> float:
    """||grad f||_2^2 = sum_n n(n+2 lam) ||proj_n f||^2 (tangential gradient)."""
    if isinstance(c, ZonalCoeffs):
        lam = c.param.lam
        n = np.arange(len(c.coeffs), dtype=float)
        return float(np.sum(n * (n + 2 * lam) * c.coeffs**2))
    if isinstance(c, SphereCoeffs):
        lam = c.lam
        return float(
            sum(n * (n + 2 * lam) * np.dot(v, v) for (n, _), v in c.blocks.items())
        )
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


def _zonal_x1(a: np.ndarray, b: np.ndarray, lam: float, from_n: int) -> float:
    nmax = min(len(a), len(b)) - 1
    total = 0.0
    for n in range(from_n, nmax + 1):
        g = zonal_coupling(n, lam) if n > 0 else coupling(0, 0, lam)
        lo = a[n] * (b[n + 1] if n + 1 < len(b) else 0.0)
        hi = b[n] * (a[n + 1] if n + 1 < len(a) else 0.0)
        total += g * 0.5 * (lo + hi)
    return total


def _sphere_x1(a: SphereCoeffs, b: SphereCoeffs, from_n: int) -> float:
    lam = a.lam
    total = 0.0
    for n in range(from_n, max(a.nmax, b.nmax) + 1):
        for k in range(n + 1):
            va, vb = a.block(n, k), b.block(n, k)
            ua, ub = a.block(n + 1, k + 1), b.block(n + 1, k + 1)
            if not len(va) or not len(ua):
                continue
            g = coupling(n, k, lam)
            total += g * 0.5 * (float(np.dot(va, ub)) + float(np.dot(vb, ua)))
    return total


def x1_bilinear_form(a, b) -> float:
    """(1/om_d) int x1 f g dsig in coefficient space (zero-mean inputs).

    Zonal pair: sum_n gamma_n^n (a_n b_{n+1} + b_n a_{n+1})/2.  Sphere pair:
    the same with gamma_k^n across all (k, j) channels.  Raises on nonzero
    mean, where the n = 0 cross term the formula omits would matter.
    """
    if isinstance(a, ZonalCoeffs) and isinstance(b, ZonalCoeffs):
        if abs(a.param.lam - b.param.lam) > 1e-12:
            raise ValueError("operands must share the weight parameter")
        if not (a.mean_is_zero and b.mean_is_zero):
            raise ValueError("x1 form requires zero-mean input")
        return _zonal_x1(a.coeffs, b.coeffs, a.param.lam, 1)
    if isinstance(a, SphereCoeffs) and isinstance(b, SphereCoeffs):
        if a.dim != b.dim:
            raise ValueError("operands must share the sphere dimension")
        if not (a.mean_is_zero and b.mean_is_zero):
            raise ValueError("x1 form requires zero-mean input")
        return _sphere_x1(a, b, 1)
    raise TypeError("operands must both be ZonalCoeffs or both SphereCoeffs")


def x1_form_with_mean(c) -> float:
    """(1/om_d) int x1 |f|^2 for arbitrary mean: includes the n = 0 term."""
    if isinstance(c, ZonalCoeffs):
        return _zonal_x1(c.coeffs, c.coeffs, c.param.lam, 0)
    if isinstance(c, SphereCoeffs):
        return _sphere_x1(c, c, 0)
    raise TypeError(f"unsupported coefficient type {type(c)!r}")
