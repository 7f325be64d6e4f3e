# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Gegenbauer three-term recurrence, Sturm-count
bisection for tridiagonal minimal eigenvalues, and the factor-excess
recurrence.  Mirrors hardy_sphere._kernels_py."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def gegenbauer_eval(int n, double lam, t):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t npts = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = np.ones(npts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = np.empty(npts)
    cdef Py_ssize_t i
    cdef int k
    cdef double a, b, x, p, c
    if n == 0:
        return prev.reshape(np.shape(t))
    for i in range(npts):
        x = tt[i]
        p = 1.0
        c = x if lam == 0.0 else 2.0 * lam * x
        for k in range(2, n + 1):
            if lam == 0.0:
                p, c = c, 2.0 * x * c - p
            else:
                p, c = c, (2.0 * (k - 1 + lam) * x * c - (k - 2 + 2.0 * lam) * p) / k
        cur[i] = c
    return cur.reshape(np.shape(t))


def gegenbauer_table(int nmax, double lam, t):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t npts = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nmax + 1, npts))
    cdef Py_ssize_t i
    cdef int k
    cdef double a, b, x, p, c, nxt
    for i in range(npts):
        x = tt[i]
        out[0, i] = 1.0
        if nmax == 0:
            continue
        p = 1.0
        c = x if lam == 0.0 else 2.0 * lam * x
        out[1, i] = c
        for k in range(2, nmax + 1):
            if lam == 0.0:
                nxt = 2.0 * x * c - p
            else:
                nxt = (2.0 * (k - 1 + lam) * x * c - (k - 2 + 2.0 * lam) * p) / k
            p = c
            c = nxt
            out[k, i] = c
    return out


cdef int _sturm(double[::1] diag, double[::1] off_sq, double sigma) noexcept nogil:
    cdef int count = 0
    cdef Py_ssize_t i, n = diag.shape[0]
    cdef double q = diag[0] - sigma
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = 1e-300
        q = diag[i] - sigma - off_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(diag, off_sq, double sigma):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off_sq, dtype=np.float64)
    return _sturm(d, e, sigma)


def tridiag_min_eig(diag, off_sq, double lo, double hi, double tol):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off_sq, dtype=np.float64)
    cdef double mid
    with nogil:
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _sturm(d, e, mid) >= 1:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


def factor_sq_excess(double lam, int nmax, double e1, double e2):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.full(nmax + 1, np.nan)
    cdef int m
    cdef double x, d, e, c = lam * (lam - 1.0)
    if nmax >= 1:
        out[1] = e1
    if nmax >= 2:
        out[2] = e2
    for m in range(3, nmax + 1):
        x = 0.5 * (m - 2)
        d = c / ((x + lam) * (2.0 * x + 1.0) * (2.0 * x + lam + 2.0))
        e = out[m - 2]
        out[m] = e * (1.0 + d) + d
    return out
