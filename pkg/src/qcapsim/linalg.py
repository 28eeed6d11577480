"""Small dense linear algebra implemented in-repo.

Two routines back the physics modules:

* :func:`symmetric_eigenvalues` - eigenvalues of a real symmetric matrix by
  Householder tridiagonalization followed by implicit-shift QL iteration.
  Matrix sizes here stay <= a few hundred (Fock truncations), so a dense
  textbook solver is both adequate and fully auditable.
* :func:`solve_complex` - partial-pivoted Gaussian elimination for complex
  systems, with an enforced relative-residual contract.

Each hot kernel has a loop form (numba-compiled when enabled) and a
vectorized numpy form; see :mod:`qcapsim._accel`.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit_or_plain
from .errors import SingularSystem

_EPS = float(np.finfo(np.float64).eps)


# --- Householder tridiagonalization ---------------------------------------

def _tridiagonalize_loops_impl(a):
    """Reduce a full symmetric matrix to tridiagonal form, loop version.

    ``a`` (float64, both triangles filled) is destroyed.  Returns (d, e)
    with d the diagonal and e[i] the coupling between rows i-1 and i
    (e[0] = 0).
    """
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    u = np.zeros(n)
    p = np.zeros(n)
    for i in range(n - 1, 1, -1):
        scale = 0.0
        for k in range(i):
            scale += abs(a[i, k])
        if scale == 0.0:
            e[i] = a[i, i - 1]
            continue
        h = 0.0
        for k in range(i):
            u[k] = a[i, k] / scale
            h += u[k] * u[k]
        f = u[i - 1]
        g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
        e[i] = scale * g
        h -= f * g
        u[i - 1] = f - g
        for j in range(i):
            s = 0.0
            for k in range(i):
                s += a[j, k] * u[k]
            p[j] = s / h
        kk = 0.0
        for j in range(i):
            kk += u[j] * p[j]
        kk /= 2.0 * h
        for j in range(i):
            p[j] -= kk * u[j]
        for j in range(i):
            for k in range(i):
                a[j, k] -= p[j] * u[k] + u[j] * p[k]
    if n > 1:
        e[1] = a[1, 0]
    for i in range(n):
        d[i] = a[i, i]
    return d, e


tridiagonalize_loops = njit_or_plain(_tridiagonalize_loops_impl)


def tridiagonalize_numpy(a):
    """Vectorized numpy version of the Householder reduction."""
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n - 1, 1, -1):
        row = a[i, :i]
        scale = np.sum(np.abs(row))
        if scale == 0.0:
            e[i] = a[i, i - 1]
            continue
        u = row / scale
        h = float(u @ u)
        f = u[i - 1]
        g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
        e[i] = scale * g
        h -= f * g
        u = u.copy()
        u[i - 1] = f - g
        p = (a[:i, :i] @ u) / h
        q = p - (float(u @ p) / (2.0 * h)) * u
        a[:i, :i] -= np.outer(q, u) + np.outer(u, q)
    if n > 1:
        e[1] = a[1, 0]
    d[:] = np.diagonal(a)
    return d, e


# --- implicit-shift QL iteration -------------------------------------------

def _ql_eigenvalues_impl(d, e):
    """Implicit-shift QL on a tridiagonal (d, e); eigenvalues land in d.

    ``e`` holds the subdiagonal as e[i] = coupling (i, i+1), with
    e[n-1] = 0; both arrays are destroyed.  Returns 0 on success or the
    1-based index of the eigenvalue whose iteration count overflowed.
    """
    n = d.shape[0]
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 64:
                return l + 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sg = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sg)
            s = 1.0
            c = 1.0
            pshift = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= pshift
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - pshift
                r = (d[i] - g) * s + 2.0 * c * b
                pshift = s * r
                d[i + 1] = g + pshift
                g = c * r - b
            if underflow:
                continue
            d[l] -= pshift
            e[l] = g
            e[m] = 0.0
    return 0


ql_eigenvalues = njit_or_plain(_ql_eigenvalues_impl)


def symmetric_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, ascending.

    The input is not modified; symmetry is assumed, only the lower/upper
    consistency the caller guarantees is used.
    """
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square 2-d matrix")
    n = a.shape[0]
    if n == 0:
        return np.empty(0)
    if n == 1:
        return a[0, :1].copy()
    if USE_NUMBA:
        d, e = tridiagonalize_loops(a)
    else:
        d, e = tridiagonalize_numpy(a)
    # shift the subdiagonal into e[i] = coupling (i, i+1)
    e[:-1] = e[1:]
    e[-1] = 0.0
    status = ql_eigenvalues(d, e)
    if status != 0:
        raise RuntimeError(f"QL iteration failed to converge at index {status - 1}")
    return np.sort(d)


# --- complex Gaussian elimination with partial pivoting --------------------

def _lu_solve_loops_impl(a, b):
    """Solve a X = b in place (b gets X); returns True on a zero pivot."""
    n = a.shape[0]
    m = b.shape[1]
    for k in range(n):
        piv = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > best:
                best = v
                piv = i
        if best == 0.0:
            return True
        if piv != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            for j in range(m):
                tmp = b[k, j]
                b[k, j] = b[piv, j]
                b[piv, j] = tmp
        for i in range(k + 1, n):
            lam = a[i, k] / a[k, k]
            if lam != 0.0:
                for j in range(k + 1, n):
                    a[i, j] -= lam * a[k, j]
                for j in range(m):
                    b[i, j] -= lam * b[k, j]
    for k in range(n - 1, -1, -1):
        for j in range(m):
            acc = b[k, j]
            for col in range(k + 1, n):
                acc -= a[k, col] * b[col, j]
            b[k, j] = acc / a[k, k]
    return False


lu_solve_loops = njit_or_plain(_lu_solve_loops_impl)


def lu_solve_numpy(a, b):
    """Vectorized numpy version of the pivoted elimination."""
    n = a.shape[0]
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) == 0.0:
            return True
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        lam = a[k + 1:, k] / a[k, k]
        a[k + 1:, k + 1:] -= np.outer(lam, a[k, k + 1:])
        b[k + 1:] -= np.outer(lam, b[k])
    for k in range(n - 1, -1, -1):
        b[k] = (b[k] - a[k, k + 1:] @ b[k + 1:]) / a[k, k]
    return False


def solve_complex(matrix, rhs, residual_tol: float | None = 1e-10) -> np.ndarray:
    """Solve ``matrix @ x = rhs`` by partial-pivoted elimination.

    ``rhs`` may be a vector or a matrix of stacked right-hand sides.
    Raises :class:`SingularSystem` on a zero pivot or when any column's
    relative residual exceeds ``residual_tol`` (pass None to skip the
    residual check).
    """
    a0 = np.asarray(matrix, dtype=np.complex128)
    b0 = np.asarray(rhs, dtype=np.complex128)
    if a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
        raise ValueError("expected a square 2-d matrix")
    vector_rhs = b0.ndim == 1
    b2 = b0.reshape(-1, 1) if vector_rhs else b0
    if b2.shape[0] != a0.shape[0]:
        raise ValueError("rhs shape does not match matrix")
    a = np.array(a0, order="C", copy=True)
    b = np.array(b2, order="C", copy=True)
    singular = lu_solve_loops(a, b) if USE_NUMBA else lu_solve_numpy(a, b)
    if singular:
        raise SingularSystem("zero pivot in complex elimination")
    if residual_tol is not None:
        resid = np.linalg.norm(a0 @ b - b2, axis=0)
        scale = np.linalg.norm(b2, axis=0)
        bad = resid > residual_tol * np.where(scale > 0.0, scale, 1.0)
        if np.any(bad):
            raise SingularSystem(
                f"solve residual {float(np.max(resid / np.where(scale > 0, scale, 1.0))):.3e} "
                f"exceeds {residual_tol:.1e}"
            )
    return b[:, 0] if vector_rhs else b
