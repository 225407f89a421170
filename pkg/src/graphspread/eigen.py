"""Dense symmetric eigensolvers.

Two independent routes:

* ``tridiagonal_ql``: Householder reduction to tridiagonal form, then the
  implicit-shift QL iteration with Wilkinson shifts (the EISPACK tred2/tql2
  pair).
* ``jacobi``: cyclic Jacobi rotations on the full matrix.

Both return ``(values, vectors)`` with values in the order the solver
produced them; sorting is the caller's job.
"""

from __future__ import annotations

import math

import numpy as np

MAX_QL_ITER = 60
MAX_JACOBI_SWEEPS = 100


class ConvergenceError(ArithmeticError):
    def __init__(self, message: str, residual: float = math.inf):
        super().__init__(message)
        self.residual = residual


def householder_tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reduce symmetric ``a`` to tridiagonal T = Q^T a Q.

    Returns the diagonal ``d``, the subdiagonal ``e`` (length n-1) and the
    orthogonal ``q``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        u = x.copy()
        u[0] -= alpha
        unorm2 = u @ u
        if unorm2 == 0.0:
            continue
        # a <- H a H with H = I - 2 u u^T / |u|^2 on the trailing block
        sub = a[k + 1 :, k + 1 :]
        p = sub @ u * (2.0 / unorm2)
        kk = (u @ p) / unorm2
        w = p - kk * u
        sub -= np.outer(u, w) + np.outer(w, u)
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = a[k, k + 1] = alpha
        q[:, k + 1 :] -= np.outer(q[:, k + 1 :] @ u, u) * (2.0 / unorm2)
    return np.diagonal(a).copy(), np.diagonal(a, -1).copy(), q


def implicit_ql(d: np.ndarray, e: np.ndarray, z: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray | None]:
    """Eigenvalues of the symmetric tridiagonal matrix (d, e).

    If ``z`` is given its columns are rotated along, so passing the
    Householder ``q`` yields eigenvectors of the original matrix.
    """
    n = len(d)
    d = [float(x) for x in d]
    e = [float(x) for x in e] + [0.0]
    if z is not None:
        z = np.array(z, dtype=float)
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-15 * dd or abs(e[m]) < 1e-300:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > MAX_QL_ITER:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l}", abs(e[l]))
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi1 = z[:, i + 1].copy()
                    z[:, i + 1] = s * z[:, i] + c * zi1
                    z[:, i] = c * z[:, i] - s * zi1
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d), z


def tridiagonal_ql(a: np.ndarray, vectors: bool = True) -> tuple[np.ndarray, np.ndarray | None]:
    n = a.shape[0]
    if n == 1:
        return np.array([float(a[0, 0])]), np.ones((1, 1))
    d, e, q = householder_tridiagonalize(a)
    return implicit_ql(d, e, q if vectors else None)


def jacobi(a: np.ndarray, tol: float = 1e-14) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigenvalue algorithm."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.abs(a).max()))
    for _ in range(MAX_JACOBI_SWEEPS):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= tol * scale * n:
            return np.diagonal(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
    raise ConvergenceError("Jacobi sweeps exhausted", off)
