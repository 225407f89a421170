"""Spectra and (i, j)-spreads of looped graphs.

Eigenvalue indices exposed to users are 1-based with lambda_1 the largest,
so the (i, j)-spread is ``values[i] - values[n - j - 1]`` on the 0-based,
nonincreasing ``values`` array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .eigen import ConvergenceError, jacobi, tridiagonal_ql
from .graph import LoopedGraph

TOL = 1e-10
METHODS = ("ql", "jacobi", "lapack")


class SpreadQuery(NamedTuple):
    i: int
    j: int

    def validate(self, n: int) -> None:
        if self.i < 0 or self.j < 0:
            raise IndexError(f"spread indices must be nonnegative, got ({self.i}, {self.j})")
        if not (1 <= self.i + 1 <= n and 1 <= n - self.j <= n):
            raise IndexError(f"index pair ({self.i}, {self.j}) out of range for n={n}")

    def is_valid(self, n: int) -> bool:
        return self.i >= 0 and self.j >= 0 and self.i + 1 <= n and n - self.j >= 1


@dataclass(frozen=True, eq=False)
class Spectrum:
    values: np.ndarray
    basis: np.ndarray | None = None
    residual: float = 0.0

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        """1-based access: ``spec[1]`` is the largest eigenvalue."""
        if not 1 <= k <= self.n:
            raise IndexError(f"eigenvalue index {k} out of range 1..{self.n}")
        return float(self.values[k - 1])


def _solve(a: np.ndarray, method: str) -> tuple[np.ndarray, np.ndarray]:
    if method == "ql":
        try:
            return tridiagonal_ql(a)
        except ConvergenceError:
            return jacobi(a)
    if method == "jacobi":
        return jacobi(a)
    if method == "lapack":
        return np.linalg.eigh(a)
    raise ValueError(f"unknown eigensolver {method!r}; choose from {METHODS}")


def eigenvalues(g: LoopedGraph, *, basis: bool = False, method: str = "ql", tol: float = TOL) -> Spectrum:
    """Full spectrum of ``g``, sorted nonincreasing.

    The default route is Householder tridiagonalisation plus implicit QL,
    falling back to Jacobi if QL stalls. Raises ``ConvergenceError`` if the
    residual ``max|AV - V diag(w)|`` exceeds ``tol * n * max(1, max|A|)``.
    """
    a = g.matrix()
    w, v = _solve(a, method)
    residual = float(np.abs(a @ v - v * w).max())
    limit = tol * g.n * max(1.0, float(np.abs(a).max()))
    if residual > limit:
        raise ConvergenceError(f"eigensolver residual {residual:.3e} exceeds {limit:.3e}", residual)
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], v[:, order] if basis else None, residual)


def batch_eigenvalues(mats: np.ndarray) -> np.ndarray:
    """Nonincreasing spectra for a stack of symmetric matrices, shape (m, n, n).

    Uses LAPACK; meant for bulk enumeration where per-graph Python overhead
    would dominate.
    """
    return np.linalg.eigvalsh(np.asarray(mats, dtype=float))[..., ::-1]


def spread_of_values(values: np.ndarray, q: SpreadQuery) -> float:
    n = len(values)
    q = SpreadQuery(*q)
    q.validate(n)
    return float(values[q.i] - values[n - q.j - 1])


def spread(g: LoopedGraph, q: SpreadQuery | tuple[int, int], spectrum: Spectrum | None = None) -> float:
    """lambda_{i+1} - lambda_{n-j}; negative when i + 1 > n - j."""
    q = SpreadQuery(*q)
    q.validate(g.n)
    spec = spectrum if spectrum is not None else eigenvalues(g)
    return spread_of_values(spec.values, q)


def spread_ratio(g: LoopedGraph, q: SpreadQuery | tuple[int, int], spectrum: Spectrum | None = None) -> float:
    return spread(g, q, spectrum) / g.n


def singular_values(g: LoopedGraph, spectrum: Spectrum | None = None) -> np.ndarray:
    spec = spectrum if spectrum is not None else eigenvalues(g)
    return np.sort(np.abs(spec.values))[::-1]
