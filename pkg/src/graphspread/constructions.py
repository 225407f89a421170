"""Named graph families with large (i, j)-spread, and Sylvester Hadamard matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import GraphError, LoopedGraph, build, complete, disjoint_union

# sign pattern paired with H in the Hadamard equality graph
K_SIGN = np.array([[1, -1], [-1, 1]], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    entries: np.ndarray

    def __post_init__(self):
        h = np.array(self.entries, dtype=np.int64)
        m = h.shape[0]
        if h.shape != (m, m) or not np.all(np.abs(h) == 1):
            raise ValueError("Hadamard entries must be +1/-1 in a square matrix")
        if not np.array_equal(h @ h.T, m * np.eye(m, dtype=np.int64)):
            raise ValueError("rows are not mutually orthogonal")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    @property
    def trace(self) -> int:
        return int(np.trace(self.entries))


def sylvester_hadamard(m: int) -> HadamardMatrix:
    """H of order 2**m from H_2 = [[1, 1], [1, -1]] by repeated doubling."""
    if m < 1:
        raise ValueError(f"Sylvester exponent must be >= 1, got {m}")
    h = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(m - 1):
        h = np.block([[h, h], [h, -h]])
    return HadamardMatrix(h)


def hadamard_order_available(order: int) -> bool:
    return order >= 2 and order & (order - 1) == 0


def hadamard_equality_graph(k: int) -> LoopedGraph:
    """Graph on 4k vertices with adjacency (K kron H + J) / 2, H of order 2k.

    Its spectrum is 2k, sqrt(2k) (k times), 0 (2k - 1 times) and
    -sqrt(2k) (k times). Only Sylvester orders are available, so k must be
    a power of two.
    """
    if k < 1 or not hadamard_order_available(2 * k):
        raise GraphError(f"no symmetric trace-zero Hadamard matrix of order {2 * k} in the factory")
    h = sylvester_hadamard((2 * k).bit_length() - 1).entries
    twice = np.kron(K_SIGN, h) + 1
    if np.any(twice % 2):
        raise GraphError("halving produced a fractional entry")
    return LoopedGraph(twice // 2)


def closed_path_p4() -> LoopedGraph:
    """Path 0-1-3-2 with loops on its two ends (0 and 2)."""
    return build(4, [(0, 1), (1, 3), (2, 3)], loops=[0, 2])


def closed_cube_q3() -> LoopedGraph:
    return hadamard_equality_graph(2)


def clique_union_closed(j: int) -> LoopedGraph:
    """K_{j+2} disjoint from a looped K_{j+1}; 2j + 3 vertices."""
    if j < 1:
        raise GraphError(f"j must be >= 1, got {j}")
    return disjoint_union(complete(j + 2), LoopedGraph(np.ones((j + 1, j + 1), dtype=np.uint8)))


def half_closed_bipartite(i: int) -> LoopedGraph:
    """K_{i+1,i} with loops on every vertex of the larger side (vertices 0..i)."""
    if i < 1:
        raise GraphError(f"i must be >= 1, got {i}")
    big = range(i + 1)
    small = range(i + 1, 2 * i + 1)
    return build(2 * i + 1, [(u, v) for u in big for v in small], loops=big)


def clique_with_loops(n: int, t: int) -> LoopedGraph:
    """K_n with loops on the first t vertices."""
    if n < 1 or not 0 <= t <= n:
        raise GraphError(f"need 0 <= t <= n and n >= 1, got n={n}, t={t}")
    a = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(a, 0)
    a[range(t), range(t)] = 1
    return LoopedGraph(a)


# name -> (factory, parameter names)
FAMILIES: dict[str, tuple[Callable[..., LoopedGraph], tuple[str, ...]]] = {
    "p4*": (closed_path_p4, ()),
    "q3*": (closed_cube_q3, ()),
    "hadamard-equality": (hadamard_equality_graph, ("k",)),
    "clique-union": (clique_union_closed, ("j",)),
    "half-closed-bipartite": (half_closed_bipartite, ("i",)),
    "clique-loops": (clique_with_loops, ("n", "t")),
}


def construct(name: str, **params: int) -> LoopedGraph:
    """Build a registered family member, e.g. ``construct("clique-loops", n=8, t=4)``."""
    try:
        factory, names = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown construction {name!r}; known: {', '.join(FAMILIES)}") from None
    missing = set(names) - set(params)
    extra = set(params) - set(names)
    if missing or extra:
        raise GraphError(f"{name} takes parameters {names}, got {sorted(params)}")
    return factory(**{p: params[p] for p in names})


def parse_construction(spec: str) -> LoopedGraph:
    """Parse ``name`` or ``name:key=value,key=value``."""
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise GraphError(f"bad construction parameter {item!r}; expected key=value")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise GraphError(f"parameter {key} must be an integer, got {value!r}") from None
    return construct(name.strip(), **params)
