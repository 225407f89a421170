"""Looped graphs: symmetric 0/1 adjacency matrices with a free diagonal.

A diagonal entry of 1 is a self-loop. Simple graphs are the special case
with an all-zero diagonal. Every operation here returns a new graph; the
adjacency array of a ``LoopedGraph`` is read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

CANONICAL_LIMIT = 12


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LoopedGraph:
    adj: np.ndarray

    def __post_init__(self):
        a = np.array(self.adj, dtype=np.uint8, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise GraphError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if np.any(a > 1) or np.any(np.asarray(self.adj) < 0):
            raise GraphError("adjacency entries must be 0 or 1")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency must be symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(np.diagonal(self.adj)))

    @property
    def is_simple(self) -> bool:
        return not np.any(np.diagonal(self.adj))

    def edges(self) -> list[tuple[int, int]]:
        """Off-diagonal edges as (u, v) with u < v, sorted."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def matrix(self, dtype=float) -> np.ndarray:
        return self.adj.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, LoopedGraph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"LoopedGraph(n={self.n}, edges={len(self.edges())}, loops={list(self.loops)})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    average: Fraction


def build(n: int, edges: Iterable[Sequence[int]] = (), loops: Iterable[int] = ()) -> LoopedGraph:
    """Build a looped graph from an edge list and a set of looped vertices.

    Edges are unordered pairs of distinct vertices. A pair (v, v) in
    ``edges`` is accepted as a loop. Repeating an edge is an error because
    multigraphs cannot be represented.
    """
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    a = np.zeros((n, n), dtype=np.uint8)
    for e in edges:
        u, v = (int(x) for x in e)
        _check_vertex(u, n)
        _check_vertex(v, n)
        if a[u, v]:
            raise GraphError(f"duplicate edge {{{u}, {v}}}")
        a[u, v] = a[v, u] = 1
    for v in loops:
        v = int(v)
        _check_vertex(v, n)
        a[v, v] = 1
    return LoopedGraph(a)


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range for n={n}")


def empty(n: int) -> LoopedGraph:
    return LoopedGraph(np.zeros((n, n), dtype=np.uint8))


def complete(n: int) -> LoopedGraph:
    return LoopedGraph(np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8))


def underlying_simple(g: LoopedGraph) -> LoopedGraph:
    a = g.adj.copy()
    np.fill_diagonal(a, 0)
    return LoopedGraph(a)


def blowup(g: LoopedGraph, t: int) -> LoopedGraph:
    """Replace every vertex by an independent t-set: adjacency A kron J_t.

    A looped vertex becomes a t-clique with loops on every vertex.
    """
    if t < 1:
        raise GraphError(f"blowup factor must be positive, got {t}")
    return LoopedGraph(np.kron(g.adj, np.ones((t, t), dtype=np.uint8)))


def closed_complement(g: LoopedGraph) -> LoopedGraph:
    """Complement including the diagonal: J - A."""
    return LoopedGraph(1 - g.adj)


def disjoint_union(g: LoopedGraph, h: LoopedGraph) -> LoopedGraph:
    a = np.zeros((g.n + h.n, g.n + h.n), dtype=np.uint8)
    a[: g.n, : g.n] = g.adj
    a[g.n :, g.n :] = h.adj
    return LoopedGraph(a)


def relabel(g: LoopedGraph, perm: Sequence[int]) -> LoopedGraph:
    """Move vertex ``v`` to position ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.intp)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise GraphError("perm must be a permutation of range(n)")
    order = np.empty_like(perm)
    order[perm] = np.arange(g.n)
    return LoopedGraph(g.adj[np.ix_(order, order)])


def degree_profile(g: LoopedGraph) -> DegreeProfile:
    """Row sums (a loop counts once) and their mean."""
    degrees = tuple(int(d) for d in g.adj.sum(axis=1))
    return DegreeProfile(degrees, Fraction(sum(degrees), g.n))


# -- isomorphism ---------------------------------------------------------------
#
# Canonical labelling by colour refinement plus individualisation. Leaves of
# the search tree are discrete orderings; the canonical form is the smallest
# row-major bit string over all leaves. Twin vertices (swappable by a
# transposition that fixes everything else) are individualised only once.


def _refine(a: np.ndarray, colors: list[int]) -> list[int]:
    n = len(colors)
    rows = [np.flatnonzero(a[v]).tolist() for v in range(n)]
    while True:
        sigs = [
            (colors[v], int(a[v, v]), tuple(sorted(colors[w] for w in rows[v] if w != v)))
            for v in range(n)
        ]
        ranking = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def _are_twins(a: np.ndarray, u: int, v: int) -> bool:
    if a[u, u] != a[v, v]:
        return False
    mask = np.ones(a.shape[0], dtype=bool)
    mask[[u, v]] = False
    return bool(np.array_equal(a[u, mask], a[v, mask]))


def _search(a: np.ndarray, colors: list[int], best: list) -> None:
    n = len(colors)
    colors = _refine(a, colors)
    if len(set(colors)) == n:
        order = sorted(range(n), key=colors.__getitem__)
        key = np.packbits(a[np.ix_(order, order)].ravel()).tobytes()
        if best[0] is None or key < best[0]:
            best[0], best[1] = key, order
        return
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
    tried: list[int] = []
    for v in cells[target]:
        if any(_are_twins(a, u, v) for u in tried):
            continue
        tried.append(v)
        # individualise v: it gets a colour just below the rest of its cell
        split = [2 * c + (0 if (c != target or w == v) else 1) for w, c in enumerate(colors)]
        _search(a, split, best)


def canonical_labeling(g: LoopedGraph) -> list[int]:
    """Vertex order such that ``g.adj[order][:, order]`` is canonical."""
    if g.n > CANONICAL_LIMIT:
        raise GraphError(f"canonical form limited to n <= {CANONICAL_LIMIT}, got {g.n}")
    best: list = [None, None]
    _search(g.adj, [0] * g.n, best)
    return best[1]


def canonical_form(g: LoopedGraph) -> bytes:
    """Isomorphism-invariant byte string; loops must map to loops."""
    order = canonical_labeling(g)
    bits = np.packbits(g.adj[np.ix_(order, order)].ravel()).tobytes()
    return bytes([g.n]) + bits


def canonical_graph(g: LoopedGraph) -> LoopedGraph:
    order = canonical_labeling(g)
    return LoopedGraph(g.adj[np.ix_(order, order)])


def is_isomorphic(g: LoopedGraph, h: LoopedGraph) -> bool:
    if g.n != h.n or g.adj.sum() != h.adj.sum() or len(g.loops) != len(h.loops):
        return False
    return canonical_form(g) == canonical_form(h)
