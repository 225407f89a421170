"""Exhaustive and hill-climbing maximisation of the (i, j)-spread.

Graphs are enumerated as bitmasks over the upper triangle of the adjacency
matrix (diagonal included for looped graphs). Bit ``b`` of a mask is the
entry at ``positions(n, space)[b]``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codec import sparse6_decode, sparse6_encode
from .graph import CANONICAL_LIMIT, LoopedGraph, canonical_form, canonical_graph
from .spectral import SpreadQuery, batch_eigenvalues

SLACK = 1e-9
MAX_BITS = 28
CHUNK = 1 << 13
SPACES = ("L", "S")


class SearchSizeError(ValueError):
    pass


@dataclass(frozen=True)
class SearchRecord:
    n: int
    i: int
    j: int
    space: str
    best_value: float
    method: str
    seed: int | None
    work: int
    witnesses: tuple[LoopedGraph, ...] = field(default=())

    @property
    def best_ratio(self) -> float:
        return self.best_value / self.n

    def to_line(self) -> str:
        wit = ",".join(sparse6_encode(w) for w in self.witnesses)
        seed = "-" if self.seed is None else str(self.seed)
        return (
            f"cell={self.i},{self.j} n={self.n} space={self.space} value={self.best_value!r} "
            f"ratio={self.best_ratio!r} method={self.method} seed={seed} work={self.work} witnesses={wit}"
        )

    @classmethod
    def from_line(cls, line: str) -> "SearchRecord":
        fields = dict(item.split("=", 1) for item in line.split())
        i, j = (int(x) for x in fields["cell"].split(","))
        wit = tuple(sparse6_decode(s) for s in fields["witnesses"].split(",") if s)
        return cls(
            n=int(fields["n"]),
            i=i,
            j=j,
            space=fields["space"],
            best_value=float(fields["value"]),
            method=fields["method"],
            seed=None if fields["seed"] == "-" else int(fields["seed"]),
            work=int(fields["work"]),
            witnesses=wit,
        )


def positions(n: int, space: str) -> tuple[np.ndarray, np.ndarray]:
    if space not in SPACES:
        raise ValueError(f"space must be 'L' (loops allowed) or 'S' (simple), got {space!r}")
    off = 0 if space == "L" else 1
    rows, cols = [], []
    for c in range(n):
        for r in range(c + 1 - off):
            rows.append(r)
            cols.append(c)
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


def mask_to_graph(mask: int, n: int, space: str) -> LoopedGraph:
    rows, cols = positions(n, space)
    a = np.zeros((n, n), dtype=np.uint8)
    for b, (r, c) in enumerate(zip(rows, cols)):
        if mask >> b & 1:
            a[r, c] = a[c, r] = 1
    return LoopedGraph(a)


def _matrices(bits: np.ndarray, n: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    mats = np.zeros((bits.shape[0], n, n))
    mats[:, rows, cols] = bits
    mats[:, cols, rows] = bits
    return mats


def _spreads(mats: np.ndarray, q: SpreadQuery) -> np.ndarray:
    vals = batch_eigenvalues(mats)
    n = mats.shape[-1]
    return vals[:, q.i] - vals[:, n - q.j - 1]


def _eval_range(n, rows, cols, q, start, stop):
    masks = np.arange(start, stop, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(rows), dtype=np.int64)) & 1
    values = _spreads(_matrices(bits, n, rows, cols), q)
    top = values.max()
    keep = np.flatnonzero(values >= top - SLACK)
    return float(top), [(int(masks[k]), float(values[k])) for k in keep]


def _dedupe(graphs: list[LoopedGraph]) -> tuple[LoopedGraph, ...]:
    if not graphs:
        return ()
    if graphs[0].n > CANONICAL_LIMIT:
        return (graphs[0],)
    seen: dict[bytes, LoopedGraph] = {}
    for g in graphs:
        key = canonical_form(g)
        if key not in seen:
            seen[key] = canonical_graph(g)
    return tuple(seen.values())


def space_bits(n: int, space: str) -> int:
    return n * (n + 1) // 2 if space == "L" else n * (n - 1) // 2


def exhaustive(n: int, q: SpreadQuery | tuple[int, int], space: str = "L", threads: int = 1) -> SearchRecord:
    """Exact maximum of the (i, j)-spread over every graph in the space.

    The enumeration is split into fixed chunks, so the record does not
    depend on ``threads``.
    """
    q = SpreadQuery(*q)
    q.validate(n)
    nbits = space_bits(n, space)
    if nbits > MAX_BITS:
        raise SearchSizeError(f"{2 ** nbits} graphs in {space}_{n} is beyond exhaustive search ({MAX_BITS} bits)")
    rows, cols = positions(n, space)
    total = 1 << nbits
    ranges = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]

    def work(r):
        return _eval_range(n, rows, cols, q, *r)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, ranges))
    else:
        parts = [work(r) for r in ranges]

    best = max(p[0] for p in parts)
    masks = [m for _, kept in parts for m, v in kept if v >= best - SLACK]
    witnesses = _dedupe([mask_to_graph(m, n, space) for m in sorted(masks)])
    return SearchRecord(n, q.i, q.j, space, best, "exhaustive", None, total, witnesses)


def verify_no_better(n: int, q: SpreadQuery | tuple[int, int], candidate_ratio: float, space: str = "L", threads: int = 1) -> bool:
    """True iff no graph in the space beats ``candidate_ratio * n`` by more than the slack."""
    rec = exhaustive(n, q, space, threads)
    return rec.best_value <= candidate_ratio * n + SLACK


def hill_climb(
    n: int,
    q: SpreadQuery | tuple[int, int],
    space: str = "L",
    seed: int = 0,
    restarts: int = 50,
    iters: int = 1000,
    target: float | None = None,
) -> SearchRecord:
    """Steepest-ascent search over single-entry flips with random restarts.

    Equal-valued moves are allowed up to 2 n^2 times per restart. Stops
    early once ``target`` is reached.
    """
    q = SpreadQuery(*q)
    q.validate(n)
    if n < 2:
        raise ValueError("hill climbing needs n >= 2")
    rng = np.random.default_rng(seed)
    rows, cols = positions(n, space)
    nb = len(rows)
    flips = np.eye(nb, dtype=np.int64)
    plateau_cap = 2 * n * n
    best = -math.inf
    best_graphs: list[LoopedGraph] = []
    work = 0
    for _ in range(restarts):
        state = (rng.random(nb) < rng.uniform(0.2, 0.8)).astype(np.int64)
        cur = float(_spreads(_matrices(state[None, :], n, rows, cols), q)[0])
        work += 1
        flat = 0
        for _ in range(iters):
            nbrs = state[None, :] ^ flips
            vals = _spreads(_matrices(nbrs, n, rows, cols), q)
            work += nb
            top = vals.max()
            if top > cur + SLACK:
                pick = int(np.argmax(vals))
            elif top >= cur - SLACK and flat < plateau_cap:
                ties = np.flatnonzero(vals >= top - SLACK)
                pick = int(rng.choice(ties))
                flat += 1
            else:
                break
            state = nbrs[pick]
            cur = float(vals[pick])
            if target is not None and cur >= target - SLACK:
                break
        g = LoopedGraph(_matrices(state[None, :], n, rows, cols)[0].astype(np.uint8))
        if cur > best + SLACK:
            best, best_graphs = cur, [g]
        elif cur >= best - SLACK:
            best = max(best, cur)
            best_graphs.append(g)
        if target is not None and best >= target - SLACK:
            break
    return SearchRecord(n, q.i, q.j, space, best, "hill-climb", seed, work, _dedupe(best_graphs))
