"""Verification suite: each check reproduces one claim and reports PASS/FAIL/SKIP."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds as B
from . import constructions as C
from .codec import SEARCH_GRAPHS, sparse6_decode, sparse6_encode
from .graph import LoopedGraph, blowup, is_isomorphic, underlying_simple
from .search import exhaustive, positions
from .spectral import batch_eigenvalues, eigenvalues, spread, spread_ratio

# Printed (lower, upper) strings per cell; exact cells carry their symbol twice.
PRINTED_BOUNDS = {
    (0, 0): ("2/√3", "2/√3"), (0, 1): ("1.090", "1.112"), (0, 2): ("1.066", "1.077"),
    (0, 3): ("1.052", "1.059"), (0, 4): ("1.043", "1.048"),
    (1, 0): ("1/√2", "1/√2"), (1, 1): ("0.600", "0.612"), (1, 2): ("0.571", "0.577"),
    (1, 3): ("0.556", "0.559"), (1, 4): ("0.545", "0.547"),
    (2, 0): ("0.600", "0.612"), (2, 1): ("1/2", "1/2"), (2, 2): ("0.441", "0.456"),
    (2, 3): ("0.415", "0.433"), (2, 4): ("0.404", "0.418"),
    (3, 0): ("0.571", "0.577"), (3, 1): ("0.441", "0.456"), (3, 2): ("0.404", "0.408"),
    (3, 3): ("0.368", "0.382"), (3, 4): ("0.341", "0.365"),
    (4, 0): ("0.556", "0.559"), (4, 1): ("0.415", "0.433"), (4, 2): ("0.368", "0.382"),
    (4, 3): ("√2/4", "√2/4"), (4, 4): ("0.315", "0.335"),
}
SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
SYMBOL_VALUES = {"2/√3": 2 / math.sqrt(3), "1/√2": 1 / math.sqrt(2), "1/2": 0.5, "√2/4": math.sqrt(2) / 4}


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"{self.status:4s}  {self.name}  ({self.seconds:.3f}s)  {self.detail}".rstrip()


def _result(name: str, failures: list[str], seconds: float, limit: float | None, ok_detail: str = "") -> CheckResult:
    if limit is not None and seconds >= limit:
        failures = failures + [f"runtime {seconds:.3f}s exceeds {limit}s"]
    if failures:
        shown = "; ".join(failures[:5]) + (f"; ... {len(failures) - 5} more" if len(failures) > 5 else "")
        return CheckResult(name, "FAIL", shown, seconds)
    return CheckResult(name, "PASS", ok_detail, seconds)


def random_looped(rng: np.random.Generator, n: int, loops: bool = True) -> LoopedGraph:
    p = rng.uniform(0.1, 0.9)
    a = np.triu((rng.random((n, n)) < p).astype(np.uint8), 0 if loops else 1)
    return LoopedGraph(a | np.triu(a, 1).T)


def check_p4_spectrum() -> CheckResult:
    g = C.closed_path_p4()
    expected = np.array([2, math.sqrt(2), 0, -math.sqrt(2)])
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        spec = eigenvalues(g)
        best = min(best, time.perf_counter() - t0)
    err = float(np.abs(spec.values - expected).max())
    fails = [] if err <= 1e-9 else [f"max error {err:.2e}"]
    return _result("1 closed path spectrum", fails, best, 1e-3, f"max error {err:.1e}, best-of-5 runtime")


def check_hadamard(ks=(1, 2, 4, 8)) -> CheckResult:
    t0 = time.perf_counter()
    fails = []
    for k in ks:
        g = C.hadamard_equality_graph(k)
        got = spread(g, (k, k - 1))
        want = 4 * k / math.sqrt(2 * k)
        if abs(got - want) > 1e-9:
            fails.append(f"k={k}: spread {got!r} != {want!r}")
    q3 = eigenvalues(C.closed_cube_q3()).values
    shape = np.array([4, 2, 2, 0, 0, 0, -2, -2])
    if np.abs(q3 - shape).max() > 1e-9:
        fails.append(f"closed cube spectrum {np.round(q3, 9).tolist()}")
    return _result("2 hadamard equality", fails, time.perf_counter() - t0, 1.0, f"k in {list(ks)}")


def check_uniqueness_n4() -> CheckResult:
    t0 = time.perf_counter()
    rec = exhaustive(4, (1, 0), "L")
    fails = []
    if abs(rec.best_value - 2 * math.sqrt(2)) > 1e-9:
        fails.append(f"max {rec.best_value!r} != 2*sqrt(2)")
    p4 = C.closed_path_p4()
    if not rec.witnesses or not all(is_isomorphic(w, p4) for w in rec.witnesses):
        fails.append(f"witness classes {[sparse6_encode(w) for w in rec.witnesses]}")
    return _result("3 uniqueness at n=4", fails, time.perf_counter() - t0, 1.0,
                   f"{rec.work} graphs, {len(rec.witnesses)} witness class")


def check_blowup_law(samples: int = 200, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    fails = []
    for s in range(samples):
        g = random_looped(rng, int(rng.integers(1, 9)))
        t = int(rng.integers(1, 5))
        base = eigenvalues(g).values
        want = np.sort(np.concatenate([t * base, np.zeros((t - 1) * g.n)]))[::-1]
        got = eigenvalues(blowup(g, t)).values
        err = float(np.abs(got - want).max())
        if err > 1e-8:
            fails.append(f"sample {s} (n={g.n}, t={t}): error {err:.2e}")
    return _result("4 blowup spectrum law", fails, time.perf_counter() - t0, 30.0, f"{samples} samples")


def check_interlacing(samples: int = 500, seed: int = 2) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    fails = []
    for s in range(samples):
        g = random_looped(rng, int(rng.integers(1, 16)))
        looped = eigenvalues(g).values
        simple = eigenvalues(underlying_simple(g)).values
        if np.any(simple > looped + 1e-9) or np.any(simple < looped - 1 - 1e-9):
            fails.append(f"sample {s} (n={g.n})")
    return _result("5 loop-removal interlacing", fails, time.perf_counter() - t0, 30.0, f"{samples} samples")


def check_table1() -> list[CheckResult]:
    t0 = time.perf_counter()
    results = []
    for (i, j), (lo_s, up_s) in sorted(PRINTED_BOUNDS.items()):
        c0 = time.perf_counter()
        cell = B.best_known(i, j)
        name = f"6 table cell ({i},{j})"
        if not cell.available:
            sg = SEARCH_GRAPHS[cell.lower.source]
            base = (sg.complement_of or sg.name).translate(SUBSCRIPTS)
            results.append(CheckResult(name, "SKIP", f"{base} unavailable", time.perf_counter() - c0))
            continue
        fails = []
        for label, printed, value in (("lower", lo_s, cell.lower.value), ("upper", up_s, cell.upper.value)):
            if printed in SYMBOL_VALUES:
                if abs(value - SYMBOL_VALUES[printed]) > 1e-9:
                    fails.append(f"{label} {value!r} != {printed}")
            elif B.round3(value) != printed:
                fails.append(f"{label} {value:.6f} rounds to {B.round3(value)}, printed {printed}")
        results.append(_result(name, fails, time.perf_counter() - c0, None,
                               f"{B.round3(cell.lower.value)} / {B.round3(cell.upper.value)} via {cell.lower.source}"))
    total = time.perf_counter() - t0
    results.append(_result("6 table runtime", [], total, 10.0))
    return results


def check_families() -> list[CheckResult]:
    t0 = time.perf_counter()
    fails = []
    for j in range(1, 9):
        got = eigenvalues(C.clique_union_closed(j)).values
        want = np.array([j + 1] * 2 + [0] * j + [-1] * (j + 1), dtype=float)
        if np.abs(got - want).max() > 1e-9:
            fails.append(f"j={j}")
    out = [_result("7 clique-union spectra", fails, time.perf_counter() - t0, None, "j in 1..8")]

    t0 = time.perf_counter()
    top, bottom = [], []
    for j in range(0, 9):
        got = eigenvalues(C.clique_with_loops(2 * j + 4, j + 2)).values
        root = math.sqrt(4 * j * j + 16 * j + 17)
        if abs(got[0] - (2 * j + 3 + root) / 2) > 1e-9:
            top.append(f"j={j}: {got[0]!r}")
        want = (2 * j + 3 - root) / 2
        if abs(got[-1] - want) > 1e-9:
            bottom.append(f"j={j}: smallest eigenvalue {got[-1]:.6f}, closed form {want:.6f}")
    seconds = time.perf_counter() - t0
    out.append(_result("7 clique-loops largest eigenvalue", top, seconds, None, "j in 0..8"))
    out.append(_result("7 clique-loops smallest eigenvalue", bottom, seconds, None, "j in 0..8"))

    t0 = time.perf_counter()
    fails = []
    for i in range(1, 9):
        got = spread_ratio(C.half_closed_bipartite(i), (i, 0))
        if abs(got - (i + 1) / (2 * i + 1)) > 1e-9:
            fails.append(f"i={i}: {got!r}")
    out.append(_result("7 half-closed-bipartite ratio", fails, time.perf_counter() - t0, None, "i in 1..8"))
    return out


def check_ratio_gap(samples: int = 500, seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    fails = []
    for s in range(samples):
        g = random_looped(rng, int(rng.integers(1, 16)))
        n = g.n
        a = eigenvalues(g).values
        b = eigenvalues(underlying_simple(g)).values
        for i in range(n):
            for j in range(n):
                gap = abs((a[i] - a[n - j - 1]) - (b[i] - b[n - j - 1])) / n
                if gap > 1 / n + 1e-9:
                    fails.append(f"sample {s} (n={n}) at ({i},{j}): {gap:.3g}")
    return _result("8 loop-removal ratio gap", fails, time.perf_counter() - t0, None, f"{samples} samples")


def _bound_violations(spectra: np.ndarray, label: str) -> list[str]:
    """Check both universal bounds for every index pair on a stack of spectra."""
    n = spectra.shape[1]
    fails = []
    for j in range(n):
        low = spectra[:, n - j - 1]
        excess = spectra[:, 0] - low - n * B.ub_row0(j)
        if excess.max() > 1e-9:
            fails.append(f"{label}: row-0 bound at j={j} exceeded by {excess.max():.2e}")
        for i in range(1, n):
            excess = spectra[:, i] - low - n * B.ub_general(i, j)
            if excess.max() > 1e-9:
                fails.append(f"{label}: general bound at ({i},{j}) exceeded by {excess.max():.2e}")
    return fails


def _all_spectra(n: int) -> np.ndarray:
    rows, cols = positions(n, "L")
    masks = np.arange(1 << len(rows), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(rows), dtype=np.int64)) & 1
    mats = np.zeros((len(masks), n, n))
    mats[:, rows, cols] = bits
    mats[:, cols, rows] = bits
    return batch_eigenvalues(mats)


def check_universal_bounds(samples: int = 10_000, seed: int = 4) -> CheckResult:
    t0 = time.perf_counter()
    fails = []
    for n in (4, 5):
        fails += _bound_violations(_all_spectra(n), f"all of L_{n}")
    rng = np.random.default_rng(seed)
    sizes = rng.integers(1, 21, samples)
    for n in range(1, 21):
        count = int((sizes == n).sum())
        if count:
            mats = np.stack([random_looped(rng, n).matrix() for _ in range(count)])
            fails += _bound_violations(batch_eigenvalues(mats), f"random n={n}")
    return _result("9 universal upper bounds", fails, time.perf_counter() - t0, 120.0,
                   f"L_4, L_5 and {samples} random graphs")


def check_codec(samples: int = 1000, seed: int = 5) -> CheckResult:
    t0 = time.perf_counter()
    fails = []
    rows, cols = positions(4, "L")
    for mask in range(1 << len(rows)):
        a = np.zeros((4, 4), dtype=np.uint8)
        on = [(r, c) for b, (r, c) in enumerate(zip(rows, cols)) if mask >> b & 1]
        for r, c in on:
            a[r, c] = a[c, r] = 1
        g = LoopedGraph(a)
        if sparse6_decode(sparse6_encode(g)) != g:
            fails.append(f"L_4 mask {mask}")
    rng = np.random.default_rng(seed)
    for s in range(samples):
        g = random_looped(rng, int(rng.integers(1, 13)))
        if sparse6_decode(sparse6_encode(g)) != g:
            fails.append(f"random sample {s}")
    for sg in SEARCH_GRAPHS.values():
        if not sg.available:
            continue
        printed = PRINTED_BOUNDS[sg.cell][0]
        got = B.round3(spread_ratio(sg.graph(), sg.cell))
        if got != printed:
            fails.append(f"{sg.name} at {sg.cell}: {got} != {printed}")
    return _result("10 sparse6 codec", fails, time.perf_counter() - t0, 30.0)


def check_parallel_determinism() -> CheckResult:
    t0 = time.perf_counter()
    one = exhaustive(5, (1, 1), "L", threads=1).to_line()
    eight = exhaustive(5, (1, 1), "L", threads=8).to_line()
    fails = [] if one == eight else ["records differ"]
    return _result("11 parallel determinism", fails, time.perf_counter() - t0, None)


SUITES: dict[str, list[Callable[[], CheckResult | list[CheckResult]]]] = {
    "spectra": [check_p4_spectrum, check_families],
    "hadamard": [check_hadamard],
    "uniqueness": [check_uniqueness_n4],
    "identities": [check_blowup_law, check_interlacing, check_ratio_gap],
    "tables": [check_table1, check_codec],
    "bounds": [check_universal_bounds],
    "codec": [check_codec],
    "determinism": [check_parallel_determinism],
}
ALL = [
    check_p4_spectrum, check_hadamard, check_uniqueness_n4, check_blowup_law, check_interlacing,
    check_table1, check_families, check_ratio_gap, check_universal_bounds, check_codec,
    check_parallel_determinism,
]


def run(checks) -> list[CheckResult]:
    out: list[CheckResult] = []
    for check in checks:
        res = check()
        out.extend(res if isinstance(res, list) else [res])
    return out
