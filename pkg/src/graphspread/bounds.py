"""Closed-form bounds on the normalised (i, j)-spread and the best-known table.

Every lower bound reported by ``best_known`` is recomputed from the
spectrum of its certificate graph; the closed forms are kept separately
so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, NamedTuple

from . import constructions as C
from .codec import SEARCH_GRAPHS
from .graph import LoopedGraph
from .spectral import spread_ratio

TABLE_SIZE = 5


def round3(x: float) -> str:
    """Three decimals, halves rounded away from zero."""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def ub_general(i: int, j: int) -> float:
    """Upper bound (1/2) sqrt((i + j + 1) / (i (j + 1))), valid for i >= 1."""
    if i < 1 or j < 0:
        raise ValueError(f"general bound needs i >= 1 and j >= 0, got ({i}, {j}); use ub_row0 for i = 0")
    return 0.5 * math.sqrt((i + j + 1) / (i * (j + 1)))


def ub_row0(j: int) -> float:
    """Upper bound (1/2)(1 + sqrt((j + 2) / (j + 1))) for lambda_1 - lambda_{n-j}."""
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}")
    return 0.5 * (1.0 + math.sqrt((j + 2) / (j + 1)))


def upper_bound(i: int, j: int) -> float:
    return ub_row0(j) if i == 0 else ub_general(i, j)


def lb_1j(j: int) -> float:
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    return (j + 2) / (2 * j + 3)


def lb_i0(i: int) -> float:
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    return (i + 1) / (2 * i + 1)


def lb_0j(j: int) -> float:
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    return ((2 * j + 5) + math.sqrt(4 * j * j + 16 * j + 17)) / (4 * (j + 2))


def exact_hadamard(k: int) -> float | None:
    """1/sqrt(2k) when a Sylvester Hadamard matrix of order 2k exists."""
    if k >= 1 and C.hadamard_order_available(2 * k):
        return 1.0 / math.sqrt(2 * k)
    return None


class Sandwich(NamedTuple):
    strict_lower: float
    upper: float


def sandwich_level(i: int, j: int) -> int:
    """Smallest m >= 0 with max(i, j + 1) <= 2**m."""
    top = max(i, j + 1)
    return max(0, (top - 1).bit_length())


def sandwich(i: int, j: int) -> Sandwich:
    """1/(2 sqrt(max(i, j+1))) < s_ij <= 1/sqrt(2 min(i, j+1)).

    The lower end is strict and never certified by a graph; the upper end is
    infinite when i = 0.
    """
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    lo = 1.0 / (2.0 * math.sqrt(max(i, j + 1)))
    m = min(i, j + 1)
    return Sandwich(lo, math.inf if m == 0 else 1.0 / math.sqrt(2 * m))


def sandwich_certified(i: int, j: int) -> float:
    """Lower bound realised by the Hadamard equality graph of order 4 * 2**m."""
    return 1.0 / (2.0 * math.sqrt(2.0 ** (sandwich_level(i, j) - 1)))


# -- table assembly ------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    value: float | None
    source: str
    available: bool = True


@dataclass(frozen=True)
class BoundsCell:
    i: int
    j: int
    upper: Bound
    lower: Bound
    exact: Bound | None = None
    conjectured_exact: bool = False

    @property
    def available(self) -> bool:
        return self.lower.available

    def symbol(self) -> str | None:
        return EXACT_SYMBOLS.get((self.i, self.j)) if self.exact else None


# exact values printed symbolically in the table
EXACT_SYMBOLS = {(0, 0): "2/√3", (1, 0): "1/√2", (2, 1): "1/2", (4, 3): "√2/4"}
MAX_SPREAD_SIMPLE = 2.0 / math.sqrt(3.0)


def certificate(i: int, j: int) -> tuple[str, Callable[[], LoopedGraph] | None]:
    """Name and factory of the best known graph for cell (i, j)."""
    if i == 0 and j == 0:
        return "clique-loops:n=3,t=2", lambda: C.clique_with_loops(3, 2)
    if i == 0:
        return f"clique-loops:n={2 * j + 4},t={j + 2}", lambda: C.clique_with_loops(2 * j + 4, j + 2)
    if i == 1 and j == 0:
        return "p4*", C.closed_path_p4
    if i == 1:
        return f"clique-union:j={j}", lambda: C.clique_union_closed(j)
    if j == 0:
        return f"half-closed-bipartite:i={i}", lambda: C.half_closed_bipartite(i)
    if j == i - 1 and exact_hadamard(i) is not None:
        return f"hadamard-equality:k={i}", lambda: C.hadamard_equality_graph(i)
    for sg in SEARCH_GRAPHS.values():
        if sg.cell == (i, j):
            return sg.name, (sg.graph if sg.available else None)
    raise KeyError(f"no certificate recorded for cell ({i}, {j})")


def _upper(i: int, j: int) -> Bound:
    if (i, j) == (0, 0):
        return Bound(MAX_SPREAD_SIMPLE, "known maximum spread of simple graphs")
    if i == 0:
        return Bound(ub_row0(j), "row-0 bound")
    return Bound(ub_general(i, j), "general (i,j) bound")


def best_known(i: int, j: int) -> BoundsCell:
    if not (0 <= i < TABLE_SIZE and 0 <= j < TABLE_SIZE):
        raise ValueError(f"cell ({i}, {j}) outside the tabulated {TABLE_SIZE}x{TABLE_SIZE} range")
    name, factory = certificate(i, j)
    upper = _upper(i, j)
    if factory is None:
        return BoundsCell(i, j, upper, Bound(None, name, available=False))
    lower = Bound(spread_ratio(factory(), (i, j)), name)
    exact = None
    if (i, j) == (0, 0):
        exact = Bound(MAX_SPREAD_SIMPLE, upper.source)
    elif i >= 1 and j == i - 1 and exact_hadamard(i) is not None:
        exact = Bound(exact_hadamard(i), f"hadamard equality, k={i}")
    conjectured = exact is None and (i == 1 or j == 0 or (i == 0 and j >= 1))
    return BoundsCell(i, j, upper, lower, exact, conjectured)


def formula_cell(i: int, j: int) -> BoundsCell:
    """Bounds from closed forms only, for any (i, j)."""
    upper = Bound(ub_row0(j), "row-0 bound") if i == 0 else Bound(ub_general(i, j), "general (i,j) bound")
    lower = Bound(None, "none")
    exact = None
    if (i, j) == (0, 0):
        upper = _upper(0, 0)
        exact = lower = Bound(MAX_SPREAD_SIMPLE, upper.source)
    elif i >= 1 and j == i - 1 and exact_hadamard(i) is not None:
        exact = Bound(exact_hadamard(i), f"hadamard equality, k={i}")
        lower = Bound(exact.value, f"hadamard-equality:k={i}")
    elif i == 0 and j >= 1:
        lower = Bound(lb_0j(j), "clique-loops closed form")
    elif i == 1 and j >= 1:
        lower = Bound(lb_1j(j), "clique-union closed form")
    elif i >= 1 and j == 0:
        lower = Bound(lb_i0(i), "half-closed-bipartite closed form")
    elif i >= 1:
        lower = Bound(sandwich_certified(i, j), f"hadamard-equality:k={2 ** sandwich_level(i, j)}")
    return BoundsCell(i, j, upper, lower, exact)


def bounds_table(imax: int = TABLE_SIZE - 1, jmax: int = TABLE_SIZE - 1, formulas_only: bool = False) -> list[BoundsCell]:
    cells = []
    for i in range(imax + 1):
        for j in range(jmax + 1):
            cells.append(formula_cell(i, j) if formulas_only else best_known(i, j))
    return cells


def render_cell(cell: BoundsCell) -> tuple[str, str]:
    """(lower, upper) strings as printed in the table."""
    if cell.exact is not None and cell.symbol():
        return cell.symbol(), cell.symbol()
    if not cell.lower.available:
        lower = f"n/a ({cell.lower.source} unavailable)"
    else:
        lower = round3(cell.lower.value)
    return lower, round3(cell.upper.value)
