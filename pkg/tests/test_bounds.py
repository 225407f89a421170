import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphspread import bounds as B
from graphspread.constructions import hadamard_equality_graph
from graphspread.spectral import spread_ratio


def test_round3_half_away_from_zero():
    assert B.round3(0.5475) == "0.548"
    assert B.round3(0.4145) == "0.415"
    assert B.round3(1.0) == "1.000"
    assert B.round3(0.54772) == "0.548"


def test_upper_bound_values():
    assert B.ub_general(1, 0) == pytest.approx(1 / math.sqrt(2))
    assert B.ub_general(2, 1) == pytest.approx(0.5)
    assert B.ub_general(1, 1) == pytest.approx(math.sqrt(3 / 2) / 2)
    assert B.ub_row0(0) == pytest.approx((1 + math.sqrt(2)) / 2)
    assert B.ub_row0(1) == pytest.approx((1 + math.sqrt(1.5)) / 2)
    with pytest.raises(ValueError):
        B.ub_general(0, 1)
    with pytest.raises(ValueError):
        B.ub_row0(-1)


def test_lower_bound_values():
    assert B.lb_1j(1) == pytest.approx(3 / 5)
    assert B.lb_i0(1) == pytest.approx(2 / 3)
    assert B.lb_i0(2) == pytest.approx(3 / 5)
    assert B.lb_0j(1) == pytest.approx((7 + math.sqrt(37)) / 12)
    for f in (B.lb_1j, B.lb_i0, B.lb_0j):
        with pytest.raises(ValueError):
            f(0)


@given(st.integers(1, 200), st.integers(0, 200))
def test_closed_forms_below_upper(i, j):
    if j >= 1:
        assert B.lb_1j(j) <= B.ub_general(1, j) + 1e-12
        assert B.lb_0j(j) <= B.ub_row0(j) + 1e-12
    assert B.lb_i0(i) <= B.ub_general(i, 0) + 1e-12


def test_bounds_close_for_large_j():
    assert B.ub_general(1, 100) - B.lb_1j(100) < 0.003
    assert B.ub_row0(100) - B.lb_0j(100) < 0.003


@pytest.mark.parametrize("k", [1, 2, 4, 8, 16])
def test_hadamard_meets_upper_bound(k):
    assert B.exact_hadamard(k) == pytest.approx(B.ub_general(k, k - 1))
    assert spread_ratio(hadamard_equality_graph(k), (k, k - 1)) == pytest.approx(B.exact_hadamard(k))


def test_exact_hadamard_unavailable():
    assert B.exact_hadamard(3) is None and B.exact_hadamard(0) is None


@given(st.integers(0, 64), st.integers(0, 64))
def test_sandwich(i, j):
    sw = B.sandwich(i, j)
    assert sw.strict_lower < sw.upper
    assert B.sandwich_certified(i, j) > sw.strict_lower
    if i >= 1:
        assert B.sandwich_certified(i, j) <= sw.upper + 1e-12
        assert B.upper_bound(i, j) <= sw.upper + 1e-12
    else:
        assert sw.upper == math.inf


def test_sandwich_certified_by_graph():
    # level m: Hadamard graph with k = 2**m realises the certified bound at (i, j)
    for i, j in [(1, 1), (2, 2), (3, 1), (3, 4), (5, 2)]:
        m = B.sandwich_level(i, j)
        k = 2**m
        g = hadamard_equality_graph(k)
        assert spread_ratio(g, (i, j)) >= B.sandwich_certified(i, j) - 1e-9


def test_best_known_matches_formulas():
    for i in range(B.TABLE_SIZE):
        for j in range(B.TABLE_SIZE):
            cell = B.best_known(i, j)
            assert cell.upper.value == pytest.approx(B.formula_cell(i, j).upper.value) or (i, j) == (0, 0)
            if cell.available:
                assert cell.lower.value <= cell.upper.value + 1e-9
    assert B.best_known(1, 3).lower.value == pytest.approx(B.lb_1j(3))
    assert B.best_known(3, 0).lower.value == pytest.approx(B.lb_i0(3))
    assert B.best_known(0, 2).lower.value == pytest.approx(B.lb_0j(2))


def test_unavailable_cells():
    for cell in [(3, 3), (4, 2)]:
        c = B.best_known(*cell)
        assert not c.available
        assert "unavailable" in B.render_cell(c)[0]


def test_exact_cells_render_symbols():
    assert B.render_cell(B.best_known(0, 0)) == ("2/√3", "2/√3")
    assert B.render_cell(B.best_known(4, 3)) == ("√2/4", "√2/4")
    assert B.best_known(1, 0).symbol() == "1/√2"
    assert B.best_known(1, 1).symbol() is None
    assert B.render_cell(B.best_known(1, 1)) == ("0.600", "0.612")


def test_bounds_table_shape():
    assert len(B.bounds_table()) == 25
    cells = B.bounds_table(9, 9, formulas_only=True)
    assert len(cells) == 100
    assert all(c.lower.value is not None for c in cells)
    with pytest.raises(ValueError):
        B.best_known(5, 0)
