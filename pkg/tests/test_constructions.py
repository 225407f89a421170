import itertools
import math

import numpy as np
import pytest

from graphspread.constructions import (
    HadamardMatrix,
    clique_union_closed,
    clique_with_loops,
    closed_cube_q3,
    closed_path_p4,
    construct,
    hadamard_equality_graph,
    hadamard_order_available,
    half_closed_bipartite,
    parse_construction,
    sylvester_hadamard,
)
from graphspread.graph import GraphError, is_isomorphic
from graphspread.spectral import eigenvalues, spread_ratio


def lapack(g):
    return np.sort(np.linalg.eigvalsh(g.matrix()))[::-1]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_sylvester_properties(m):
    h = sylvester_hadamard(m)
    assert h.order == 2**m
    assert h.is_symmetric
    assert h.trace == 0
    e = h.entries
    assert np.array_equal(e @ e.T, h.order * np.eye(h.order, dtype=int))


def test_hadamard_matrix_validation():
    with pytest.raises(ValueError):
        HadamardMatrix([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        HadamardMatrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        sylvester_hadamard(0)


def test_order_availability():
    assert [o for o in range(1, 40) if hadamard_order_available(o)] == [2, 4, 8, 16, 32]


def test_hadamard_k1_is_p4():
    g = hadamard_equality_graph(1)
    assert is_isomorphic(g, closed_path_p4())
    np.testing.assert_allclose(lapack(g), [2, math.sqrt(2), 0, -math.sqrt(2)], atol=1e-12)


def test_q3_spectrum_and_shape():
    g = closed_cube_q3()
    assert g.n == 8
    np.testing.assert_allclose(eigenvalues(g).values, [4, 2, 2, 0, 0, 0, -2, -2], atol=1e-9)
    assert len(g.loops) == 4
    assert set(g.adj.sum(axis=1)) == {4}


@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_hadamard_spectrum(k):
    g = hadamard_equality_graph(k)
    r = math.sqrt(2 * k)
    want = [2 * k] + [r] * k + [0] * (2 * k - 1) + [-r] * k
    vals = eigenvalues(g).values
    np.testing.assert_allclose(lapack(g), want, atol=1e-9)
    np.testing.assert_allclose(vals, want, atol=1e-9)
    assert spread_ratio(g, (k, k - 1)) == pytest.approx(1 / r, abs=1e-12)


@pytest.mark.parametrize("k", [0, 3, 5, 6])
def test_hadamard_unavailable(k):
    with pytest.raises(GraphError):
        hadamard_equality_graph(k)


@pytest.mark.parametrize("j", range(1, 8))
def test_clique_union_spectrum(j):
    g = clique_union_closed(j)
    want = sorted([j + 1.0, j + 1.0] + [0.0] * j + [-1.0] * (j + 1), reverse=True)
    np.testing.assert_allclose(lapack(g), want, atol=1e-9)
    assert spread_ratio(g, (1, j)) == pytest.approx((j + 2) / (2 * j + 3), abs=1e-12)


@pytest.mark.parametrize("i", range(1, 8))
def test_half_closed_bipartite(i):
    g = half_closed_bipartite(i)
    assert g.n == 2 * i + 1 and len(g.loops) == i + 1
    # (i+1)*J on the looped side has eigenvalue pattern {i+1, 1^i, 0^(i-1), -i}
    want = [i + 1.0] + [1.0] * i + [0.0] * (i - 1) + [-float(i)]
    np.testing.assert_allclose(lapack(g), want, atol=1e-9)
    assert spread_ratio(g, (i, 0)) == pytest.approx((i + 1) / (2 * i + 1), abs=1e-12)


@pytest.mark.parametrize("j", range(0, 7))
def test_clique_loops(j):
    n, t = 2 * j + 4, j + 2
    g = clique_with_loops(n, t)
    vals = lapack(g)
    big = (2 * j + 3 + math.sqrt(4 * j * j + 16 * j + 17)) / 2
    small = (2 * j + 3 - math.sqrt(4 * j * j + 16 * j + 17)) / 2
    want = sorted([big, small] + [0.0] * (t - 1) + [-1.0] * (n - t - 1), reverse=True)
    np.testing.assert_allclose(vals, want, atol=1e-9)
    assert vals[-1] == pytest.approx(-1.0)
    assert -1 < small < 0


def test_clique_loops_edge_cases():
    assert clique_with_loops(3, 0).is_simple
    assert len(clique_with_loops(3, 3).loops) == 3
    with pytest.raises(GraphError):
        clique_with_loops(3, 4)


def test_registry_and_parser():
    assert construct("clique-loops", n=8, t=4) == clique_with_loops(8, 4)
    assert parse_construction("clique-union:j=2") == clique_union_closed(2)
    assert parse_construction("p4*") == closed_path_p4()
    with pytest.raises(GraphError):
        construct("nope")
    with pytest.raises(GraphError):
        construct("clique-union", i=2)
    with pytest.raises(GraphError):
        parse_construction("clique-union:j")


def test_families_are_valid_graphs():
    for g in itertools.chain(
        (hadamard_equality_graph(k) for k in (1, 2, 4)),
        (clique_union_closed(j) for j in (1, 3)),
        (half_closed_bipartite(i) for i in (1, 4)),
    ):
        assert np.array_equal(g.adj, g.adj.T)
