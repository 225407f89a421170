import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphspread.constructions import closed_path_p4, hadamard_equality_graph
from graphspread.eigen import ConvergenceError, householder_tridiagonalize, implicit_ql, jacobi, tridiagonal_ql
from graphspread.graph import LoopedGraph, blowup, build, complete, degree_profile, empty, underlying_simple
from graphspread.spectral import SpreadQuery, eigenvalues, singular_values, spread, spread_ratio


@st.composite
def looped_graphs(draw, max_n=15):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.floats(0, 1))
    rng = np.random.default_rng(seed)
    a = np.triu((rng.random((n, n)) < p).astype(np.uint8))
    return LoopedGraph(a | np.triu(a, 1).T)


def test_p4_spectrum():
    r = math.sqrt(2)
    spec = eigenvalues(closed_path_p4())
    np.testing.assert_allclose(spec.values, [2, r, 0, -r], atol=1e-12)
    assert spec[1] == pytest.approx(2) and spec[4] == pytest.approx(-r)
    assert spread(closed_path_p4(), (1, 0)) == pytest.approx(2 * r, abs=1e-12)
    assert spread_ratio(closed_path_p4(), (1, 0)) == pytest.approx(1 / r, abs=1e-12)


def test_small_spectra():
    np.testing.assert_allclose(eigenvalues(empty(5)).values, 0, atol=1e-12)
    np.testing.assert_allclose(eigenvalues(build(1, loops=[0])).values, [1])
    np.testing.assert_allclose(eigenvalues(complete(4)).values, [3, -1, -1, -1], atol=1e-12)


def test_spread_zero_zero_is_classical_spread():
    k2 = complete(2)
    assert spread(k2, (0, 0)) == pytest.approx(2)
    assert spread(empty(1), (0, 0)) == 0


@pytest.mark.parametrize("q, n", [((4, 0), 4), ((0, 4), 4), ((-1, 0), 4)])
def test_query_validation(q, n):
    assert SpreadQuery(*q).is_valid(n) is False
    with pytest.raises(IndexError):
        spread(empty(n), q)


def test_query_boundaries():
    assert SpreadQuery(3, 0).is_valid(4) and SpreadQuery(0, 3).is_valid(4)
    # i + 1 > n - j is allowed and yields a nonpositive spread
    assert spread(closed_path_p4(), (3, 3)) <= 0


@pytest.mark.parametrize("method", ["ql", "jacobi", "lapack"])
def test_methods_agree(method):
    rng = np.random.default_rng(11)
    for _ in range(500):
        n = int(rng.integers(1, 21))
        a = np.triu((rng.random((n, n)) < rng.random()).astype(np.uint8))
        g = LoopedGraph(a | np.triu(a, 1).T)
        # oracle: LAPACK directly
        want = np.sort(np.linalg.eigvalsh(g.matrix()))[::-1]
        np.testing.assert_allclose(eigenvalues(g, method=method).values, want, atol=1e-8)


@given(looped_graphs(20))
@settings(max_examples=200, deadline=None)
def test_reconstruction(g):
    spec = eigenvalues(g, basis=True)
    u, lam = spec.basis, spec.values
    np.testing.assert_allclose(u @ np.diag(lam) @ u.T, g.matrix(), atol=1e-9)
    np.testing.assert_allclose(u.T @ u, np.eye(g.n), atol=1e-9)
    assert spec.residual < 1e-9


@given(looped_graphs(20))
@settings(max_examples=200, deadline=None)
def test_trace_identities(g):
    lam = eigenvalues(g).values
    assert lam.sum() == pytest.approx(len(g.loops), abs=1e-9)
    assert (lam**2).sum() == pytest.approx(sum(degree_profile(g).degrees), abs=1e-8)
    assert np.all(np.diff(lam) <= 1e-12)


@given(looped_graphs(20))
@settings(max_examples=200, deadline=None)
def test_largest_eigenvalue_at_least_average_degree(g):
    assert eigenvalues(g)[1] >= float(degree_profile(g).average) - 1e-9


@given(looped_graphs(20))
@settings(max_examples=100, deadline=None)
def test_singular_values(g):
    want = np.sort(np.linalg.svd(g.matrix(), compute_uv=False))[::-1]
    np.testing.assert_allclose(singular_values(g), want, atol=1e-9)


@given(looped_graphs(20), st.integers(0, 19))
@settings(max_examples=200, deadline=None)
def test_singular_value_bound(g, i):
    # sigma_{i+1} <= n / (2 sqrt(i)) for simple graphs and i >= 1
    h = underlying_simple(g)
    if 1 <= i < h.n:
        assert singular_values(h)[i] <= h.n / (2 * math.sqrt(i)) + 1e-9


@given(looped_graphs(6), st.integers(1, 3), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_blowup_ratio_invariant(g, t, i, j):
    # the t - 1 zero eigenvalues per vertex must not fall between the two indices
    if i + 1 <= g.n and j + 1 <= g.n:
        lam = eigenvalues(g).values
        if not (lam[i] > 1e-9 and lam[g.n - j - 1] < -1e-9):
            return
        assert spread_ratio(blowup(g, t), (i, j)) == pytest.approx(spread_ratio(g, (i, j)), abs=1e-9)


def test_hadamard_exact_spread():
    for k in (1, 2, 4):
        assert spread_ratio(hadamard_equality_graph(k), (k, k - 1)) == pytest.approx(1 / math.sqrt(2 * k), abs=1e-9)


def test_tridiagonalization_preserves_spectrum():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((9, 9))
    a = a + a.T
    d, e, q = householder_tridiagonalize(a)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(q @ t @ q.T, a, atol=1e-10)
    vals, _ = implicit_ql(d.copy(), e.copy())
    np.testing.assert_allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-10)


def test_jacobi_and_ql_on_dense_symmetric():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((12, 12))
    a = a + a.T
    for solver in (jacobi, tridiagonal_ql):
        vals, vecs = solver(a)
        np.testing.assert_allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-10)
        np.testing.assert_allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-10)


def test_convergence_error_carries_residual():
    err = ConvergenceError("no", 0.5)
    assert err.residual == 0.5


def test_unknown_method():
    with pytest.raises(ValueError):
        eigenvalues(empty(2), method="power")
