import numpy as np
from hypothesis import given, settings, strategies as st

from digraph_laplacians import (
    Digraph,
    build_adjacency,
    comb_laplacian,
    eigenvalues,
    gamma_matrix,
    kernel_basis,
    matrix_exponential,
    reach_decomposition,
    rw_laplacian,
    simulate_discrete,
    strongly_connected_components,
)
from digraph_laplacians.dynamics import cesaro_matrix
from digraph_laplacians.taxonomy import weak_components

from oracles import brute_reaches, brute_sccs


@st.composite
def weakly_connected_digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    edges = {}
    for v in range(2, n + 1):
        u = draw(st.integers(1, v - 1))
        pair = (u, v) if draw(st.booleans()) else (v, u)
        edges[pair] = draw(st.floats(0.1, 10.0))
    extra = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=2 * n))
    for u, v in extra:
        if u != v:
            edges[(u, v)] = draw(st.floats(0.1, 10.0))
    return Digraph(n, edges)


@given(weakly_connected_digraphs())
@settings(max_examples=60, deadline=None)
def test_sccs_match_brute_force(g):
    cond = strongly_connected_components(g)
    assert sorted(map(sorted, cond.sccs)) == sorted(map(sorted, brute_sccs(g.n, list(g.edges))))
    for a, b in cond.dag_edges:
        assert a < b


@given(weakly_connected_digraphs())
@settings(max_examples=60, deadline=None)
def test_reaches_match_brute_force(g):
    rd = reach_decomposition(g)
    expected = [sorted(r) for r, _ in brute_reaches(g.n, list(g.edges))]
    assert [sorted(r.reach) for r in rd] == expected
    assert frozenset().union(*(r.reach for r in rd)) == frozenset(range(1, g.n + 1))


@given(weakly_connected_digraphs(), st.sampled_from(["comb", "rw"]))
@settings(max_examples=60, deadline=None)
def test_gamma_is_kernel_projection(g, kind):
    a = build_adjacency(g)
    lap = comb_laplacian(a) if kind == "comb" else rw_laplacian(a)
    rd = reach_decomposition(g)
    G = gamma_matrix(kernel_basis(lap, rd))
    assert np.abs(G @ G - G).max() < 1e-8
    assert np.abs(lap.M @ G).max() < 1e-8
    assert np.abs(G @ lap.M).max() < 1e-8
    assert np.abs(G.sum(axis=1) - 1).max() < 1e-9
    assert G.min() > -1e-12
    assert eigenvalues(lap.M).zero_multiplicity(1e-7) == rd.k


@given(weakly_connected_digraphs(max_n=6), st.sampled_from(["comb", "rw"]))
@settings(max_examples=30, deadline=None)
def test_exponential_is_stochastic_and_tends_to_gamma(g, kind):
    a = build_adjacency(g)
    lap = comb_laplacian(a) if kind == "comb" else rw_laplacian(a)
    E = matrix_exponential(lap.M, 1.0)
    assert np.abs(E.sum(axis=1) - 1).max() < 1e-10
    assert E.min() > -1e-12


@given(weakly_connected_digraphs(max_n=6), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_discrete_diffusion_conserves_mass_and_sign(g, seed):
    p0 = np.random.default_rng(seed).uniform(size=g.n)
    rec = simulate_discrete(build_adjacency(g).S, p0, 50, "diffusion")
    assert np.abs(rec.states.sum(axis=1) - p0.sum()).max() < 1e-9
    assert rec.states.min() >= 0.0


@given(weakly_connected_digraphs(max_n=6))
@settings(max_examples=30, deadline=None)
def test_cesaro_rows_are_stochastic(g):
    C = cesaro_matrix(build_adjacency(g).S, 25)
    assert np.abs(C.sum(axis=1) - 1).max() < 1e-12


@given(st.integers(2, 7), st.data())
@settings(max_examples=30, deadline=None)
def test_weak_components_partition(n, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=n))
    g = Digraph.from_edges(n, sorted({(u, v) for u, v in pairs if u != v}))
    comps = weak_components(g)
    assert sorted(v for c in comps for v in c) == list(range(1, n + 1))
    for u, v in g.edges:
        assert any(u in c and v in c for c in comps)
