import numpy as np
import pytest

from digraph_laplacians import Digraph, ParseError, build_adjacency, parse_digraph, reverse
from digraph_laplacians.taxonomy import reach_decomposition

from conftest import SEVEN_TEXT


def test_parse_seven_graph(seven_graph):
    assert seven_graph.n == 7
    assert seven_graph.edge_count == 8
    assert set(seven_graph.edges) == {
        (1, 2), (1, 6), (6, 7), (7, 6), (3, 4), (4, 5), (5, 3), (3, 7)
    }
    assert all(w == 1.0 for w in seven_graph.edges.values())


def test_parse_single_vertex():
    g = parse_digraph("1")
    assert g.n == 1 and g.edge_count == 0


def test_parse_weights_and_comments():
    g = parse_digraph("# header\n3  # three vertices\n1 2 2.5\n\n2 3 0.5   # trailing\n")
    assert g.n == 3
    assert g.edges == {(1, 2): 2.5, (2, 3): 0.5}


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("3\n1 2\n1", 3, "tail head"),
        ("3\n1 4", 2, "out of range"),
        ("3\n0 1", 2, "out of range"),
        ("3\n1 2 0", 2, "positive"),
        ("3\n1 2 -1.5", 2, "positive"),
        ("3\n1 2\n2 3\n1 2 3", 4, "duplicate"),
        ("x\n1 2", 1, "vertex count"),
        ("3 4\n1 2", 1, "vertex count"),
        ("3\na b", 2, "vertex id"),
        ("3\n1 2 heavy", 2, "weight"),
    ],
)
def test_parse_errors_report_line(text, lineno, fragment):
    with pytest.raises(ParseError) as info:
        parse_digraph(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)
    assert fragment in str(info.value)


def test_parse_empty_document():
    with pytest.raises(ParseError):
        parse_digraph("# nothing here\n\n")


def test_adjacency_matches_printed_q_and_d(seven_adj):
    Q = np.zeros((7, 7))
    for i, j in [(1, 1), (2, 1), (3, 5), (4, 3), (5, 4), (6, 1), (6, 7), (7, 3), (7, 6)]:
        Q[i - 1, j - 1] = 1
    np.testing.assert_array_equal(seven_adj.Q, Q)
    np.testing.assert_array_equal(seven_adj.D, [1, 1, 1, 1, 1, 2, 2])
    assert seven_adj.loop_added == {1}


def test_isolated_vertex_gets_loop():
    a = build_adjacency(parse_digraph("1"))
    assert a.Q.tolist() == [[1.0]] and a.D.tolist() == [1.0] and a.S.tolist() == [[1.0]]
    assert a.loop_added == {1}


def test_three_cycle_s_is_permutation(cycle3):
    a = build_adjacency(cycle3)
    # edge j -> i lands in row i: 1->2 gives S[2,1]
    P = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
    np.testing.assert_array_equal(a.S, P)
    assert a.loop_added == frozenset()


def test_input_self_loop_counts_as_in_edge():
    a = build_adjacency(Digraph.from_edges(2, [(1, 1, 2.0), (1, 2)]))
    assert a.loop_added == frozenset()
    assert a.Q[0, 0] == 2.0 and a.D[0] == 2.0


def test_weighted_rows_stochastic():
    g = Digraph.from_edges(3, [(1, 2, 2.5), (3, 2, 0.5), (2, 3, 4.0)])
    a = build_adjacency(g)
    assert a.D.tolist() == [1.0, 3.0, 4.0]
    np.testing.assert_allclose(a.S[1], [2.5 / 3, 0, 0.5 / 3], rtol=0, atol=1e-15)
    np.testing.assert_allclose(a.S.sum(axis=1), 1.0, atol=1e-12)


def test_matrices_are_read_only(seven_adj):
    with pytest.raises(ValueError):
        seven_adj.Q[0, 0] = 5.0


def test_reverse_chain():
    g = Digraph.from_edges(3, [(1, 2), (2, 3)])
    assert set(reverse(g).edges) == {(2, 1), (3, 2)}


def test_reverse_is_involution(seven_graph):
    assert reverse(reverse(seven_graph)) == seven_graph
    assert reverse(seven_graph) != seven_graph


def test_reverse_changes_reach_count():
    g = Digraph.from_edges(3, [(1, 2), (3, 2)])
    assert reach_decomposition(g).k == 2
    assert reach_decomposition(reverse(g)).k == 1


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(0)
    with pytest.raises(ValueError):
        Digraph(2, {(1, 3): 1.0})
    with pytest.raises(ValueError):
        Digraph(2, {(1, 2): 0.0})
    with pytest.raises(ValueError):
        Digraph.from_edges(2, [(1, 2), (1, 2, 3.0)])


def test_read_digraph(tmp_path):
    from digraph_laplacians import read_digraph

    p = tmp_path / "g.txt"
    p.write_text(SEVEN_TEXT, encoding="utf-8")
    assert read_digraph(p).edge_count == 8
