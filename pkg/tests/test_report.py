import json

import numpy as np
import pytest

from digraph_laplacians import Digraph, rw_laplacian, simulate_continuous, simulate_discrete
from digraph_laplacians.report import (
    analysis_report,
    dumps,
    matrix_to_csv,
    spectrum_svg,
    trajectory_to_csv,
    trajectory_to_dict,
)

from conftest import SEVEN_GAMMA


@pytest.mark.parametrize(
    "value, text",
    [(1.0, "1"), (-0.0, "0"), (2, "2"), (0.1, "0.10000000000000001"), (1 / 3, "0.33333333333333331")],
)
def test_float_formatting(value, text):
    assert dumps(value) == text + "\n"


def test_non_finite_and_complex():
    out = json.loads(dumps({"a": float("nan"), "b": float("inf"), "z": 1.5 - 2j}))
    assert out == {"a": None, "b": None, "z": {"re": 1.5, "im": -2}}


def test_round_trip_is_exact():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(4, 5))
    back = np.array(json.loads(dumps({"m": x}))["m"])
    np.testing.assert_array_equal(back, x)


def test_sets_and_empty_containers():
    assert json.loads(dumps({"s": frozenset({3, 1, 2}), "e": [], "d": {}})) == {"s": [1, 2, 3], "e": [], "d": {}}


def test_unserialisable():
    with pytest.raises(TypeError):
        dumps(object())


def test_matrix_csv():
    assert matrix_to_csv([[1, 0.5], [0, -2]]) == "1,0.5\n0,-2\n"


def test_trajectory_csv_continuous(seven_adj):
    rec = simulate_continuous(rw_laplacian(seven_adj), np.ones(7), 1.0, 2)
    lines = trajectory_to_csv(rec).splitlines()
    assert lines[0] == "time,x_1,x_2,x_3,x_4,x_5,x_6,x_7"
    assert len(lines) == 4 and lines[-1].startswith("1,")


def test_trajectory_csv_discrete_has_cesaro(cycle3):
    from digraph_laplacians import build_adjacency

    rec = simulate_discrete(build_adjacency(cycle3).S, [1.0, 0, 0], 3)
    lines = trajectory_to_csv(rec).splitlines()
    assert lines[0] == "time,x_1,x_2,x_3,cesaro_1,cesaro_2,cesaro_3"
    assert lines[1] == "0,1,0,0,1,0,0"
    d = json.loads(dumps(trajectory_to_dict(rec)))
    assert d["mode"] == "consensus-discrete" and len(d["cesaro"]) == 4


def test_svg_is_self_contained():
    svg = spectrum_svg({"a": [0, 1j, -1], "b": [10 + 0j]})
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "href" not in svg and "http://www.w3.org/2000/svg" in svg
    assert svg.count('r="4"') == 3
    assert "1 point(s) outside view" in svg
    assert 'stroke-dasharray' in svg


def test_analysis_report_seven(seven_graph):
    rep = json.loads(dumps(analysis_report(seven_graph, "rw")))
    assert rep["k"] == 2
    assert rep["graph"] == {"n": 7, "edges": 8, "connectivity": "weak"}
    assert [r["cabal"] for r in rep["reaches"]] == [[1], [3, 4, 5]]
    np.testing.assert_allclose(rep["Gamma"], SEVEN_GAMMA, atol=1e-10)
    assert rep["zeroMultiplicity"] == 2
    assert rep["gersgorin"]["contained"] is True
    assert rep["warnings"] == ["convention loop added at vertices [1]"]


def test_analysis_report_single_vertex():
    rep = analysis_report(Digraph.from_edges(1, []))
    assert rep["k"] == 1
    np.testing.assert_array_equal(rep["Gamma"], [[1.0]])
    assert any("convention loop" in w for w in rep["warnings"])
