import json
import math

import numpy as np
import pytest

from dirlap import (
    DirectedGraph,
    DisconnectedError,
    DuplicateEdgeError,
    EmptySubsetError,
    InputParseError,
    IsolatedDirectionError,
    NonPositiveMeasureError,
    NonPositiveWeightError,
    SchemaViolationError,
    SelfLoopError,
    beta,
    boundaries,
    build_graph,
    check_kirchhoff,
    connectivity,
    gen_cycle,
    gen_opposing_cycles,
    gen_random_circulation,
    graph_from_json_obj,
    graph_to_json_obj,
    load_graph,
    save_graph,
    schrodinger_potential,
    subset_array,
)


def triangle():
    return gen_cycle(3)


class TestBuildGraph:
    def test_basic_fields(self):
        g = build_graph([1.0, 2.0], [(0, 1, 3.0), (1, 0, 3.0)])
        assert g.n == 2
        assert g.measure.tolist() == [1.0, 2.0]
        assert g.edge_from.tolist() == [0, 1]
        assert g.edge_to.tolist() == [1, 0]
        assert g.edge_weight.tolist() == [3.0, 3.0]

    def test_edges_sorted_canonically(self):
        g = build_graph(
            [1.0, 1.0, 1.0],
            [(2, 0, 1.0), (0, 1, 1.0), (1, 2, 1.0), (0, 2, 0.5), (2, 1, 0.5), (1, 0, 0.5)],
        )
        pairs = list(zip(g.edge_from.tolist(), g.edge_to.tolist()))
        assert pairs == sorted(pairs)

    def test_arrays_are_read_only(self):
        g = triangle()
        with pytest.raises(ValueError):
            g.measure[0] = 5.0
        with pytest.raises(ValueError):
            g.edge_weight[0] = 5.0

    def test_rejects_nonpositive_measure(self):
        with pytest.raises(NonPositiveMeasureError):
            build_graph([1.0, 0.0], [(0, 1, 1.0), (1, 0, 1.0)])
        with pytest.raises(NonPositiveMeasureError):
            build_graph([1.0, -2.0], [(0, 1, 1.0), (1, 0, 1.0)])

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(NonPositiveWeightError):
            build_graph([1.0, 1.0], [(0, 1, 0.0), (1, 0, 1.0)])

    def test_rejects_self_loop(self):
        with pytest.raises(SelfLoopError):
            build_graph([1.0, 1.0], [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0)])

    def test_rejects_out_of_range_endpoint(self):
        with pytest.raises(SchemaViolationError):
            build_graph([1.0, 1.0], [(0, 2, 1.0), (1, 0, 1.0)])
        with pytest.raises(SchemaViolationError):
            build_graph([1.0, 1.0], [(-1, 0, 1.0), (1, 0, 1.0)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph([1.0, 1.0], [(0, 1, 1.0), (0, 1, 2.0), (1, 0, 3.0)])

    def test_rejects_isolated_vertex(self):
        with pytest.raises(IsolatedDirectionError):
            build_graph([1.0, 1.0, 1.0], [(0, 1, 1.0), (1, 0, 1.0)])

    def test_rejects_vertex_missing_one_direction(self):
        # vertex 2 has an incoming edge but no outgoing edge
        with pytest.raises(IsolatedDirectionError):
            build_graph([1.0, 1.0, 1.0], [(0, 1, 1.0), (1, 0, 1.0), (0, 2, 1.0)])


class TestDegreeSums:
    def test_beta_on_cycle(self):
        g = gen_cycle(4, w=2.5)
        assert g.beta_plus.tolist() == [2.5] * 4
        assert g.beta_minus.tolist() == [2.5] * 4
        out, inc = beta(g)
        assert out.tolist() == [2.5] * 4
        assert inc.tolist() == [2.5] * 4

    def test_beta_matches_weight_matrix(self):
        g = gen_random_circulation(7, 3, seed=11)
        B = g.weight_matrix
        assert np.allclose(g.beta_plus, B.sum(axis=1))
        assert np.allclose(g.beta_minus, B.sum(axis=0))

    def test_weight_matrix_entries(self):
        g = build_graph([1.0, 1.0], [(0, 1, 2.0), (1, 0, 3.0)])
        B = g.weight_matrix
        assert B[0, 1] == 2.0
        assert B[1, 0] == 3.0
        assert B[0, 0] == 0.0


class TestKirchhoff:
    def test_cycle_is_balanced(self):
        report = check_kirchhoff(gen_cycle(5))
        assert report.satisfied
        assert report.max_violation == 0.0
        assert report.violating_vertices == ()

    def test_circulation_generator_is_balanced(self):
        for seed in range(5):
            g = gen_random_circulation(8, 4, seed=seed)
            assert check_kirchhoff(g).satisfied

    def test_unbalanced_graph_detected(self):
        # path-like traffic: 0 -> 1 heavy, 1 -> 0 light
        g = build_graph([1.0, 1.0], [(0, 1, 2.0), (1, 0, 1.0)])
        report = check_kirchhoff(g)
        assert not report.satisfied
        assert report.max_violation == pytest.approx(1.0)
        assert report.violating_vertices == (0, 1)

    def test_tolerance_is_relative_to_scale(self):
        # imbalance of 1e-12 on weights of size ~1e3 is within the default
        g = build_graph([1.0, 1.0], [(0, 1, 1000.0), (1, 0, 1000.0 + 1e-9)])
        assert check_kirchhoff(g).satisfied
        assert not check_kirchhoff(g, tol=1e-12).satisfied

    def test_report_json_shape(self):
        obj = check_kirchhoff(triangle()).to_json_obj()
        assert obj["satisfied"] is True
        assert set(obj) == {"satisfied", "max_violation", "violating_vertices", "tolerance"}

    def test_potential_vanishes_iff_balanced(self):
        g = gen_random_circulation(6, 3, seed=3)
        assert np.allclose(schrodinger_potential(g), 0.0)
        bad = build_graph([2.0, 1.0], [(0, 1, 3.0), (1, 0, 1.0)])
        q = schrodinger_potential(bad)
        assert q.tolist() == [(3.0 - 1.0) / 2.0, (1.0 - 3.0) / 1.0]


class TestSubsetsAndBoundaries:
    def test_subset_array_sorts_and_dedupes(self):
        g = gen_cycle(5)
        assert subset_array(g, [3, 1, 1]).tolist() == [1, 3]

    def test_subset_array_rejects_empty(self):
        with pytest.raises(EmptySubsetError):
            subset_array(gen_cycle(3), [])

    def test_subset_array_rejects_out_of_range(self):
        with pytest.raises(SchemaViolationError):
            subset_array(gen_cycle(3), [0, 3])

    def test_boundary_on_cycle(self):
        g = gen_cycle(4)
        touched, crossing = boundaries(g, [0, 1])
        assert touched == [0, 1]
        assert sorted(crossing) == [(1, 2, 1.0), (3, 0, 1.0)]

    def test_boundary_counts_both_directions(self):
        g = gen_opposing_cycles(3)
        touched, crossing = boundaries(g, [0])
        assert touched == [0]
        # forward weight 2 and backward weight 1 on each side of vertex 0
        total = sum(w for _, _, w in crossing)
        assert total == pytest.approx(6.0)

    def test_interior_vertex_not_touched(self):
        # 4-cycle with chord edges so {0,1,2} has 1 interior vertex
        g = gen_cycle(4)
        touched, _ = boundaries(g, [0, 1, 2])
        assert touched == [0, 2]


class TestConnectivity:
    def test_cycle_connected_both_senses(self):
        und, strong = connectivity(gen_cycle(6))
        assert und and strong

    def test_disconnected_components(self):
        g = build_graph(
            [1.0] * 4,
            [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)],
        )
        und, strong = connectivity(g)
        assert not und and not strong


class TestJsonRoundTrip:
    def test_round_trip_preserves_everything(self):
        g = gen_random_circulation(9, 4, seed=7)
        g2 = graph_from_json_obj(graph_to_json_obj(g))
        assert g2.n == g.n
        assert np.array_equal(g2.measure, g.measure)
        assert np.array_equal(g2.edge_from, g.edge_from)
        assert np.array_equal(g2.edge_to, g.edge_to)
        assert np.array_equal(g2.edge_weight, g.edge_weight)

    def test_json_obj_shape(self):
        obj = graph_to_json_obj(gen_cycle(3))
        assert set(obj) == {"vertices", "edges"}
        assert obj["vertices"][0] == {"id": 0, "m": 1.0}
        assert obj["edges"][0] == {"from": 0, "to": 1, "b": 1.0}

    def test_ids_must_be_dense(self):
        obj = graph_to_json_obj(gen_cycle(3))
        obj["vertices"][2]["id"] = 5
        with pytest.raises(SchemaViolationError):
            graph_from_json_obj(obj)

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "g.json"
        g = gen_random_circulation(6, 3, seed=0)
        save_graph(g, path)
        g2 = load_graph(path)
        assert np.array_equal(g2.edge_weight, g.edge_weight)
        # file ends with a newline and is stable json
        text = path.read_text()
        assert text.endswith("\n")
        assert json.loads(text) == graph_to_json_obj(g)

    def test_load_rejects_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InputParseError):
            load_graph(path)

    def test_load_rejects_missing_file(self, tmp_path):
        with pytest.raises(InputParseError):
            load_graph(tmp_path / "nope.json")

    def test_load_rejects_wrong_shape(self, tmp_path):
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps({"vertices": []}))
        with pytest.raises(SchemaViolationError):
            load_graph(path)


def test_dataclass_is_frozen():
    g = triangle()
    with pytest.raises(AttributeError):
        g.n = 7


def test_edges_iterator_matches_arrays():
    g = gen_random_circulation(5, 2, seed=9)
    listed = list(g.edges())
    assert listed == list(
        zip(g.edge_from.tolist(), g.edge_to.tolist(), g.edge_weight.tolist())
    )


def test_measure_defaults_are_preserved():
    g = gen_cycle(3)
    assert math.isclose(float(g.measure.sum()), 3.0)
    assert isinstance(g, DirectedGraph)


def test_disconnected_error_is_importable():
    assert issubclass(DisconnectedError, Exception)
