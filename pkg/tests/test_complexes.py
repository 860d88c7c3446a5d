import itertools
import math

import numpy as np
import pytest

import oracles
from topopool import (
    AttributedGraph,
    Filtration,
    FiltrationError,
    LandmarkSet,
    select_landmarks,
    shortest_paths,
    vr_filtration,
    weak_witnesses,
    witness_filtration,
)


def graph_of(n, edges):
    return AttributedGraph(n, edges, np.zeros((n, 1)))


FOUR_CYCLE = graph_of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


class TestFiltration:
    def test_sorted_by_value_then_dim_then_vertices(self):
        f = Filtration([((0, 1), 1.0), ((1,), 0.0), ((0,), 0.0), ((0, 1, 2), 1.0),
                        ((2,), 0.0), ((0, 2), 1.0), ((1, 2), 0.5)])
        assert [s for s, _ in f.simplices] == [
            (0,), (1,), (2,), (1, 2), (0, 1), (0, 2), (0, 1, 2)]

    def test_value_lookup(self):
        f = Filtration([((0,), 0.0), ((1,), 0.0), ((0, 1), 2.0)])
        assert f.value_of((0, 1)) == 2.0

    def test_missing_face_rejected(self):
        with pytest.raises(FiltrationError, match="face"):
            Filtration([((0,), 0.0), ((0, 1), 1.0)])

    def test_face_after_coface_rejected(self):
        with pytest.raises(FiltrationError):
            Filtration([((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0),
                        ((2,), 2.0), ((0, 2), 1.5), ((1, 2), 1.5),
                        ((0, 1, 2), 1.5)])

    def test_duplicate_rejected(self):
        with pytest.raises(FiltrationError, match="duplicate"):
            Filtration([((0,), 0.0), ((0,), 1.0)])

    def test_unsorted_simplex_rejected(self):
        with pytest.raises(FiltrationError):
            Filtration([((1, 0), 1.0)])

    def test_negative_or_nonfinite_value_rejected(self):
        with pytest.raises(FiltrationError):
            Filtration([((0,), -1.0)])
        with pytest.raises(FiltrationError):
            Filtration([((0,), math.inf)])

    def test_dimension_cap(self):
        with pytest.raises(FiltrationError):
            Filtration([((0, 1, 2, 3), 0.0)])
        with pytest.raises(FiltrationError):
            Filtration([((), 0.0)])

    def test_text_round_trip(self):
        f = vr_filtration(shortest_paths(FOUR_CYCLE))
        back = Filtration.from_text(f.to_text())
        assert back.simplices == f.simplices

    def test_text_format_lines(self):
        f = Filtration([((0,), 0.0), ((1,), 0.0), ((0, 1), 1.5)])
        assert f.to_text().splitlines() == ["0 0.0", "1 0.0", "0 1 1.5"]

    def test_max_values(self):
        f = Filtration([((0,), 0.0), ((1,), 0.0), ((0, 1), 3.0)])
        assert f.max_value == 3.0
        assert f.max_positive_value == 3.0
        assert Filtration([((0,), 0.0)]).max_positive_value is None


class TestVietorisRips:
    def test_single_vertex(self):
        f = vr_filtration(np.zeros((1, 1)))
        assert f.simplices == (((0,), 0.0),)

    def test_unit_triangle(self):
        d = np.array([[0.0, 1, 1], [1, 0, 1], [1, 1, 0]])
        f = vr_filtration(d)
        values = dict(f.simplices)
        assert values[(0, 1, 2)] == 1.0
        assert len(f.simplices) == 3 + 3 + 1

    def test_four_cycle_distance_matrix(self):
        f = vr_filtration(shortest_paths(FOUR_CYCLE))
        values = dict(f.simplices)
        ring = [(0, 1), (1, 2), (2, 3), (0, 3)]
        chords = [(0, 2), (1, 3)]
        assert all(values[e] == 1.0 for e in ring)
        assert all(values[e] == 2.0 for e in chords)
        triangles = [s for s in values if len(s) == 3]
        assert len(triangles) == 4
        assert all(values[t] == 2.0 for t in triangles)

    def test_inf_means_no_bond(self):
        d = np.array([[0.0, math.inf], [math.inf, 0.0]])
        f = vr_filtration(d)
        assert all(len(s) == 1 for s, _ in f.simplices)

    def test_triangle_value_is_max_edge(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(3, 7))
            d = np.zeros((n, n))
            for i in range(n):
                for j in range(i + 1, n):
                    d[i, j] = d[j, i] = float(rng.choice([1.0, 2.0, 4.0]))
            values = dict(vr_filtration(d).simplices)
            for tri in itertools.combinations(range(n), 3):
                a, b, c = tri
                assert values[tri] == max(d[a, b], d[a, c], d[b, c])

    def test_simplex_counts(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            n, edges = oracles.random_graph(rng, 7, weighted=True)
            d = oracles.floyd_warshall(n, edges)
            f = vr_filtration(d)
            finite_pairs = sum(
                1 for i, j in itertools.combinations(range(n), 2)
                if math.isfinite(d[i, j]))
            finite_triples = sum(
                1 for i, j, k in itertools.combinations(range(n), 3)
                if all(math.isfinite(x) for x in (d[i, j], d[i, k], d[j, k])))
            sizes = [len(s) for s, _ in f.simplices]
            assert sizes.count(1) == n
            assert sizes.count(2) == finite_pairs
            assert sizes.count(3) == finite_triples

    def test_max_dim_limits(self):
        d = np.array([[0.0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert max(len(s) for s, _ in vr_filtration(d, max_dim=1).simplices) == 2
        assert max(len(s) for s, _ in vr_filtration(d, max_dim=0).simplices) == 1

    def test_vertex_relabeling(self):
        d = np.array([[0.0, 1.0], [1.0, 0.0]])
        f = vr_filtration(d, vertices=[3, 7])
        assert dict(f.simplices) == {(3,): 0.0, (7,): 0.0, (3, 7): 1.0}

    def test_asymmetric_rejected(self):
        with pytest.raises(FiltrationError):
            vr_filtration(np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_nonzero_diagonal_rejected(self):
        with pytest.raises(FiltrationError):
            vr_filtration(np.array([[1.0]]))


class TestLandmarks:
    def test_degree_on_path(self):
        g = graph_of(4, [(0, 1), (1, 2), (2, 3)])
        lm = select_landmarks(g, "degree", 0.5)
        assert lm.indices == (1, 2)

    def test_full_fraction_takes_all(self):
        g = graph_of(5, [(0, 1), (2, 3)])
        for strategy in ("random", "degree", "betweenness"):
            assert select_landmarks(g, strategy, 1.0).indices == (0, 1, 2, 3, 4)

    def test_ceil_and_clamp(self):
        g = graph_of(10, [(0, 1)])
        assert len(select_landmarks(g, "degree", 0.25)) == 3
        assert len(select_landmarks(g, "degree", 0.01)) == 1

    def test_random_seeded(self):
        g = graph_of(12, [(0, 1)])
        a = select_landmarks(g, "random", 0.4, seed=3)
        b = select_landmarks(g, "random", 0.4, seed=3)
        assert a.indices == b.indices
        assert len(a) == 5
        assert len(set(a.indices)) == 5

    def test_betweenness_matches_oracle_ordering(self):
        rng = np.random.default_rng(21)
        for _ in range(15):
            n, edges = oracles.random_graph(rng, 10, min_nodes=10)
            g = graph_of(n, [(u, v) for u, v, _ in edges])
            scores = oracles.enumerate_betweenness(n, edges)
            expected = tuple(sorted(
                sorted(range(n), key=lambda v: (-scores[v], v))[:3]))
            lm = select_landmarks(g, "betweenness", 0.3)
            assert lm.indices == expected

    def test_bad_inputs(self):
        g = graph_of(3, [(0, 1)])
        with pytest.raises(ValueError):
            select_landmarks(g, "pagerank", 0.5)
        with pytest.raises(ValueError):
            select_landmarks(g, "degree", 0.0)
        with pytest.raises(ValueError):
            select_landmarks(g, "degree", 1.5)

    def test_landmark_set_validation(self):
        with pytest.raises(ValueError):
            LandmarkSet("degree", 0.5, (1, 1))
        with pytest.raises(ValueError):
            LandmarkSet("degree", 0.5, (2, 1))


class TestWeakWitnesses:
    def test_singleton_self_witness(self):
        g = graph_of(3, [(0, 1), (1, 2)])
        d = shortest_paths(g)
        for v in range(3):
            assert v in weak_witnesses((v,), d, (0, 1, 2))

    def test_vacuous_complement(self):
        g = graph_of(3, [(0, 1), (1, 2)])
        d = shortest_paths(g)
        # landmark set {0, 2} and the full pair: every node with finite
        # reach witnesses it because there is no guard landmark left
        assert weak_witnesses((0, 2), d, (0, 2)) == (0, 1, 2)

    def test_infinite_reach_disqualifies(self):
        g = graph_of(3, [(0, 1)])
        d = shortest_paths(g)
        assert 2 not in weak_witnesses((0, 1), d, (0, 1, 2))

    def test_matches_triple_loop(self):
        rng = np.random.default_rng(22)
        for trial in range(30):
            n, edges = oracles.random_graph(rng, 8, weighted=(trial % 2 == 0),
                                            min_nodes=4)
            g = graph_of(n, edges)
            d = shortest_paths(g)
            dist = oracles.floyd_warshall(n, edges)
            lm = sorted(rng.choice(n, size=4, replace=False).tolist())
            for size in (1, 2, 3):
                for sigma in itertools.combinations(lm, size):
                    others = [u for u in lm if u not in sigma]
                    expected = tuple(
                        w for w in range(n)
                        if math.isfinite(max(dist[w][v] for v in sigma))
                        and max(dist[w][v] for v in sigma)
                        <= min((dist[w][u] for u in others), default=math.inf))
                    assert weak_witnesses(sigma, d, lm) == expected


class TestWitnessFiltration:
    def test_single_landmark(self):
        g = graph_of(4, [(0, 1), (1, 2), (2, 3)])
        f = witness_filtration(g, (2,))
        assert f.simplices == (((2,), 0.0),)

    def test_path_two_landmarks(self):
        g = graph_of(3, [(0, 1), (1, 2)])
        f = witness_filtration(g, (0, 2))
        assert dict(f.simplices) == {(0,): 0.0, (2,): 0.0, (0, 2): 1.0}

    def test_k5_three_landmarks_full_simplex(self):
        g = graph_of(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
        f = witness_filtration(g, (0, 2, 4))
        values = dict(f.simplices)
        assert set(values) == {(0,), (2,), (4,), (0, 2), (0, 4), (2, 4), (0, 2, 4)}
        assert values[(0, 2, 4)] == 1.0
        assert all(values[(v,)] == 0.0 for v in (0, 2, 4))

    def test_matches_enumeration_oracle(self):
        rng = np.random.default_rng(23)
        for trial in range(60):
            n, edges = oracles.random_graph(rng, 8, weighted=(trial % 3 == 0))
            g = graph_of(n, edges)
            k = int(rng.integers(1, n + 1))
            lm = sorted(rng.choice(n, size=k, replace=False).tolist())
            expected = oracles.witness_complex_oracle(n, edges, lm)
            got = dict(witness_filtration(g, tuple(lm)).simplices)
            assert got == expected

    def test_accepts_landmark_set_object(self):
        g = graph_of(3, [(0, 1), (1, 2)])
        lm = select_landmarks(g, "degree", 0.67)
        f = witness_filtration(g, lm)
        assert all(set(s) <= set(lm.indices) for s, _ in f.simplices)

    def test_downward_closed_output(self):
        rng = np.random.default_rng(24)
        for _ in range(20):
            n, edges = oracles.random_graph(rng, 8)
            g = graph_of(n, edges)
            lm = sorted(rng.choice(n, size=min(4, n), replace=False).tolist())
            simplices = {s for s, _ in witness_filtration(g, tuple(lm)).simplices}
            for s in simplices:
                for face in itertools.combinations(s, len(s) - 1):
                    assert len(face) == 0 or face in simplices
