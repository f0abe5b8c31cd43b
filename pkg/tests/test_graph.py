import math
import pickle
import random

import pytest

from zdg.construct import build_classic
from zdg.graph import (
    INF, UNDEFINED, GraphError, SimpleGraph, bridges, common_neighbors, components, core, diameter,
    distance, edge_in_short_cycle, farthest_pair, girth, iso_check, is_connected, label_key,
    path_short_cycle, paths_of_length_two,
)
from zdg.semigroup import zn_multiplicative

from oracles import (
    bridges_by_removal, core_edges_by_cycles, floyd_diameter, girth_by_cycles, random_graph,
)


def path(n):
    vs = [f"p{i}" for i in range(n)]
    return SimpleGraph.build(vs, zip(vs, vs[1:]))


def cycle(n, prefix="c"):
    vs = [f"{prefix}{i}" for i in range(n)]
    return SimpleGraph.build(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def z12():
    return build_classic(zn_multiplicative(12))


def E(*pairs):
    return {frozenset(map(str, p)) for p in pairs}


class TestStructure:
    def test_self_loop_rejected(self):
        with pytest.raises(GraphError):
            SimpleGraph.build(["a"], [("a", "a")])

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            path(3).neighbors("zz")

    def test_edges_add_vertices(self):
        G = SimpleGraph.build([], [("a", "b")])
        assert set(G.vertices) == {"a", "b"}

    def test_natural_sort(self):
        assert sorted(["10", "2", "1"], key=label_key) == ["1", "2", "10"]

    def test_undefined_is_picklable_singleton(self):
        assert pickle.loads(pickle.dumps(UNDEFINED)) is UNDEFINED


class TestDistances:
    def test_z6(self):
        G = build_classic(zn_multiplicative(6))
        assert diameter(G) == 2
        assert distance(G, "2", "4") == 2

    def test_cross_component(self):
        G = SimpleGraph.build([], [("a", "b"), ("c", "d")])
        assert distance(G, "a", "c") == INF
        assert diameter(G) == INF
        assert not is_connected(G)
        assert len(components(G)) == 2

    def test_single_edge(self):
        assert diameter(SimpleGraph.build([], [("a", "b")])) == 1

    def test_empty_and_single_vertex(self):
        assert diameter(SimpleGraph.build()) is UNDEFINED
        assert diameter(SimpleGraph.build(["a"])) is UNDEFINED

    def test_farthest_pair(self):
        u, v, d = farthest_pair(path(5))
        assert d == 4 and {u, v} == {"p0", "p4"}

    def test_against_floyd(self):
        rng = random.Random(7)
        for _ in range(200):
            vs, es = random_graph(rng, 20)
            G = SimpleGraph.build(vs, [tuple(e) for e in es])
            ref = floyd_diameter(vs, es)
            got = diameter(G)
            if ref is None:
                assert got is UNDEFINED
            else:
                assert got == ref


class TestCycles:
    def test_girth(self):
        assert girth(cycle(3)) == 3
        assert girth(cycle(4)) == 4
        assert girth(path(6)) is None

    def test_bridges_basic(self):
        assert bridges(path(4)) == frozenset(path(4).edges)
        assert bridges(cycle(4)) == frozenset()

    def test_core_basic(self):
        assert len(core(path(5)).edges) == 0
        C = cycle(5)
        assert core(C).edges == C.edges

    def test_z12_bridges_and_core(self):
        G = z12()
        assert set(bridges(G)) == E((2, 6), (6, 10))
        K = core(G)
        assert set(K.edges) == E((3, 4), (3, 8), (4, 6), (4, 9), (6, 8), (8, 9))
        assert set(K.vertices) == {"3", "4", "6", "8", "9"}

    def test_z12_short_cycle_witness(self):
        G = z12()
        ok, w = edge_in_short_cycle(G, frozenset({"3", "4"}), 4)
        assert ok and w[:2] == ["3", "4"] and len(w) == 4
        assert all(G.has_edge(w[i], w[(i + 1) % 4]) for i in range(4))
        assert len(set(w)) == 4
        # the hand-derived cycle 3-4-9-8 is also present
        assert all(G.has_edge(a, b) for a, b in [("3", "4"), ("4", "9"), ("9", "8"), ("8", "3")])

    def test_tree_edge(self):
        ok, w = edge_in_short_cycle(path(4), frozenset({"p1", "p2"}), 4)
        assert not ok and w is None

    def test_triangle_maxlen3(self):
        ok, w = edge_in_short_cycle(cycle(3), frozenset({"c0", "c1"}), 3)
        assert ok and sorted(w) == ["c0", "c1", "c2"]

    def test_square_needs_maxlen4(self):
        e = frozenset({"c0", "c1"})
        assert not edge_in_short_cycle(cycle(4), e, 3)[0]
        assert edge_in_short_cycle(cycle(4), e, 4)[0]

    def test_bad_maxlen(self):
        with pytest.raises(GraphError):
            edge_in_short_cycle(cycle(5), frozenset({"c0", "c1"}), 5)

    def test_against_oracles(self):
        rng = random.Random(11)
        for _ in range(150):
            vs, es = random_graph(rng, 11, 0.1, 0.4)
            G = SimpleGraph.build(vs, [tuple(e) for e in es])
            assert set(bridges(G)) == bridges_by_removal(set(vs), es)
            assert set(core(G).edges) == core_edges_by_cycles(vs, es)
            assert girth(G) == girth_by_cycles(vs, es)


class TestNeighborhoods:
    def test_common_neighbors(self):
        P = SimpleGraph.build([], [("a", "x"), ("x", "b")])
        assert common_neighbors(P, "a", "b") == {"x"}
        C = SimpleGraph.build([], [("a", "x"), ("x", "b"), ("b", "c"), ("c", "a")])
        assert common_neighbors(C, "a", "b") == {"x", "c"}
        D = SimpleGraph.build([], [("a", "b"), ("c", "d")])
        assert common_neighbors(D, "a", "c") == set()

    def test_path_short_cycle(self):
        C = cycle(4)
        assert path_short_cycle(C, "c0", "c1", "c2") == ["c0", "c1", "c2", "c3"]
        assert path_short_cycle(path(3), "p0", "p1", "p2") is None
        assert path_short_cycle(cycle(3), "c0", "c1", "c2") == ["c0", "c1", "c2"]

    def test_paths_of_length_two(self):
        got = sorted(tuple(p) for p in paths_of_length_two(cycle(4)))
        assert len(got) == 4
        assert sum(math.comb(d, 2) for d in [2, 2, 2, 2]) == len(got)


class TestIso:
    def test_relabelled_c4(self):
        phi = iso_check(cycle(4), cycle(4, "q"))
        assert phi is not None and len(set(phi.values())) == 4

    def test_c4_vs_p4(self):
        assert iso_check(cycle(4), path(4)) is None

    def test_z6_vs_p3(self):
        assert iso_check(build_classic(zn_multiplicative(6)), path(3)) is not None

    def test_cap(self):
        with pytest.raises(GraphError):
            iso_check(cycle(11), cycle(11), cap=10)

    def test_random_relabel(self):
        rng = random.Random(3)
        for _ in range(40):
            vs, es = random_graph(rng, 9)
            perm = vs[:]
            rng.shuffle(perm)
            m = dict(zip(vs, perm))
            G = SimpleGraph.build(vs, [tuple(e) for e in es])
            H = SimpleGraph.build(perm, [tuple(m[v] for v in e) for e in es])
            phi = iso_check(G, H)
            assert phi is not None
            assert all(H.has_edge(phi[u], phi[v]) for u, v in G.sorted_edges())
