import pytest

from zdg.catalog import catalog_semigroups
from zdg.construct import build_graph, check_closure
from zdg.graph import SimpleGraph, iso_check
from zdg.search import SearchError, SearchSpec, search_extremal, search_realization
from zdg.semigroup import Budget, zn_multiplicative


def G(edges, extra=()):
    return SimpleGraph.build(list(extra), edges)


P3 = G([("a", "b"), ("b", "c")])
K2 = G([("u", "v")])
K1 = G([], ["solo"])


class TestRealization:
    def test_p3(self):
        r = search_realization(SearchSpec(target=P3))
        assert r.kind == "witness"
        rebuilt = build_graph(r.instance)
        assert rebuilt.same_as(P3)

    def test_p3_in_z6(self):
        r = search_realization(SearchSpec(target=P3, catalog=[("Z6", zn_multiplicative(6))]))
        assert r.kind == "witness" and r.semigroup == "Z6"

    def test_k2(self):
        r = search_realization(SearchSpec(target=K2))
        assert r.kind == "witness" and set(r.instance.domain) == {"u", "v"}
        assert build_graph(r.instance).same_as(K2)

    def test_k2_in_z4(self):
        r = search_realization(SearchSpec(target=K2, catalog=[("Z4", zn_multiplicative(4))]))
        assert r.instance.values == (2, 2)

    def test_k1_impossible(self):
        r = search_realization(SearchSpec(target=K1))
        assert r.kind == "impossible" and r.reason == "ISOLATED_VERTEX"

    def test_not_found_is_not_impossible(self):
        P5 = G([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])
        r = search_realization(SearchSpec(target=P5, max_order=3))
        assert r.kind == "not_found"

    def test_budget(self):
        C4 = G([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        r = search_realization(SearchSpec(target=C4, budget=Budget(max_nodes=0)))
        assert r.kind == "exhausted" and r.frontier["offset"] == 0

    def test_resume_reaches_same_witness(self):
        C4 = G([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        full = search_realization(SearchSpec(target=C4))
        assert full.kind == "witness"
        part = search_realization(SearchSpec(target=C4, budget=Budget(max_nodes=5)))
        assert part.kind == "exhausted"
        rest = search_realization(SearchSpec(target=C4, resume=part.frontier))
        assert rest.kind == "witness" and rest.semigroup == full.semigroup
        assert rest.instance == full.instance

    def test_domain_cap(self):
        r = search_realization(SearchSpec(target=P3, max_domain=2))
        assert r.kind == "not_found" and r.reason == "DOMAIN_CAP"

    def test_target_cap(self):
        big = G([(f"v{i}", f"v{i + 1}") for i in range(9)])
        with pytest.raises(SearchError):
            SearchSpec(target=big)

    def test_deterministic(self):
        a = search_realization(SearchSpec(target=P3, seed=1))
        b = search_realization(SearchSpec(target=P3, seed=1))
        assert a.instance == b.instance


class TestExtremal:
    def test_disconnected_hits_fail_closure(self):
        r = search_extremal(SearchSpec(predicate="disconnected", max_order=5, max_domain=4))
        assert r.hits
        for h in r.hits:
            assert not h.connected and not h.closure
            assert h.closure == check_closure(h.instance).passed

    def test_random_mode_on_zn(self):
        cat = [(f"Z{n}", zn_multiplicative(n)) for n in range(2, 13)]
        spec = dict(predicate="disconnected", catalog=cat, max_domain=4, mode="random", samples=2000, seed=3)
        r = search_extremal(SearchSpec(**spec))
        assert r.examined == 2000 and all(not h.closure for h in r.hits)
        again = search_extremal(SearchSpec(**spec))
        assert [h.instance for h in again.hits] == [h.instance for h in r.hits]

    def test_closure_passing_never_far(self):
        r = search_extremal(SearchSpec(predicate="either", max_order=4, max_domain=4))
        assert not r.exhausted
        assert [h for h in r.hits if h.closure] == []

    def test_zero_budget(self):
        r = search_extremal(SearchSpec(predicate="disconnected", budget=Budget(max_nodes=0)))
        assert r.exhausted and r.hits == []

    def test_hits_re_verify(self):
        r = search_extremal(SearchSpec(predicate="diameter", min_diameter=3, max_order=4, max_domain=5))
        for h in r.hits:
            H = build_graph(h.instance)
            assert h.connected and h.diameter >= 3 and len(H) >= 2
            assert h.to_json()["diameter"] == h.diameter

    def test_needs_predicate(self):
        with pytest.raises(SearchError):
            search_extremal(SearchSpec())
        with pytest.raises(SearchError):
            SearchSpec(predicate="wide")


def test_witness_iso_to_target_for_small_targets():
    targets = [G([("a", "b"), ("b", "c"), ("c", "a")]),
               G([("a", "b"), ("c", "d")]),
               G([("a", "b"), ("a", "c"), ("a", "d")])]
    cat = catalog_semigroups(5)
    for T in targets:
        r = search_realization(SearchSpec(target=T, catalog=cat))
        if r.kind == "witness":
            assert iso_check(build_graph(r.instance), T) is not None
        else:
            assert r.kind == "not_found"
