import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdg.catalog import enumerated
from zdg.semigroup import (
    Budget, BudgetExhausted, CapExceeded, Caps, IndexOutOfRange, NotAssociative, NotCommutative,
    NotIdempotent, OrderedSemigroup, SemigroupError, ZeroNotAbsorbing, as_bounded_semilattice,
    automorphisms, chain_semilattice, direct_product, enumerate_semigroups, find_largest_d,
    natural_order, null_semigroup, principal_s_ideal, s_ideals, semigroup_isomorphism,
    subset_meet_semilattice, validate, zn_multiplicative,
)

from oracles import is_semigroup_iso, semigroup_classes_brute, subsets_closed


def z6_raw():
    return [[(a * b) % 6 for b in range(6)] for a in range(6)]


class TestValidate:
    def test_z6_valid(self):
        S = validate(z6_raw())
        assert S.order == 6 and S.zero == 0
        # independent triple scan
        m = z6_raw()
        assert all(m[m[a][b]][c] == m[a][m[b][c]] for a, b, c in itertools.product(range(6), repeat=3))

    def test_two_element_semilattice(self):
        S = validate([[0, 0], [0, 1]])
        assert S.is_idempotent()

    def test_zero_not_absorbing(self):
        with pytest.raises(ZeroNotAbsorbing) as e:
            validate([[0, 1], [1, 0]])
        assert e.value.witness == (1,)

    def test_not_commutative(self):
        with pytest.raises(NotCommutative):
            validate([[0, 0, 0], [0, 1, 1], [0, 2, 2]])

    def test_not_associative(self):
        # 1*1 = 2, 2*1 = 1: (1*1)*1 = 1 but 1*(1*1) = 2? check via witness
        raw = [[0, 0, 0], [0, 2, 1], [0, 1, 0]]
        with pytest.raises(NotAssociative) as e:
            validate(raw)
        a, b, c = e.value.witness
        assert raw[raw[a][b]][c] != raw[a][raw[b][c]]

    @pytest.mark.parametrize("raw", [[[0, 0], [0]], [[0, 2], [2, 0]], [[0, 0], [0, -1]], []])
    def test_index_errors(self, raw):
        with pytest.raises(IndexOutOfRange):
            validate(raw)

    def test_normalizes_zero_to_index_zero(self):
        # zero is the element 1 here
        S = validate([[0, 1], [1, 1]], zero=1, labels=["e", "z"])
        assert S.zero == 0 and S.labels == ("z", "e")
        assert S.mul == ((0, 0), (0, 1))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_revalidating_emitted_tables(self, n):
        for S in enumerated(n):
            assert validate(S.mul) == S


class TestFamilies:
    def test_zn(self):
        S = zn_multiplicative(6)
        assert S.mul[2][3] == 0 and S.mul[2][4] == 2
        assert zn_multiplicative(1).order == 1
        with pytest.raises(SemigroupError):
            zn_multiplicative(0)

    def test_subset_semilattice(self):
        L = subset_meet_semilattice(2)
        assert L.order == 4
        one, two = L.labels.index("{1}"), L.labels.index("{2}")
        assert L.mul[one][two] == L.labels.index("{}")
        assert L.leq(one, L.one)
        L0 = subset_meet_semilattice(0)
        assert L0.order == 1 and L0.zero == L0.one
        with pytest.raises(CapExceeded):
            subset_meet_semilattice(11)
        assert subset_meet_semilattice(11, Caps(semilattice_k=11)).order == 2048

    def test_direct_product(self):
        Z2 = zn_multiplicative(2)
        P = direct_product(Z2, Z2)
        assert P.order == 4
        a, b = P.labels.index("(1,0)"), P.labels.index("(0,1)")
        assert P.labels[P.mul[a][b]] == "(0,0)"
        assert all(P.mul[P.zero][x] == P.zero for x in P.elements)
        validate(P.mul)

    def test_product_with_trivial(self):
        A = zn_multiplicative(4)
        P = direct_product(A, zn_multiplicative(1))
        assert P.order == A.order
        # the pairing a -> (a, 0) is an isomorphism, checked on the full table
        assert is_semigroup_iso(A, P)


class TestOrders:
    def test_natural_order_is_inclusion(self):
        L = subset_meet_semilattice(2)
        O = natural_order(L.base)
        for a in L.base.elements:
            for b in L.base.elements:
                assert O.leq[a][b] == ((a & b) == a)
        assert O.compatible

    def test_natural_order_needs_idempotent(self):
        with pytest.raises(NotIdempotent) as e:
            natural_order(zn_multiplicative(6))
        assert e.value.witness == (2,)

    def test_one_element(self):
        O = natural_order(zn_multiplicative(1))
        assert O.leq == ((True,),)

    def test_flags_must_match(self):
        S = chain_semilattice(3).base
        O = natural_order(S)
        with pytest.raises(SemigroupError):
            OrderedSemigroup(S, O.leq, not O.compatible, O.positive)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_natural_order_on_all_idempotent_tables(self, n):
        for S in enumerated(n):
            if S.is_idempotent():
                assert natural_order(S).compatible


class TestLargestD:
    def test_subset_semilattice(self):
        assert find_largest_d(subset_meet_semilattice(2)) == (None, "NO_NILPOTENT")

    def test_chain(self):
        assert find_largest_d(chain_semilattice(3)) == (None, "NO_NILPOTENT")

    def test_order_two(self):
        assert find_largest_d(chain_semilattice(2))[0] is None

    def test_order_one(self):
        with pytest.raises(SemigroupError):
            find_largest_d(chain_semilattice(1))


class TestSIdeals:
    def test_z6(self):
        S = zn_multiplicative(6)
        I = s_ideals(S)
        assert frozenset({0, 3}) in I
        assert frozenset({0}) in I and frozenset(range(6)) in I
        assert frozenset({3}) not in I

    @pytest.mark.parametrize("S", [zn_multiplicative(6), zn_multiplicative(8), null_semigroup(4),
                                   subset_meet_semilattice(3).base])
    def test_against_subset_oracle(self, S):
        expected = subsets_closed(S.order, S.zero,
                                  lambda I: all(S.mul[s][a] in I for s in S.elements for a in I))
        assert set(s_ideals(S)) == set(expected)

    def test_closure_generation_agrees_with_scan(self):
        S = zn_multiplicative(12)
        assert s_ideals(S, Caps(s_ideal_scan=0)) == s_ideals(S)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_intersection_closed(self, n):
        for S in enumerated(n):
            fam = set(s_ideals(S))
            assert all(I & J in fam for I in fam for J in fam)

    def test_principal(self):
        assert principal_s_ideal(zn_multiplicative(6), 3) == frozenset({0, 3})


class TestEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts_match_brute_force(self, n):
        assert len(list(enumerate_semigroups(n))) == semigroup_classes_brute(n)

    def test_order_two(self):
        tables = list(enumerate_semigroups(2))
        assert sorted(S.mul[1][1] for S in tables) == [0, 1]

    def test_order_five_count(self):
        # frozen from a vectorized scan of all 5**10 tables
        assert len(list(enumerate_semigroups(5))) == 226

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pairwise_non_isomorphic(self, n):
        tables = list(enumerate_semigroups(n))
        for A, B in itertools.combinations(tables, 2):
            assert semigroup_isomorphism(A, B) is None

    def test_budget_and_resume(self):
        full = list(enumerate_semigroups(5))
        got = []
        resume = None
        rounds = 0
        while True:
            rounds += 1
            try:
                for S in enumerate_semigroups(5, Budget(max_nodes=20000), resume):
                    got.append(S)
                break
            except BudgetExhausted as e:
                assert e.partial >= 0
                resume = e.resume
        assert rounds > 1
        assert got == full

    def test_tiny_budget(self):
        with pytest.raises(BudgetExhausted) as e:
            list(enumerate_semigroups(5, Budget(max_nodes=3)))
        assert e.value.partial == 0 and e.value.resume

    def test_cap(self):
        with pytest.raises(CapExceeded):
            list(enumerate_semigroups(6))

    def test_deterministic(self):
        assert list(enumerate_semigroups(4)) == list(enumerate_semigroups(4))


class TestIsomorphism:
    def test_relabelled_z6(self):
        S = zn_multiplicative(6)
        perm = [0, 5, 3, 1, 4, 2]
        inv = [perm.index(i) for i in range(6)]
        T = validate([[perm[S.mul[inv[a]][inv[b]]] for b in range(6)] for a in range(6)])
        p = semigroup_isomorphism(S, T)
        assert p is not None
        assert all(p[S.mul[a][b]] == T.mul[p[a]][p[b]] for a in range(6) for b in range(6))

    def test_automorphisms_of_z5(self):
        # units of Z5 form a cyclic group of order 4 with automorphism group of order 2
        assert len(automorphisms(zn_multiplicative(5))) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, 5))))
def test_products_stay_valid(args):
    k, n = args
    P = direct_product(subset_meet_semilattice(k).base, zn_multiplicative(n))
    assert validate(P.mul).order == P.order


def test_bounded_semilattice_detection():
    assert as_bounded_semilattice(zn_multiplicative(6)) is None
    L = as_bounded_semilattice(subset_meet_semilattice(2).base)
    assert L is not None and L.one == 3
