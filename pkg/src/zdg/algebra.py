"""Finite commutative semirings and semimodules, their ideals and submodules.

The constructions here compile down to :class:`LabeledFunction` instances so
that every graph is built by the one generic constructor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .construct import LabeledFunction, build_graph
from .graph import SimpleGraph
from .verdict import Status, VerdictReport
from .semigroup import (
    DEFAULT_CAPS, Caps, CapExceeded, OrderedSemigroup, SemigroupError, SemigroupTable,
    identity_element, inclusion_order, s_ideals,
)

__all__ = [
    "AlgebraError", "FiniteSemiring", "FiniteModule", "Ideal", "Submodule",
    "zn_ring", "boolean_semiring", "product_semiring", "regular_module",
    "power_module", "zero_module", "ideals", "ideal", "ideal_product",
    "ideal_intersection", "ideal_semigroup", "maximal_ideals", "ann",
    "has_annihilator_condition", "submodules", "submodule", "residual",
    "content", "is_content_semimodule", "content_onto_fg_ideals",
    "ann_instance", "content_instance", "residual_instance",
    "gamma_ann", "gamma_content", "gamma_residual",
    "act_ann_instance", "act_ann_graph", "set_label",
]


class AlgebraError(ValueError):
    def __init__(self, msg: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(msg + (f": witness {witness}" if witness else ""))


def _square(t, n, name):
    if len(t) != n or any(len(r) != n for r in t):
        raise AlgebraError(f"{name} table must be {n}x{n}")
    if any(not 0 <= v < n for r in t for v in r):
        raise AlgebraError(f"{name} table has entries out of range")


def _check_comm_monoid(t, unit, name):
    n = len(t)
    for a in range(n):
        if t[unit][a] != a:
            raise AlgebraError(f"{name}: {unit} is not neutral", (a,))
        for b in range(n):
            if t[a][b] != t[b][a]:
                raise AlgebraError(f"{name}: not commutative", (a, b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise AlgebraError(f"{name}: not associative", (a, b, c))


@dataclass(frozen=True)
class FiniteSemiring:
    order: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    labels: tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.order
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        _square(self.add, n, "add")
        _square(self.mul, n, "mul")
        _check_comm_monoid(self.add, self.zero, "addition")
        _check_comm_monoid(self.mul, self.one, "multiplication")
        for a in range(n):
            if self.mul[self.zero][a] != self.zero:
                raise AlgebraError("zero does not absorb", (a,))
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.mul[a][self.add[b][c]] != self.add[self.mul[a][b]][self.mul[a][c]]:
                raise AlgebraError("multiplication does not distribute", (a, b, c))

    @property
    def elements(self) -> range:
        return range(self.order)

    def __str__(self):
        return self.name or f"semiring[{self.order}]"


@dataclass(frozen=True)
class FiniteModule:
    """A unital semimodule given by an addition table and a scalar action table."""

    scalars: FiniteSemiring
    order: int
    add: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]
    zero: int = 0
    labels: tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n, S = self.order, self.scalars
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        _square(self.add, n, "add")
        if len(self.action) != S.order or any(len(r) != n for r in self.action):
            raise AlgebraError(f"action table must be {S.order}x{n}")
        _check_comm_monoid(self.add, self.zero, "module addition")
        act, add = self.action, self.add
        for m in range(n):
            if act[S.one][m] != m:
                raise AlgebraError("1*m != m", (m,))
            if act[S.zero][m] != self.zero:
                raise AlgebraError("0*m != 0", (m,))
        for s in S.elements:
            if act[s][self.zero] != self.zero:
                raise AlgebraError("s*0 != 0", (s,))
            for t in S.elements:
                for m in range(n):
                    if act[s][act[t][m]] != act[S.mul[s][t]][m]:
                        raise AlgebraError("s(tm) != (st)m", (s, t, m))
                    if act[S.add[s][t]][m] != add[act[s][m]][act[t][m]]:
                        raise AlgebraError("(s+t)m != sm+tm", (s, t, m))
            for m, k in itertools.product(range(n), repeat=2):
                if act[s][add[m][k]] != add[act[s][m]][act[s][k]]:
                    raise AlgebraError("s(m+k) != sm+sk", (s, m, k))

    @property
    def elements(self) -> range:
        return range(self.order)

    def __str__(self):
        return self.name or f"module[{self.order}] over {self.scalars}"


@dataclass(frozen=True)
class Ideal:
    elements: frozenset[int]
    owner: FiniteSemiring = field(compare=False, repr=False)

    def __le__(self, other: "Ideal") -> bool:
        return self.elements <= other.elements

    def __contains__(self, s: int) -> bool:
        return s in self.elements

    def __len__(self):
        return len(self.elements)

    @property
    def label(self) -> str:
        return set_label(self.elements, self.owner.labels)


@dataclass(frozen=True)
class Submodule:
    elements: frozenset[int]
    owner: FiniteModule = field(compare=False, repr=False)

    def __le__(self, other: "Submodule") -> bool:
        return self.elements <= other.elements

    def __len__(self):
        return len(self.elements)

    @property
    def label(self) -> str:
        return set_label(self.elements, self.owner.labels)


def set_label(elements: Iterable[int], labels: Sequence[str]) -> str:
    return "{" + ",".join(labels[i] for i in sorted(elements)) + "}"


def _canon(sets) -> list[frozenset[int]]:
    return sorted(set(sets), key=lambda I: (len(I), sorted(I)))


def additive_closure(add, zero: int, gens: Iterable[int]) -> frozenset[int]:
    out = {zero}
    frontier = set(gens) - out
    while frontier:
        out |= frontier
        frontier = {add[a][b] for a in out for b in frontier} - out
    return frozenset(out)


# ---------------------------------------------------------------- constructors

def zn_ring(n: int) -> FiniteSemiring:
    if n < 1:
        raise AlgebraError(f"n must be positive, got {n}")
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return FiniteSemiring(n, add, mul, 0, 1 % n, name=f"Z{n}")


def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring(2, ((0, 1), (1, 1)), ((0, 0), (0, 1)), 0, 1, ("0", "1"), name="B")


def _pair_tables(A, B):
    nb = B.order
    pairs = [(a, b) for a in range(A.order) for b in range(nb)]
    def table(ta, tb):
        return tuple(tuple(ta[a1][a2] * nb + tb[b1][b2] for a2, b2 in pairs) for a1, b1 in pairs)
    labels = tuple(f"({A.labels[a]},{B.labels[b]})" for a, b in pairs)
    return pairs, table, labels


def product_semiring(A: FiniteSemiring, B: FiniteSemiring) -> FiniteSemiring:
    _, table, labels = _pair_tables(A, B)
    nb = B.order
    return FiniteSemiring(
        A.order * nb, table(A.add, B.add), table(A.mul, B.mul),
        A.zero * nb + B.zero, A.one * nb + B.one, labels, name=f"{A}x{B}",
    )


def regular_module(S: FiniteSemiring) -> FiniteModule:
    """``S`` as a module over itself."""
    return FiniteModule(S, S.order, S.add, S.mul, S.zero, S.labels, name=f"{S} over {S}")


def power_module(S: FiniteSemiring, k: int) -> FiniteModule:
    """``S^k`` with componentwise operations; index = base-``|S|`` digits."""
    if k < 1:
        raise AlgebraError(f"k must be positive, got {k}")
    n = S.order
    vecs = list(itertools.product(range(n), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    add = tuple(tuple(index[tuple(S.add[a][b] for a, b in zip(u, v))] for v in vecs) for u in vecs)
    action = tuple(tuple(index[tuple(S.mul[s][a] for a in v)] for v in vecs) for s in range(n))
    labels = tuple("(" + ",".join(S.labels[a] for a in v) + ")" for v in vecs)
    zero = index[(S.zero,) * k]
    return FiniteModule(S, len(vecs), add, action, zero, labels, name=f"{S}^{k} over {S}")


def zero_module(S: FiniteSemiring) -> FiniteModule:
    return FiniteModule(S, 1, ((0,),), tuple((0,) for _ in S.elements), 0, ("0",),
                        name=f"0 over {S}")


# ---------------------------------------------------------------- ideals

def _is_ideal(S: FiniteSemiring, I: frozenset[int]) -> bool:
    return (S.zero in I
            and all(S.add[a][b] in I for a in I for b in I)
            and all(S.mul[s][a] in I for a in I for s in S.elements))


def ideal(S: FiniteSemiring, gens: Iterable[int]) -> Ideal:
    """The ideal generated by ``gens``."""
    return Ideal(additive_closure(S.add, S.zero, {S.mul[s][g] for g in gens for s in S.elements}), S)


def _join_closure(gens: set[frozenset[int]], join) -> set[frozenset[int]]:
    bottom = min(gens, key=len)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for I in frontier:
            for g in gens:
                if g <= I:
                    continue
                J = join(I, g)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return seen


@lru_cache(maxsize=256)
def _ideal_sets(S: FiniteSemiring, scan_cap: int) -> tuple[frozenset[int], ...]:
    if S.order <= scan_cap:
        others = [a for a in S.elements if a != S.zero]
        found = []
        for mask in range(1 << len(others)):
            I = frozenset([S.zero] + [others[i] for i in range(len(others)) if mask >> i & 1])
            if _is_ideal(S, I):
                found.append(I)
        return tuple(_canon(found))
    gens = {ideal(S, [a]).elements for a in S.elements}
    return tuple(_canon(_join_closure(gens, lambda I, J: additive_closure(S.add, S.zero, I | J))))


def ideals(S: FiniteSemiring, caps: Caps = DEFAULT_CAPS) -> list[Ideal]:
    """All ideals of ``S`` sorted by ``(size, elements)``; ``(0)`` comes first.

    Orders up to ``caps.ideal_scan`` scan every subset; larger semirings close
    the principal ideals under sums.
    """
    return [Ideal(I, S) for I in _ideal_sets(S, caps.ideal_scan)]


def _same_owner(I, J):
    if I.owner is not J.owner and I.owner != J.owner:
        raise AlgebraError("ideals belong to different semirings")


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_owner(I, J)
    S = I.owner
    prods = {S.mul[a][b] for a in I.elements for b in J.elements}
    return Ideal(additive_closure(S.add, S.zero, prods), S)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same_owner(I, J)
    return Ideal(I.elements & J.elements, I.owner)


def maximal_ideals(S: FiniteSemiring, caps: Caps = DEFAULT_CAPS) -> list[Ideal]:
    proper = [I for I in ideals(S, caps) if len(I) < S.order]
    return [I for I in proper if not any(I.elements < J.elements for J in proper)]


@dataclass(frozen=True)
class IdealCodomain:
    """Ideals of a semiring as an ordered semigroup, with the index mapping."""

    semigroup: OrderedSemigroup
    ideals: tuple[Ideal, ...]

    def index(self, I: Ideal) -> int:
        return self._lookup[I.elements]

    @property
    def _lookup(self) -> dict[frozenset[int], int]:
        return {J.elements: i for i, J in enumerate(self.ideals)}


@lru_cache(maxsize=256)
def _ideal_codomain(S: FiniteSemiring, op: str, scan_cap: int) -> IdealCodomain:
    Is = ideals(S, Caps(ideal_scan=scan_cap))
    pos = {I.elements: i for i, I in enumerate(Is)}
    if op == "product":
        combine = ideal_product
    elif op == "intersection":
        combine = ideal_intersection
    else:
        raise AlgebraError(f"unknown ideal operation {op!r}")
    mul = tuple(tuple(pos[combine(I, J).elements] for J in Is) for I in Is)
    base = SemigroupTable(len(Is), 0, mul, tuple(I.label for I in Is))
    return IdealCodomain(inclusion_order(base, [I.elements for I in Is]), tuple(Is))


def ideal_semigroup(S: FiniteSemiring, op: str = "product",
                    caps: Caps = DEFAULT_CAPS) -> OrderedSemigroup:
    """Ideals of ``S`` under ``op`` ("product" or "intersection"), ordered by inclusion."""
    return _ideal_codomain(S, op, caps.ideal_scan).semigroup


# ---------------------------------------------------------------- annihilators

def ann(M: FiniteModule, subset: Iterable[int]) -> Ideal:
    """Scalars killing every element of ``subset``."""
    sub = list(subset)
    if not sub:
        raise AlgebraError("ann needs a nonempty subset")
    S = M.scalars
    return Ideal(frozenset(s for s in S.elements if all(M.action[s][m] == M.zero for m in sub)), S)


def has_annihilator_condition(M: FiniteModule):
    singles = {ann(M, [z]).elements for z in M.elements}
    for x in M.elements:
        for y in M.elements[x:]:
            A = ann(M, [x, y]).elements
            if A not in singles:
                return VerdictReport("annihilator_condition", Status.FAIL,
                                     witness={"pair": [M.labels[x], M.labels[y]],
                                              "ann": set_label(A, M.scalars.labels)})
    return VerdictReport("annihilator_condition", Status.PASS)


# ---------------------------------------------------------------- submodules

def _is_submodule(M: FiniteModule, N: frozenset[int]) -> bool:
    return (M.zero in N
            and all(M.add[a][b] in N for a in N for b in N)
            and all(M.action[s][a] in N for a in N for s in M.scalars.elements))


def submodule(M: FiniteModule, gens: Iterable[int]) -> Submodule:
    """The submodule generated by ``gens``."""
    span = {M.action[s][g] for g in gens for s in M.scalars.elements}
    return Submodule(additive_closure(M.add, M.zero, span), M)


@lru_cache(maxsize=256)
def _submodule_sets(M: FiniteModule, scan_cap: int) -> tuple[frozenset[int], ...]:
    if M.order <= scan_cap:
        others = [a for a in M.elements if a != M.zero]
        found = []
        for mask in range(1 << len(others)):
            N = frozenset([M.zero] + [others[i] for i in range(len(others)) if mask >> i & 1])
            if _is_submodule(M, N):
                found.append(N)
        return tuple(_canon(found))
    gens = {submodule(M, [m]).elements for m in M.elements}
    return tuple(_canon(_join_closure(gens, lambda A, B: additive_closure(M.add, M.zero, A | B))))


def submodules(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> list[Submodule]:
    """All submodules sorted by ``(size, elements)``."""
    return [Submodule(N, M) for N in _submodule_sets(M, caps.submodule_scan)]


def residual(N: Submodule | Iterable[int], M: FiniteModule) -> Ideal:
    """Scalars ``s`` with ``sM`` inside ``N``."""
    elems = N.elements if isinstance(N, Submodule) else frozenset(N)
    if not _is_submodule(M, elems):
        raise AlgebraError("residual needs a submodule", tuple(sorted(elems)))
    S = M.scalars
    return Ideal(frozenset(s for s in S.elements if all(M.action[s][m] in elems for m in M.elements)), S)


# ---------------------------------------------------------------- content

@lru_cache(maxsize=256)
def _ideal_times_module(M: FiniteModule, scan_cap: int) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    # IM is the additive closure of {s*m}; sums are not implicit in a semimodule
    out = []
    for I in ideals(M.scalars, Caps(ideal_scan=scan_cap)):
        gens = {M.action[s][m] for s in I.elements for m in M.elements}
        out.append((I.elements, additive_closure(M.add, M.zero, gens)))
    return tuple(out)


def ideal_times_module(M: FiniteModule, I: Ideal, caps: Caps = DEFAULT_CAPS) -> frozenset[int]:
    return dict(_ideal_times_module(M, caps.ideal_scan))[I.elements]


def content(M: FiniteModule, x: int, caps: Caps = DEFAULT_CAPS) -> Ideal:
    """Intersection of all ideals ``I`` with ``x`` in ``IM``."""
    S = M.scalars
    c = frozenset(S.elements)
    for I, IM in _ideal_times_module(M, caps.ideal_scan):
        if x in IM:
            c &= I
    return Ideal(c, S)


def is_content_semimodule(M: FiniteModule, caps: Caps = DEFAULT_CAPS):
    for x in M.elements:
        c = content(M, x, caps)
        if x not in ideal_times_module(M, c, caps):
            return VerdictReport("content_semimodule", Status.FAIL,
                                 witness={"element": M.labels[x], "content": c.label})
    return VerdictReport("content_semimodule", Status.PASS)


def content_onto_fg_ideals(M: FiniteModule, caps: Caps = DEFAULT_CAPS):
    """Every ideal is a content; all ideals of a finite semiring are finitely generated."""
    image = {content(M, x, caps).elements for x in M.elements}
    missed = [I for I in ideals(M.scalars, caps) if I.elements not in image]
    if missed:
        return VerdictReport("content_onto", Status.FAIL, witness={"missed_ideal": missed[0].label})
    return VerdictReport("content_onto", Status.PASS)


# ---------------------------------------------------------------- instances

def ann_instance(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> LabeledFunction:
    """Elements of ``M`` mapped to their annihilators in (ideals, intersection)."""
    cod = _ideal_codomain(M.scalars, "intersection", caps.ideal_scan)
    lookup = cod._lookup
    values = tuple(lookup[ann(M, [x]).elements] for x in M.elements)
    return LabeledFunction(M.labels, cod.semigroup, values)


def content_instance(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> LabeledFunction:
    """Elements of ``M`` mapped to their contents in (ideals, product)."""
    cod = _ideal_codomain(M.scalars, "product", caps.ideal_scan)
    lookup = cod._lookup
    values = tuple(lookup[content(M, x, caps).elements] for x in M.elements)
    return LabeledFunction(M.labels, cod.semigroup, values)


def residual_instance(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> LabeledFunction:
    """Submodules ``N`` mapped to ``[N:M]`` in (ideals, product) ordered by inclusion."""
    cod = _ideal_codomain(M.scalars, "product", caps.ideal_scan)
    lookup = cod._lookup
    subs = submodules(M, caps)
    values = tuple(lookup[residual(N, M).elements] for N in subs)
    return LabeledFunction(tuple(N.label for N in subs), cod.semigroup, values)


def gamma_ann(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> SimpleGraph:
    return build_graph(ann_instance(M, caps))


def gamma_content(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> SimpleGraph:
    return build_graph(content_instance(M, caps))


def gamma_residual(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> SimpleGraph:
    return build_graph(residual_instance(M, caps))


# ---------------------------------------------------------------- pointed acts

def _check_act(S: SemigroupTable, act, act_zero: int) -> int:
    one = identity_element(S)
    if one is None:
        raise AlgebraError("the acting semigroup has no identity")
    if len(act) != S.order:
        raise AlgebraError(f"act table needs {S.order} rows")
    m = len(act[0])
    if any(len(r) != m for r in act) or any(not 0 <= v < m for r in act for v in r):
        raise AlgebraError("act table is ragged or out of range")
    for x in range(m):
        if act[one][x] != x:
            raise AlgebraError("1x != x", (x,))
        if act[S.zero][x] != act_zero:
            raise AlgebraError("0x != 0", (x,))
    for s in S.elements:
        if act[s][act_zero] != act_zero:
            raise AlgebraError("s0 != 0", (s,))
        for t in S.elements:
            for x in range(m):
                if act[s][act[t][x]] != act[S.mul[s][t]][x]:
                    raise AlgebraError("s(tx) != (st)x", (s, t, x))
    return m


def act_ann_instance(S: SemigroupTable, act: Sequence[Sequence[int]], act_zero: int,
                     family: Iterable[Iterable[int]], act_labels: Sequence[str] | None = None,
                     caps: Caps = DEFAULT_CAPS) -> LabeledFunction:
    """Members of a union-closed family of subsets mapped to their annihilators
    among the s-ideals of ``S`` (under intersection)."""
    m = _check_act(S, act, act_zero)
    labels = tuple(act_labels) if act_labels else tuple(str(i) for i in range(m))
    C = _canon(frozenset(P) for P in family)
    if not C:
        raise AlgebraError("the family must be nonempty")
    if any(not P for P in C):
        raise AlgebraError("family members must be nonempty")
    members = set(C)
    for P, Q in itertools.combinations(C, 2):
        if P | Q not in members:
            raise AlgebraError("family is not closed under union",
                               (set_label(P, labels), set_label(Q, labels)))
    Is = s_ideals(S, caps)
    pos = {I: i for i, I in enumerate(Is)}
    mul = tuple(tuple(pos[I & J] for J in Is) for I in Is)
    base = SemigroupTable(len(Is), 0, mul, tuple(set_label(I, S.labels) for I in Is))
    cod = inclusion_order(base, Is)
    values = tuple(
        pos[frozenset(s for s in S.elements if all(act[s][x] == act_zero for x in P))] for P in C
    )
    return LabeledFunction(tuple(set_label(P, labels) for P in C), cod, values)


def act_ann_graph(S: SemigroupTable, act, act_zero: int, family,
                  act_labels=None, caps: Caps = DEFAULT_CAPS) -> SimpleGraph:
    return build_graph(act_ann_instance(S, act, act_zero, family, act_labels, caps))
