"""Finite commutative semigroups with zero, given by Cayley tables.

Elements are dense indices ``0..order-1``. Tables produced by this module are
normalized so that the absorbing element is index 0.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "SemigroupError", "IndexOutOfRange", "NotCommutative", "NotAssociative",
    "ZeroNotAbsorbing", "NotIdempotent", "NotPartialOrder", "CapExceeded",
    "BudgetExhausted", "SemigroupTable", "OrderedSemigroup", "BoundedSemilattice",
    "Budget", "Caps", "validate", "zn_multiplicative", "null_semigroup",
    "chain_semilattice", "subset_meet_semilattice", "direct_product",
    "natural_order", "inclusion_order", "find_largest_d", "as_bounded_semilattice",
    "identity_element", "s_ideals", "principal_s_ideal", "enumerate_semigroups",
    "semigroup_isomorphism", "automorphisms",
]


class SemigroupError(ValueError):
    pass


class IndexOutOfRange(SemigroupError):
    def __init__(self, detail: str):
        super().__init__(f"index out of range: {detail}")


class NotCommutative(SemigroupError):
    def __init__(self, a: int, b: int):
        self.witness = (a, b)
        super().__init__(f"not commutative: {a}*{b} != {b}*{a}")


class NotAssociative(SemigroupError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


class ZeroNotAbsorbing(SemigroupError):
    def __init__(self, a: int):
        self.witness = (a,)
        super().__init__(f"zero is not absorbing: zero*{a} != zero")


class NotIdempotent(SemigroupError):
    def __init__(self, a: int):
        self.witness = (a,)
        super().__init__(f"not idempotent: {a}*{a} != {a}")


class NotPartialOrder(SemigroupError):
    def __init__(self, prop: str, witness: tuple):
        self.witness = witness
        super().__init__(f"relation is not {prop}: {witness}")


class CapExceeded(SemigroupError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class BudgetExhausted(RuntimeError):
    """Raised by a search once its :class:`Budget` runs out.

    ``partial`` is the number of results produced so far and ``resume`` is an
    opaque token that restarts the search at the unprocessed node.
    """

    def __init__(self, partial: int, resume: tuple | None):
        self.partial = partial
        self.resume = resume
        super().__init__(f"budget exhausted after {partial} results")


@dataclass(frozen=True)
class Caps:
    """Enumeration caps; defaults are the documented safe values."""

    semilattice_k: int = 10
    s_ideal_scan: int = 16
    ideal_scan: int = 12
    submodule_scan: int = 16
    enum_order: int = 5
    iso_vertices: int = 10


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class SemigroupTable:
    order: int
    zero: int
    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.order)))

    def __call__(self, a: int, b: int) -> int:
        return self.mul[a][b]

    @property
    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def is_idempotent(self) -> bool:
        return all(self.mul[a][a] == a for a in self.elements)


@dataclass(frozen=True)
class OrderedSemigroup:
    """A semigroup with a partial order; build with :meth:`from_relation`."""

    base: SemigroupTable
    leq: tuple[tuple[bool, ...], ...]
    compatible: bool
    positive: bool

    def __post_init__(self):
        _check_partial_order(self.leq)
        if self.compatible != _is_compatible(self.base, self.leq):
            raise SemigroupError("stored compatible flag disagrees with the relation")
        if self.positive != _is_positive(self.base, self.leq):
            raise SemigroupError("stored positive flag disagrees with the relation")

    @classmethod
    def from_relation(cls, base: SemigroupTable, leq) -> "OrderedSemigroup":
        leq = tuple(tuple(bool(x) for x in row) for row in leq)
        if len(leq) != base.order or any(len(r) != base.order for r in leq):
            raise IndexOutOfRange("order relation shape does not match table")
        return cls(base, leq, _is_compatible(base, leq), _is_positive(base, leq))

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def zero(self) -> int:
        return self.base.zero

    @property
    def mul(self):
        return self.base.mul

    @property
    def labels(self):
        return self.base.labels

    def zero_is_least(self) -> bool:
        z = self.base.zero
        return all(self.leq[z][a] for a in self.base.elements)


@dataclass(frozen=True)
class BoundedSemilattice:
    base: SemigroupTable
    one: int

    def __post_init__(self):
        S = self.base
        for a in S.elements:
            if S.mul[a][a] != a:
                raise NotIdempotent(a)
            if S.mul[self.one][a] != a:
                raise SemigroupError(f"{self.one} is not an identity: {self.one}*{a} != {a}")

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def zero(self) -> int:
        return self.base.zero

    @property
    def mul(self):
        return self.base.mul

    @property
    def labels(self):
        return self.base.labels

    def leq(self, a: int, b: int) -> bool:
        return self.base.mul[a][b] == a


def _check_partial_order(leq) -> None:
    n = len(leq)
    for a in range(n):
        if not leq[a][a]:
            raise NotPartialOrder("reflexive", (a,))
    for a, b in itertools.combinations(range(n), 2):
        if leq[a][b] and leq[b][a]:
            raise NotPartialOrder("antisymmetric", (a, b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            raise NotPartialOrder("transitive", (a, b, c))


def _is_compatible(S: SemigroupTable, leq) -> bool:
    n = S.order
    return all(
        leq[S.mul[a][c]][S.mul[b][c]]
        for a in range(n) for b in range(n) if leq[a][b]
        for c in range(n)
    )


def _is_positive(S: SemigroupTable, leq) -> bool:
    z = S.zero
    above = [a for a in S.elements if a != z and leq[z][a]]
    return all(S.mul[a][b] != z and leq[z][S.mul[a][b]] for a in above for b in above)


def _normalize(mul, zero: int, labels) -> SemigroupTable:
    """Relabel so that ``zero`` becomes index 0 (a transposition)."""
    n = len(mul)
    if zero == 0:
        return SemigroupTable(n, 0, tuple(tuple(r) for r in mul), tuple(labels))
    perm = list(range(n))
    perm[0], perm[zero] = zero, 0
    new = tuple(tuple(perm[mul[perm[i]][perm[j]]] for j in range(n)) for i in range(n))
    new_labels = tuple(labels[perm[i]] for i in range(n))
    return SemigroupTable(n, 0, new, new_labels)


def validate(mul: Sequence[Sequence[int]], zero: int = 0,
             labels: Sequence[str] | None = None) -> SemigroupTable:
    """Check the axioms on raw Cayley data and return a normalized table.

    Raises the first violated axiom with a witness: ``IndexOutOfRange``,
    ``ZeroNotAbsorbing``, ``NotCommutative`` or ``NotAssociative``.
    """
    n = len(mul)
    if n == 0:
        raise IndexOutOfRange("empty table")
    for i, row in enumerate(mul):
        if len(row) != n:
            raise IndexOutOfRange(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < n:
                raise IndexOutOfRange(f"entry [{i}][{j}] = {v!r}")
    if not isinstance(zero, int) or not 0 <= zero < n:
        raise IndexOutOfRange(f"zero = {zero!r}")
    if labels is not None and len(labels) != n:
        raise IndexOutOfRange(f"{len(labels)} labels for order {n}")

    M = np.asarray(mul, dtype=np.int64)
    bad = np.nonzero((M[zero] != zero) | (M[:, zero] != zero))[0]
    if bad.size:
        raise ZeroNotAbsorbing(int(bad[0]))
    diff = np.argwhere(M != M.T)
    if diff.size:
        a, b = diff[0]
        raise NotCommutative(int(a), int(b))
    for a in range(n):
        # row b, column c: (a*b)*c versus a*(b*c)
        left = M[M[a]]
        right = M[a][M]
        d = np.argwhere(left != right)
        if d.size:
            b, c = d[0]
            raise NotAssociative(a, int(b), int(c))

    labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
    return _normalize(M.tolist(), zero, labels)


def zn_multiplicative(n: int) -> SemigroupTable:
    """The multiplicative semigroup of integers mod ``n``."""
    if n < 1:
        raise SemigroupError(f"n must be positive, got {n}")
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return SemigroupTable(n, 0, mul)


def null_semigroup(order: int) -> SemigroupTable:
    """Every product is zero."""
    if order < 1:
        raise SemigroupError(f"order must be positive, got {order}")
    mul = tuple((0,) * order for _ in range(order))
    return SemigroupTable(order, 0, mul, ("0",) + tuple(f"a{i}" for i in range(1, order)))


def chain_semilattice(order: int) -> BoundedSemilattice:
    """The chain ``0 < 1 < ... < order-1`` under minimum."""
    if order < 1:
        raise SemigroupError(f"order must be positive, got {order}")
    mul = tuple(tuple(min(a, b) for b in range(order)) for a in range(order))
    return BoundedSemilattice(SemigroupTable(order, 0, mul), order - 1)


def _subset_label(mask: int, k: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(k) if mask >> i & 1) + "}"


def subset_meet_semilattice(k: int, caps: Caps = DEFAULT_CAPS) -> BoundedSemilattice:
    """Subsets of ``{1..k}`` under intersection; index = bitmask."""
    if k < 0:
        raise SemigroupError(f"k must be nonnegative, got {k}")
    if k > caps.semilattice_k:
        raise CapExceeded("subset semilattice k", k, caps.semilattice_k)
    n = 1 << k
    mul = tuple(tuple(a & b for b in range(n)) for a in range(n))
    labels = tuple(_subset_label(m, k) for m in range(n))
    return BoundedSemilattice(SemigroupTable(n, 0, mul, labels), n - 1)


def direct_product(A: SemigroupTable, B: SemigroupTable) -> SemigroupTable:
    """Componentwise product; element ``(a, b)`` has index ``a * |B| + b``."""
    nb = B.order
    n = A.order * nb
    pairs = [(a, b) for a in range(A.order) for b in range(nb)]
    mul = tuple(
        tuple(A.mul[a1][a2] * nb + B.mul[b1][b2] for (a2, b2) in pairs)
        for (a1, b1) in pairs
    )
    labels = tuple(f"({A.labels[a]},{B.labels[b]})" for a, b in pairs)
    zero = A.zero * nb + B.zero
    return _normalize(mul, zero, labels) if n else SemigroupTable(n, zero, mul, labels)


def natural_order(S: SemigroupTable) -> OrderedSemigroup:
    """Order an idempotent semigroup by ``a <= b`` iff ``ab = a``."""
    for a in S.elements:
        if S.mul[a][a] != a:
            raise NotIdempotent(a)
    leq = tuple(tuple(S.mul[a][b] == a for b in S.elements) for a in S.elements)
    return OrderedSemigroup.from_relation(S, leq)


def inclusion_order(S: SemigroupTable, sets: Sequence[frozenset]) -> OrderedSemigroup:
    """Order elements of ``S`` by inclusion of the sets they stand for."""
    leq = tuple(tuple(sets[a] <= sets[b] for b in S.elements) for a in S.elements)
    return OrderedSemigroup.from_relation(S, leq)


def identity_element(S: SemigroupTable) -> int | None:
    for e in S.elements:
        if all(S.mul[e][a] == a for a in S.elements):
            return e
    return None


def as_bounded_semilattice(S: SemigroupTable) -> BoundedSemilattice | None:
    if not S.is_idempotent():
        return None
    one = identity_element(S)
    return None if one is None else BoundedSemilattice(S, one)


def find_largest_d(S: BoundedSemilattice) -> tuple[int | None, str | None]:
    """Largest ``d`` in ``S - {0, 1}`` with ``d*d = 0``.

    Returns ``(d, None)`` or ``(None, reason)`` where reason is
    ``"NO_NILPOTENT"`` or ``"NO_UNIQUE_MAXIMUM"``. "Largest" is read as a
    unique maximum in the induced order, not merely a maximal element.
    """
    if S.order < 2:
        raise SemigroupError("find_largest_d needs order >= 2")
    z, one = S.zero, S.one
    cands = [d for d in range(S.order) if d not in (z, one) and S.mul[d][d] == z]
    if not cands:
        return None, "NO_NILPOTENT"
    for d in cands:
        if all(S.leq(c, d) for c in cands):
            return d, None
    return None, "NO_UNIQUE_MAXIMUM"


def principal_s_ideal(S: SemigroupTable, a: int) -> frozenset[int]:
    """Smallest s-ideal containing ``a``: ``{0, a} | S*a``."""
    return frozenset({S.zero, a, *(S.mul[s][a] for s in S.elements)})


def _is_s_ideal(S: SemigroupTable, I: frozenset[int]) -> bool:
    return S.zero in I and all(S.mul[s][a] in I for a in I for s in S.elements)


def _canonical_sets(family) -> list[frozenset[int]]:
    return sorted(family, key=lambda I: (len(I), sorted(I)))


def s_ideals(S: SemigroupTable, caps: Caps = DEFAULT_CAPS) -> list[frozenset[int]]:
    """All s-ideals of ``S``, sorted by ``(size, elements)``.

    Small orders scan every subset containing zero; larger ones close the
    principal s-ideals under union (every s-ideal is such a union).
    """
    if S.order <= caps.s_ideal_scan:
        others = [a for a in S.elements if a != S.zero]
        found = []
        for mask in range(1 << len(others)):
            I = frozenset([S.zero] + [others[i] for i in range(len(others)) if mask >> i & 1])
            if _is_s_ideal(S, I):
                found.append(I)
        return _canonical_sets(found)
    return _canonical_sets(_union_closure(S))


def _union_closure(S: SemigroupTable) -> set[frozenset[int]]:
    gens = {principal_s_ideal(S, a) for a in S.elements}
    seen = {frozenset({S.zero})}
    frontier = list(seen)
    while frontier:
        nxt = []
        for I in frontier:
            for g in gens:
                J = I | g
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return seen


def _permute_table(mul, perm) -> tuple[int, ...]:
    """Flattened table of the image of ``mul`` under ``perm``."""
    n = len(mul)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(perm[mul[inv[i]][inv[j]]] for i in range(n) for j in range(n))


def _zero_profile(mul, a: int, zero: int = 0) -> tuple[int, int]:
    return (sum(1 for x in mul[a] if x == zero), int(mul[a][a] == a))


def semigroup_isomorphism(A: SemigroupTable, B: SemigroupTable) -> tuple[int, ...] | None:
    """A bijection ``p`` with ``p(a*b) = p(a)*p(b)``, or ``None``.

    Brute force over bijections sending zero to zero, pruned by the number of
    zero-divisor partners and idempotency of each element.
    """
    if A.order != B.order:
        return None
    n = A.order
    pa = [_zero_profile(A.mul, a, A.zero) for a in range(n)]
    pb = [_zero_profile(B.mul, b, B.zero) for b in range(n)]
    if sorted(pa) != sorted(pb):
        return None
    perm = [-1] * n
    used = [False] * n
    perm[A.zero] = B.zero
    used[B.zero] = True
    order = [a for a in range(n) if a != A.zero]

    def consistent(k: int) -> bool:
        done = order[: k + 1] + [A.zero]
        for x in done:
            for y in done:
                p = perm[A.mul[x][y]]
                if p != -1 and p != B.mul[perm[x]][perm[y]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return all(
                perm[A.mul[x][y]] == B.mul[perm[x]][perm[y]] for x in range(n) for y in range(n)
            )
        a = order[k]
        for b in range(n):
            if used[b] or pb[b] != pa[a]:
                continue
            perm[a], used[b] = b, True
            if consistent(k) and extend(k + 1):
                return True
            perm[a], used[b] = -1, False
        return False

    return tuple(perm) if extend(0) else None


def automorphisms(S: SemigroupTable) -> list[tuple[int, ...]]:
    """All automorphisms of ``S`` (brute force; keep the order small)."""
    n = S.order
    others = [a for a in range(n) if a != S.zero]
    flat = tuple(x for row in S.mul for x in row)
    out = []
    for img in itertools.permutations(others):
        perm = [0] * n
        perm[S.zero] = S.zero
        for a, b in zip(others, img):
            perm[a] = b
        if _permute_table(S.mul, perm) == flat:
            out.append(tuple(perm))
    return out


def enumerate_semigroups(order: int, budget: Budget | None = None,
                         resume: tuple | None = None,
                         caps: Caps = DEFAULT_CAPS) -> Iterator[SemigroupTable]:
    """Yield each commutative semigroup with zero of ``order`` once up to isomorphism.

    Depth-first search over the upper triangle of the table (zero fixed at
    index 0), pruning any partial table with a fully defined associativity
    violation. A complete table is emitted only when it is the
    lexicographically least among its relabelings, so every isomorphism class
    appears exactly once and the output order is deterministic.

    If ``budget`` runs out, :class:`BudgetExhausted` is raised carrying a
    resume token; pass it back as ``resume`` to continue.
    """
    if order < 1:
        raise SemigroupError(f"order must be positive, got {order}")
    if order > caps.enum_order:
        raise CapExceeded("exhaustive semigroup enumeration", order, caps.enum_order)
    n = order
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    T = [[0] * n for _ in range(n)]
    U = -1
    for i, j in cells:
        T[i][j] = T[j][i] = U
    nonzero = range(1, n)
    perms = [(0,) + p for p in itertools.permutations(range(1, n))]

    budget = budget or Budget()
    t0 = time.monotonic()
    nodes = 0
    emitted = 0
    path: list[int] = []

    def assoc_ok() -> bool:
        for a in nonzero:
            Ta = T[a]
            for b in nonzero:
                ab = Ta[b]
                if ab == U:
                    continue
                Tab = T[ab]
                for c in nonzero:
                    bc = T[b][c]
                    if bc == U:
                        continue
                    l, r = Tab[c], Ta[bc]
                    if l != U and r != U and l != r:
                        return False
        return True

    def is_canonical() -> bool:
        flat = tuple(x for row in T for x in row)
        return all(_permute_table(T, p) >= flat for p in perms)

    def dfs(k: int, on_path: bool) -> Iterator[SemigroupTable]:
        nonlocal nodes, emitted
        if k == len(cells):
            if is_canonical():
                emitted += 1
                yield SemigroupTable(n, 0, tuple(tuple(r) for r in T))
            return
        i, j = cells[k]
        start = resume[k] if on_path and resume is not None and k < len(resume) else 0
        for v in range(start, n):
            still = on_path and resume is not None and k < len(resume) and v == resume[k]
            if (budget.max_nodes is not None and nodes >= budget.max_nodes) or (
                budget.max_seconds is not None and time.monotonic() - t0 > budget.max_seconds
            ):
                raise BudgetExhausted(emitted, tuple(path) + (v,))
            nodes += 1
            T[i][j] = T[j][i] = v
            path.append(v)
            if assoc_ok():
                yield from dfs(k + 1, still)
            path.pop()
            T[i][j] = T[j][i] = U

    yield from dfs(0, resume is not None)
