"""Generalized zero-divisor graphs of a labeled map ``f: X -> S``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .graph import SimpleGraph
from .semigroup import BoundedSemilattice, OrderedSemigroup, SemigroupTable
from .verdict import Status, VerdictReport

Codomain = Union[SemigroupTable, OrderedSemigroup, BoundedSemilattice]


class InstanceError(ValueError):
    pass


class UnorderedCodomain(InstanceError):
    def __init__(self):
        super().__init__("codomain carries no partial order")


def table_of(S: Codomain) -> SemigroupTable:
    return S if isinstance(S, SemigroupTable) else S.base


@dataclass(frozen=True)
class LabeledFunction:
    """A finite label set ``domain`` with a total map into a semigroup."""

    domain: tuple[str, ...]
    codomain: Codomain
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.domain):
            raise InstanceError("every label needs exactly one value")
        if len(set(self.domain)) != len(self.domain):
            raise InstanceError("duplicate labels in domain")
        n = table_of(self.codomain).order
        for x, v in zip(self.domain, self.values):
            if not 0 <= v < n:
                raise InstanceError(f"f({x}) = {v} is not an element index")

    @classmethod
    def from_mapping(cls, codomain: Codomain, f: Mapping[str, int],
                     domain: Iterable[str] | None = None) -> "LabeledFunction":
        domain = tuple(str(x) for x in (f if domain is None else domain))
        missing = [x for x in domain if x not in f]
        if missing:
            raise InstanceError(f"f is undefined on {missing}")
        return cls(domain, codomain, tuple(int(f[x]) for x in domain))

    @classmethod
    def identity(cls, codomain: Codomain) -> "LabeledFunction":
        S = table_of(codomain)
        return cls(tuple(S.labels), codomain, tuple(S.elements))

    @property
    def table(self) -> SemigroupTable:
        return table_of(self.codomain)

    def f(self, x: str) -> int:
        return self.values[self.domain.index(x)]

    def items(self):
        return zip(self.domain, self.values)

    def restrict(self, labels: Iterable[str]) -> "LabeledFunction":
        keep = set(labels)
        pairs = [(x, v) for x, v in self.items() if x in keep]
        return LabeledFunction(tuple(x for x, _ in pairs), self.codomain, tuple(v for _, v in pairs))


def build_graph(inst: LabeledFunction) -> SimpleGraph:
    """Vertices: labels with a nonzero value annihilated by another label's
    nonzero value. Edges join distinct such labels whose values multiply to zero.
    Distinctness is on labels, so two labels with the same value can be adjacent.
    """
    S = inst.table
    z, mul = S.zero, S.mul
    live = [(x, v) for x, v in inst.items() if v != z]
    edges = []
    for i, (x, a) in enumerate(live):
        row = mul[a]
        for y, b in live[i + 1:]:
            if row[b] == z:
                edges.append((x, y))
    ends = {u for e in edges for u in e}
    return SimpleGraph.build([x for x in inst.domain if x in ends], edges)


def build_classic(S: Codomain) -> SimpleGraph:
    """The zero-divisor graph on the nonzero zero-divisors of ``S``."""
    return build_graph(LabeledFunction.identity(S))


def check_closure(inst: LabeledFunction) -> VerdictReport:
    """PASS when every nonzero product of two values is itself a value."""
    S = inst.table
    image = set(inst.values)
    items = list(inst.items())
    for x, a in items:
        for y, b in items:
            p = S.mul[a][b]
            if p != S.zero and p not in image:
                return VerdictReport(
                    "closure", Status.FAIL,
                    witness={"pair": [x, y], "missing": p, "missing_label": S.labels[p]},
                )
    return VerdictReport("closure", Status.PASS)


def check_ordered_interpolation(inst: LabeledFunction) -> VerdictReport:
    """PASS when each nonzero ``f(w)f(z)`` sits below some ``f(v)`` that is
    itself below both ``f(w)`` and ``f(z)``."""
    if not isinstance(inst.codomain, OrderedSemigroup):
        raise UnorderedCodomain()
    leq = inst.codomain.leq
    S = inst.table
    image = sorted(set(inst.values))
    items = list(inst.items())
    for i, (w, a) in enumerate(items):
        for z, b in items[i:]:
            p = S.mul[a][b]
            if p == S.zero:
                continue
            if not any(leq[p][c] and leq[c][a] and leq[c][b] for c in image):
                return VerdictReport("interpolation", Status.FAIL,
                                     witness={"pair": [w, z], "product": S.labels[p]})
    return VerdictReport("interpolation", Status.PASS)
