"""Searches for maps ``f: X -> S`` realizing a target graph or an extremal shape."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .catalog import catalog_semigroups
from .construct import LabeledFunction, build_graph, check_closure, check_ordered_interpolation
from .graph import INF, SimpleGraph, diameter, iso_check, is_connected
from .semigroup import Budget, SemigroupTable, automorphisms, natural_order

TARGET_CAP = 8


class SearchError(ValueError):
    pass


@dataclass
class SearchSpec:
    target: SimpleGraph | None = None
    predicate: str | None = None           # "disconnected" | "diameter" | "either"
    min_diameter: int = 4
    catalog: list[tuple[str, SemigroupTable]] | None = None
    max_order: int = 6
    max_domain: int = 5
    budget: Budget = field(default_factory=Budget)
    seed: int = 0
    mode: str = "exhaustive"               # or "random" (extremal only)
    samples: int = 1000
    exhaustive_domain: bool = False        # realization: try every |X| and zero values too
    resume: dict[str, int] | None = None

    def __post_init__(self):
        if self.max_domain < 1 or self.max_order < 1:
            raise SearchError("caps must be positive")
        if self.target is not None and len(self.target) > TARGET_CAP:
            raise SearchError(f"target graphs are capped at {TARGET_CAP} vertices")
        if self.predicate not in (None, "disconnected", "diameter", "either"):
            raise SearchError(f"unknown predicate {self.predicate!r}")

    def semigroups(self) -> list[tuple[str, SemigroupTable]]:
        return self.catalog if self.catalog is not None else catalog_semigroups(self.max_order)


@dataclass
class RealizationResult:
    kind: str                               # "witness" | "impossible" | "not_found" | "exhausted"
    instance: LabeledFunction | None = None
    semigroup: str | None = None
    reason: str | None = None
    frontier: dict[str, Any] | None = None
    nodes: int = 0


@lru_cache(maxsize=None)
def _automorphisms(S: SemigroupTable) -> tuple[tuple[int, ...], ...]:
    return tuple(automorphisms(S))


def _orbit_minimal(values: tuple[int, ...], auts) -> bool:
    """True if ``values`` (sorted) is the least multiset in its automorphism orbit."""
    return all(tuple(sorted(p[v] for v in values)) >= values for p in auts)


def _multisets(S: SemigroupTable, size: int, with_zero: bool):
    pool = [a for a in S.elements if with_zero or a != S.zero]
    auts = _automorphisms(S)
    for vals in itertools.combinations_with_replacement(pool, size):
        if _orbit_minimal(vals, auts):
            yield vals


class _Clock:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()

    def spent(self) -> bool:
        b = self.budget
        return ((b.max_nodes is not None and self.nodes >= b.max_nodes)
                or (b.max_seconds is not None and time.monotonic() - self.t0 > b.max_seconds))


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


def _degree_signature(G: SimpleGraph):
    return len(G), len(G.edges), sorted(map(G.degree, G.vertices))


def search_realization(spec: SearchSpec) -> RealizationResult:
    """Find ``(X, S, f)`` whose graph is isomorphic to ``spec.target``.

    Only two negative filters are used: a target with an isolated vertex is
    impossible (every vertex has a neighbor by construction), and ``|X|`` is
    never smaller than the target's vertex count. Beyond those, a failed
    search reports ``not_found`` (catalog searched) or ``exhausted``
    (budget ran out) and never claims impossibility.

    By default only ``|X| = |V(target)|`` with nonzero values is searched:
    labels that are not vertices can be dropped without changing the graph,
    so this loses no realization. ``exhaustive_domain`` searches every
    ``|X| <= max_domain`` including zero values.
    """
    G = spec.target
    if G is None:
        raise SearchError("realization mode needs a target graph")
    n = len(G)
    isolated = sorted(v for v in G.vertices if G.degree(v) == 0)
    if isolated:
        return RealizationResult("impossible", reason="ISOLATED_VERTEX",
                                 frontier={"vertex": isolated[0]})
    clock = _Clock(spec.budget)
    cat = spec.semigroups()
    if n == 0 and cat:
        name, S = cat[0]
        return RealizationResult("witness", LabeledFunction(("x0",), S, (S.zero,)), name)
    sizes = range(max(n, 1), spec.max_domain + 1) if spec.exhaustive_domain else [n]
    if n > spec.max_domain:
        return RealizationResult("not_found", reason="DOMAIN_CAP")
    sig = _degree_signature(G)
    start = spec.resume or {}
    for ci, (name, S) in enumerate(cat):
        if ci < start.get("cell", 0):
            continue
        for m in sizes:
            if ci == start.get("cell") and m < start.get("domain_size", 0):
                continue
            skip = start.get("offset", 0) if (ci == start.get("cell") and m == start.get("domain_size")) else 0
            labels = _labels(m)
            for k, vals in enumerate(_multisets(S, m, spec.exhaustive_domain)):
                if k < skip:
                    continue
                if clock.spent():
                    return RealizationResult("exhausted", frontier={
                        "cell": ci, "semigroup": name, "domain_size": m, "offset": k}, nodes=clock.nodes)
                clock.nodes += 1
                inst = LabeledFunction(labels, S, vals)
                H = build_graph(inst)
                if _degree_signature(H) != sig:
                    continue
                phi = iso_check(H, G, cap=TARGET_CAP)
                if phi is None:
                    continue
                witness = _relabel(inst, H, phi)
                rebuilt = build_graph(witness)
                if not rebuilt.same_as(G) or iso_check(rebuilt, G, cap=TARGET_CAP) is None:
                    raise SearchError(f"witness failed re-verification on {name}")
                return RealizationResult("witness", witness, name, nodes=clock.nodes)
    return RealizationResult("not_found", reason="CATALOG_EXHAUSTED", nodes=clock.nodes)


def _relabel(inst: LabeledFunction, H: SimpleGraph, phi: dict[str, str]) -> LabeledFunction:
    """Rename vertex labels through ``phi``; non-vertex labels get fresh names."""
    names = []
    spare = 0
    taken = set(phi.values())
    for x in inst.domain:
        if x in phi:
            names.append(phi[x])
        else:
            while f"_{spare}" in taken:
                spare += 1
            names.append(f"_{spare}")
            spare += 1
    return LabeledFunction(tuple(names), inst.codomain, inst.values)


@dataclass
class ExtremalHit:
    semigroup: str
    instance: LabeledFunction
    connected: bool
    diameter: Any
    closure: bool
    interpolation: bool | None

    def to_json(self) -> dict[str, Any]:
        from .serialize import instance_to_json

        d = self.diameter
        return {
            "semigroup": self.semigroup,
            "instance": instance_to_json(self.instance),
            "connected": self.connected,
            "diameter": "inf" if d is INF else d,
            "closure": self.closure,
            "interpolation": self.interpolation,
        }


@dataclass
class ExtremalResult:
    hits: list[ExtremalHit]
    examined: int
    exhausted: bool


def _matches(G: SimpleGraph, predicate: str, k: int) -> tuple[bool, bool, Any]:
    if len(G) < 2:
        return False, True, None
    conn = is_connected(G)
    d = diameter(G)
    if predicate == "disconnected":
        hit = not conn
    elif predicate == "diameter":
        hit = conn and d >= k
    else:
        hit = (not conn) or d >= k
    return hit, conn, d


def _flags(inst: LabeledFunction) -> tuple[bool, bool | None]:
    closure = check_closure(inst).passed
    S = inst.codomain
    if S.is_idempotent():
        ordered = LabeledFunction(inst.domain, natural_order(S), inst.values)
        return closure, check_ordered_interpolation(ordered).passed
    return closure, None


def search_extremal(spec: SearchSpec) -> ExtremalResult:
    """Collect instances whose graph is disconnected or has a large diameter.

    Labels with value zero never touch the graph or the closure condition, so
    the exhaustive mode ranges over multisets of nonzero values of size
    ``1..max_domain``, one per automorphism orbit. Each hit carries the
    closure and (for idempotent codomains) interpolation flags.
    """
    if spec.predicate is None:
        raise SearchError("extremal mode needs a predicate")
    clock = _Clock(spec.budget)
    hits: list[ExtremalHit] = []
    cat = spec.semigroups()

    def consider(name, inst) -> None:
        G = build_graph(inst)
        hit, conn, d = _matches(G, spec.predicate, spec.min_diameter)
        if hit:
            closure, interp = _flags(inst)
            hits.append(ExtremalHit(name, inst, conn, d, closure, interp))

    if spec.mode == "random":
        rng = random.Random(spec.seed)
        for _ in range(spec.samples):
            if clock.spent() or not cat:
                return ExtremalResult(hits, clock.nodes, True)
            clock.nodes += 1
            name, S = cat[rng.randrange(len(cat))]
            m = rng.randint(1, spec.max_domain)
            vals = tuple(rng.randrange(S.order) for _ in range(m))
            consider(name, LabeledFunction(_labels(m), S, vals))
        return ExtremalResult(hits, clock.nodes, False)
    if spec.mode != "exhaustive":
        raise SearchError(f"unknown mode {spec.mode!r}")
    for name, S in cat:
        for m in range(1, spec.max_domain + 1):
            for vals in _multisets(S, m, with_zero=False):
                if clock.spent():
                    return ExtremalResult(hits, clock.nodes, True)
                clock.nodes += 1
                consider(name, LabeledFunction(_labels(m), S, vals))
    return ExtremalResult(hits, clock.nodes, False)
