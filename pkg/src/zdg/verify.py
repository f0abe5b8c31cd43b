"""Executable theorem checks and the corpus runner.

Each check returns a :class:`VerdictReport`. A check reports NOT_APPLICABLE
when the theorem's hypothesis fails on the instance, VACUOUS when the graph it
speaks about is empty, and FAIL only with an explicit counterexample. Since the
checked statements are theorems, a FAIL on a hypothesis-satisfying instance
points at a bug in this package.
"""
from __future__ import annotations

import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import algebra as alg
from .catalog import catalog_semigroups, enumerated
from .construct import (
    LabeledFunction, build_graph, check_closure, check_ordered_interpolation, table_of,
)
from .graph import (
    INF, SimpleGraph, bridges, common_neighbors, core, diameter, edge_in_short_cycle,
    farthest_pair, girth, is_connected, path_short_cycle, paths_of_length_two,
)
from .semigroup import (
    DEFAULT_CAPS, BoundedSemilattice, Caps, OrderedSemigroup, SemigroupError,
    chain_semilattice, find_largest_d, natural_order, subset_meet_semilattice, zn_multiplicative,
)
from .verdict import Status, VerdictReport

# -------------------------------------------------------------------- helpers


def _diam_json(d):
    if d is INF:
        return "inf"
    return d if isinstance(d, int) else "undefined"


def _connected_within_three(check_id: str, G: SimpleGraph) -> VerdictReport:
    if len(G) == 0:
        return VerdictReport(check_id, Status.VACUOUS, reason="EMPTY_GRAPH")
    d = diameter(G)
    if d is not INF and d <= 3:
        return VerdictReport(check_id, Status.PASS, info={"diameter": d, "vertices": len(G)})
    u, v, dist = farthest_pair(G)
    return VerdictReport(check_id, Status.FAIL,
                         witness={"pair": [u, v], "distance": _diam_json(dist)})


def _edge_cycles(G: SimpleGraph, edges) -> tuple[dict[str, list[str]], list[str] | None]:
    found = {}
    for e in sorted(edges, key=lambda e: sorted(e)):
        ok, cyc = edge_in_short_cycle(G, e, 4)
        if not ok:
            return found, sorted(e)
        found["-".join(sorted(e))] = cyc
    return found, None


# -------------------------------------------------------------------- instance checks

def verify_diameter_theorem(inst: LabeledFunction, graph: SimpleGraph | None = None) -> VerdictReport:
    """Product-closed images give a connected graph of diameter at most 3."""
    closure = check_closure(inst)
    if not closure.passed:
        return VerdictReport("closure_diameter", Status.NOT_APPLICABLE,
                             reason="CLOSURE_FAILED", witness=closure.witness)
    G = build_graph(inst) if graph is None else graph
    return _connected_within_three("closure_diameter", G)


def verify_ordered_theorem(inst: LabeledFunction, graph: SimpleGraph | None = None) -> VerdictReport:
    """Interpolating maps into an ordered semigroup give diameter at most 3.

    The gate is interpolation plus a compatible order with zero at the bottom;
    those are the properties the argument uses. The positivity flag is only
    recorded, since it fails for ideal semigroups such as those of Z4.
    """
    interp = check_ordered_interpolation(inst)
    S = inst.codomain
    info = {"positive": S.positive, "compatible": S.compatible}
    if not interp.passed:
        return VerdictReport("ordered_diameter", Status.NOT_APPLICABLE, reason="INTERPOLATION_FAILED",
                             witness=interp.witness, info=info)
    if not S.compatible:
        return VerdictReport("ordered_diameter", Status.NOT_APPLICABLE, reason="ORDER_NOT_COMPATIBLE",
                             info=info)
    if not S.zero_is_least():
        return VerdictReport("ordered_diameter", Status.NOT_APPLICABLE, reason="ZERO_NOT_LEAST",
                             info=info)
    G = build_graph(inst) if graph is None else graph
    v = _connected_within_three("ordered_diameter", G)
    v.info.update(info)
    return v


def verify_uniontrirect(inst: LabeledFunction | None, graph: SimpleGraph | None = None) -> VerdictReport:
    """Every edge on a 3- or 4-cycle when no path ``a-x-b`` has ``x`` as the only common neighbor."""
    cid = "short_cycles"
    G = build_graph(inst) if graph is None else graph
    if len(G) < 3:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="FEWER_THAN_3_VERTICES")
    d = diameter(G)
    if d is INF or d > 3:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="NOT_CONNECTED_WITHIN_3",
                             witness={"diameter": _diam_json(d)})
    for a, x, b in paths_of_length_two(G):
        if common_neighbors(G, a, b) == {x}:
            return VerdictReport(cid, Status.NOT_APPLICABLE, reason="UNIQUE_COMMON_NEIGHBOR",
                                 witness={"path": [a, x, b]})
    cycles, bad = _edge_cycles(G, G.edges)
    if bad:
        return VerdictReport(cid, Status.FAIL, witness={"edge": bad})
    return VerdictReport(cid, Status.PASS, witness={"cycles": cycles})


def verify_core_theorem(inst: LabeledFunction, graph: SimpleGraph | None = None) -> VerdictReport:
    """With product-closed images and a cycle, every core edge lies on a 3- or 4-cycle."""
    cid = "core_cycles"
    G = build_graph(inst) if graph is None else graph
    if len(G) < 3:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="FEWER_THAN_3_VERTICES")
    closure = check_closure(inst)
    if not closure.passed:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="CLOSURE_FAILED", witness=closure.witness)
    if girth(G) is None:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="ACYCLIC")
    K = core(G)
    cycles, bad = _edge_cycles(G, K.edges)
    if bad:
        return VerdictReport(cid, Status.FAIL, witness={"edge": bad})
    return VerdictReport(cid, Status.PASS, witness={"cycles": cycles},
                         info={"core_edges": len(K.edges), "bridges": len(bridges(G))})


def verify_path_dichotomy(graph: SimpleGraph) -> VerdictReport:
    """For each path ``a-x-b``: ``N(a) & N(b) == {x}`` or a cycle of length <= 4 contains it."""
    cid = "path_dichotomy"
    n = 0
    for a, x, b in paths_of_length_two(graph):
        n += 1
        if common_neighbors(graph, a, b) != {x} and path_short_cycle(graph, a, x, b) is None:
            return VerdictReport(cid, Status.FAIL, witness={"path": [a, x, b]})
    if n == 0:
        return VerdictReport(cid, Status.VACUOUS, reason="NO_PATHS_OF_LENGTH_2")
    return VerdictReport(cid, Status.PASS, info={"paths": n})


def verify_semilattice_prop(S: BoundedSemilattice, inst: LabeledFunction | None = None) -> VerdictReport:
    """Diameter 1 given a largest square-zero element of ``S - {0, 1}``.

    Idempotence makes ``d*d = d`` for every ``d``, so the hypothesis never
    holds for a nonzero ``d``; the expected verdict is NOT_APPLICABLE.
    """
    cid = "semilattice_diameter"
    if S.order < 2:
        d, reason = None, "NO_NILPOTENT"
    else:
        d, reason = find_largest_d(S)
    if d is None:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason=reason)
    if inst is None:
        inst = LabeledFunction.identity(S)
    G = build_graph(inst)
    if len(G) < 2:
        return VerdictReport(cid, Status.VACUOUS, reason="FEWER_THAN_2_VERTICES")
    if diameter(G) == 1:
        return VerdictReport(cid, Status.PASS, info={"d": S.labels[d]})
    u, v, dist = farthest_pair(G)
    return VerdictReport(cid, Status.FAIL, witness={"pair": [u, v], "distance": _diam_json(dist)})


# -------------------------------------------------------------------- module checks

def verify_maximal_ideal_cor(S: alg.FiniteSemiring, M: alg.FiniteModule,
                             caps: Caps = DEFAULT_CAPS) -> VerdictReport:
    """A unique maximal ideal squaring to zero forces a complete residual graph."""
    cid = "maximal_ideal_diameter"
    maxes = alg.maximal_ideals(S, caps)
    if len(maxes) != 1:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="NOT_UNIQUE_MAXIMAL_IDEAL",
                             witness={"maximal_ideals": [I.label for I in maxes]})
    m = maxes[0]
    if alg.ideal_product(m, m).elements != {S.zero}:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="MAXIMAL_SQUARE_NONZERO",
                             witness={"maximal_ideal": m.label})
    G = alg.gamma_residual(M, caps)
    if len(G) < 2:
        return VerdictReport(cid, Status.NOT_APPLICABLE, reason="FEWER_THAN_2_VERTICES",
                             witness={"maximal_ideal": m.label})
    if diameter(G) == 1:
        return VerdictReport(cid, Status.PASS, info={"maximal_ideal": m.label, "vertices": len(G)})
    u, v, dist = farthest_pair(G)
    return VerdictReport(cid, Status.FAIL, witness={"pair": [u, v], "distance": _diam_json(dist)})


def verify_annihilator_cor(M: alg.FiniteModule, caps: Caps = DEFAULT_CAPS) -> VerdictReport:
    cond = alg.has_annihilator_condition(M)
    if not cond.passed:
        return VerdictReport("annihilator_diameter", Status.NOT_APPLICABLE,
                             reason="NO_ANNIHILATOR_CONDITION", witness=cond.witness)
    return _connected_within_three("annihilator_diameter", alg.gamma_ann(M, caps))


def verify_content_cor(M: alg.FiniteModule, caps: Caps = DEFAULT_CAPS) -> VerdictReport:
    for cond in (alg.is_content_semimodule(M, caps), alg.content_onto_fg_ideals(M, caps)):
        if not cond.passed:
            return VerdictReport("content_diameter", Status.NOT_APPLICABLE,
                                 reason=cond.check_id.upper() + "_FAILED", witness=cond.witness)
    return _connected_within_three("content_diameter", alg.gamma_content(M, caps))


def verify_residual_cor(M: alg.FiniteModule, caps: Caps = DEFAULT_CAPS) -> VerdictReport:
    v = _connected_within_three("residual_diameter", alg.gamma_residual(M, caps))
    v.info["positive"] = alg.ideal_semigroup(M.scalars, "product", caps).positive
    return v


def verify_residual_props(M: alg.FiniteModule, caps: Caps = DEFAULT_CAPS) -> VerdictReport:
    """Residuals are ideals, ``[P:M][Q:M]`` lies in ``[P&Q:M]``, and residuals are monotone."""
    cid = "residual_ideal_props"
    S = M.scalars
    subs = alg.submodules(M, caps)
    res = {N.elements: alg.residual(N, M) for N in subs}
    for N, R in res.items():
        if not alg._is_ideal(S, R.elements):
            return VerdictReport(cid, Status.FAIL, witness={"clause": "ideal", "submodule": sorted(N)})
    pairs = 0
    for P in subs:
        for Q in subs:
            pairs += 1
            RP, RQ = res[P.elements], res[Q.elements]
            meet = res[P.elements & Q.elements]
            if not alg.ideal_product(RP, RQ).elements <= meet.elements:
                return VerdictReport(cid, Status.FAIL, witness={
                    "clause": "product", "P": P.label, "Q": Q.label})
            if P.elements <= Q.elements and not RP.elements <= RQ.elements:
                return VerdictReport(cid, Status.FAIL, witness={
                    "clause": "monotone", "P": P.label, "Q": Q.label})
    return VerdictReport(cid, Status.PASS, info={"submodules": len(subs), "pairs": pairs})


def verify_ann_identities(M: alg.FiniteModule) -> VerdictReport:
    cid = "annihilator_identity"
    single = [alg.ann(M, [x]).elements for x in M.elements]
    for x in M.elements:
        for y in M.elements[x:]:
            if alg.ann(M, [x, y]).elements != single[x] & single[y]:
                return VerdictReport(cid, Status.FAIL, witness={"pair": [M.labels[x], M.labels[y]]})
    return VerdictReport(cid, Status.PASS)


def verify_act_cor(inst: LabeledFunction) -> VerdictReport:
    """Annihilator graphs of union-closed families are connected within distance 3."""
    return _connected_within_three("act_diameter", build_graph(inst))


# -------------------------------------------------------------------- corpus


@dataclass
class CorpusItem:
    ref: str
    instance: LabeledFunction | None = None
    module: alg.FiniteModule | None = None
    graph: SimpleGraph | None = None
    semilattice: BoundedSemilattice | None = None
    tags: frozenset[str] = frozenset()


def _instance_check(fn):
    return lambda item, caps: fn(item.instance, item.graph) if item.instance is not None else None


CHECKS: dict[str, Callable[[CorpusItem, Caps], VerdictReport | None]] = {
    "closure_diameter": _instance_check(verify_diameter_theorem),
    "ordered_diameter": lambda it, caps: (
        verify_ordered_theorem(it.instance, it.graph)
        if it.instance is not None and isinstance(it.instance.codomain, OrderedSemigroup) else None),
    "short_cycles": _instance_check(verify_uniontrirect),
    "core_cycles": _instance_check(verify_core_theorem),
    "path_dichotomy": lambda it, caps: (
        verify_path_dichotomy(it.graph if it.graph is not None else build_graph(it.instance))
        if it.instance is not None or it.graph is not None else None),
    "semilattice_diameter": lambda it, caps: (
        verify_semilattice_prop(it.semilattice, it.instance) if it.semilattice is not None else None),
    "act_diameter": lambda it, caps: verify_act_cor(it.instance) if "act" in it.tags else None,
    "annihilator_diameter": lambda it, caps: (
        verify_annihilator_cor(it.module, caps) if it.module is not None else None),
    "content_diameter": lambda it, caps: (
        verify_content_cor(it.module, caps) if it.module is not None else None),
    "residual_diameter": lambda it, caps: (
        verify_residual_cor(it.module, caps) if it.module is not None else None),
    "residual_ideal_props": lambda it, caps: (
        verify_residual_props(it.module, caps) if it.module is not None else None),
    "annihilator_identity": lambda it, caps: (
        verify_ann_identities(it.module) if it.module is not None else None),
    "maximal_ideal_diameter": lambda it, caps: (
        verify_maximal_ideal_cor(it.module.scalars, it.module, caps) if it.module is not None else None),
}


@dataclass
class CorpusConfig:
    families: list[dict[str, Any]] = field(default_factory=list)
    checks: list[str] | None = None
    caps: Caps = DEFAULT_CAPS
    seed: int = 0

    def __post_init__(self):
        unknown = set(self.checks or ()) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    @classmethod
    def from_json(cls, d: dict, base: Path | None = None) -> "CorpusConfig":
        caps = Caps(**d.get("caps", {}))
        fams = []
        for fam in d.get("families", []):
            if fam.get("kind") == "fixture":
                fam = dict(fam, _base=str(base) if base else None)
            fams.append(fam)
        return cls(fams, d.get("checks"), caps, int(d.get("seed", 0)))


def _range(fam, key, default):
    v = fam.get(key, default)
    if isinstance(v, int):
        return [v]
    if isinstance(v, list) and len(v) == 2:
        return list(range(v[0], v[1] + 1))
    return list(v)


def random_instance(rng: random.Random, catalog, max_domain: int,
                    complete: bool) -> tuple[str, LabeledFunction]:
    """A random ``f`` into a catalog semigroup; ``complete`` adds labels until products close."""
    name, S = catalog[rng.randrange(len(catalog))]
    size = rng.randint(1, max_domain)
    vals = [rng.randrange(S.order) for _ in range(size)]
    if complete:
        image = set(vals)
        changed = True
        while changed:
            changed = False
            for a in sorted(image):
                for b in sorted(image):
                    p = S.mul[a][b]
                    if p != S.zero and p not in image:
                        image.add(p)
                        vals.append(p)
                        changed = True
    inst = LabeledFunction(tuple(f"x{i}" for i in range(len(vals))), S, tuple(vals))
    return name, inst


def _module_items(ref: str, M: alg.FiniteModule, caps: Caps) -> list[CorpusItem]:
    return [
        CorpusItem(ref, module=M, tags=frozenset({"module"})),
        CorpusItem(ref + "/ann", instance=alg.ann_instance(M, caps), tags=frozenset({"ann"})),
        CorpusItem(ref + "/content", instance=alg.content_instance(M, caps), tags=frozenset({"content"})),
        CorpusItem(ref + "/residual", instance=alg.residual_instance(M, caps), tags=frozenset({"residual"})),
    ]


def _identity_item(ref, S, semilattice=None, tags=()):
    cod = natural_order(S) if semilattice is not None else S
    return CorpusItem(ref, instance=LabeledFunction.identity(cod), semilattice=semilattice,
                      tags=frozenset(tags))


def generate_items(fam: dict[str, Any], seed: int, caps: Caps = DEFAULT_CAPS) -> list[CorpusItem]:
    """Expand one family spec into corpus items, deterministically."""
    from .serialize import _resolve, graph_from_json, instance_from_json

    kind = fam.get("kind")
    if kind == "zn":
        lo, hi = fam.get("min", 2), fam.get("max", 50)
        return [_identity_item(f"zn:{n}", zn_multiplicative(n), tags={"classic"}) for n in range(lo, hi + 1)]
    if kind == "semilattice":
        out = []
        for k in fam.get("k", [1, 2, 3, 4]):
            L = subset_meet_semilattice(k, caps)
            out.append(_identity_item(f"semilattice:k={k}", L.base, L, {"semilattice"}))
        return out
    if kind == "chain":
        out = []
        for n in fam.get("orders", list(range(2, 17))):
            L = chain_semilattice(n)
            out.append(_identity_item(f"chain:{n}", L.base, L, {"semilattice"}))
        return out
    if kind == "enumerated":
        out = []
        for n in fam.get("orders", [2, 3, 4]):
            out += [_identity_item(f"enum:{n}#{i}", S, tags={"classic"})
                    for i, S in enumerate(enumerated(n))]
        return out
    if kind == "random":
        s = fam.get("seed", seed)
        rng = random.Random(s)
        catalog = catalog_semigroups(fam.get("max_order", 6))
        count = fam.get("count", 100)
        require = fam.get("require")
        out = []
        attempts = 0
        while len(out) < count and attempts < 50 * count:
            complete = attempts % 2 == 1
            name, inst = random_instance(rng, catalog, fam.get("max_domain", 6), complete)
            attempts += 1
            if require == "closure_nonempty" and not (check_closure(inst).passed and len(build_graph(inst))):
                continue
            out.append(CorpusItem(f"random[seed={s}]#{attempts - 1}:{name}", instance=inst,
                                  tags=frozenset({"random"})))
        return out
    if kind == "modules":
        out = []
        for n in _range(fam, "zn", []):
            out += _module_items(f"module:Z{n}", alg.regular_module(alg.zn_ring(n)), caps)
        for n in _range(fam, "znxzn", []):
            out += _module_items(f"module:Z{n}^2", alg.power_module(alg.zn_ring(n), 2), caps)
        for a, b in fam.get("products", []):
            R = alg.product_semiring(alg.zn_ring(a), alg.zn_ring(b))
            out += _module_items(f"module:Z{a}xZ{b}", alg.regular_module(R), caps)
        if fam.get("boolean"):
            B = alg.boolean_semiring()
            out += _module_items("module:B", alg.regular_module(B), caps)
            out += _module_items("module:B^2", alg.power_module(B, 2), caps)
        for n in fam.get("zero", []):
            out += _module_items(f"module:0/Z{n}", alg.zero_module(alg.zn_ring(n)), caps)
        return out
    if kind == "acts":
        out = []
        for n in _range(fam, "zn", [2, 8]):
            S = zn_multiplicative(n)
            fam_sets = _union_closure([{x} for x in range(1, n)])
            inst = alg.act_ann_instance(S, S.mul, 0, fam_sets, caps=caps)
            out.append(CorpusItem(f"act:Z{n}", instance=inst, tags=frozenset({"act"})))
        return out
    if kind == "fixture":
        base = Path(fam["_base"]) if fam.get("_base") else None
        d, ibase = _resolve(fam["instance"], base)
        inst = instance_from_json(d, ibase, "fixture.instance")
        G = None
        if "graph" in fam:
            g, _ = _resolve(fam["graph"], base)
            G = graph_from_json(g, "fixture.graph")
        return [CorpusItem(fam.get("ref", "fixture"), instance=inst, graph=G, tags=frozenset({"fixture"}))]
    raise ValueError(f"unknown family kind {kind!r}")


def _union_closure(sets):
    seen = {frozenset(s) for s in sets}
    frontier = list(seen)
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(seen):
                C = A | B
                if C not in seen:
                    seen.add(C)
                    nxt.append(C)
        frontier = nxt
    return seen


def evaluate(item: CorpusItem, checks: list[str], caps: Caps = DEFAULT_CAPS) -> list[VerdictReport]:
    out = []
    for cid in checks:
        t0 = time.perf_counter()
        try:
            v = CHECKS[cid](item, caps)
        except (SemigroupError, alg.AlgebraError) as e:
            v = VerdictReport(cid, Status.NOT_APPLICABLE, reason="CAP_EXCEEDED", witness={"error": str(e)})
        if v is None:
            continue
        v.instance_ref = item.ref
        v.millis = round((time.perf_counter() - t0) * 1000, 3)
        out.append(v)
    return out


def _evaluate_star(args):
    return evaluate(*args)


@dataclass
class CorpusReport:
    records: list[VerdictReport]
    errors: list[dict[str, Any]] = field(default_factory=list)

    @property
    def failures(self) -> list[VerdictReport]:
        return [r for r in self.records if r.status is Status.FAIL]

    def counts(self) -> dict[str, dict[str, int]]:
        c: dict[str, Counter] = {}
        for r in self.records:
            c.setdefault(r.check_id, Counter())[r.status.value] += 1
        return {k: dict(sorted(v.items())) for k, v in sorted(c.items())}

    def summary(self) -> dict[str, Any]:
        total = Counter(r.status.value for r in self.records)
        return {"records": len(self.records), "status": dict(sorted(total.items())),
                "by_check": self.counts(), "errors": self.errors}

    def ndjson_lines(self, meta: dict | None = None, timing: bool = True) -> list[str]:
        from .serialize import dumps

        lines = []
        for r in self.records:
            rec = r.to_record()
            if not timing:
                rec["millis"] = 0
            lines.append(dumps(rec))
        lines.append(dumps({"summary": self.summary(), "meta": meta or {}}))
        return lines


def run_corpus(cfg: CorpusConfig, jobs: int | None = 1) -> CorpusReport:
    """Evaluate every selected check on every generated item, in a fixed order.

    Generation failures (caps, malformed fixtures) are logged per family and
    never abort the sweep. ``jobs`` changes wall-clock time only.
    """
    checks = list(cfg.checks) if cfg.checks else list(CHECKS)
    items: list[CorpusItem] = []
    errors = []
    for i, fam in enumerate(cfg.families):
        try:
            items += generate_items(fam, cfg.seed, cfg.caps)
        except (ValueError, KeyError) as e:
            errors.append({"family": i, "kind": fam.get("kind"), "error": str(e)})
    jobs = jobs or os.cpu_count() or 1
    args = [(it, checks, cfg.caps) for it in items]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_evaluate_star, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        results = [evaluate(*a) for a in args]
    return CorpusReport([v for vs in results for v in vs], errors)


def default_config(seed: int = 0) -> CorpusConfig:
    """The standard sweep used by ``zdg verify`` without ``--config``."""
    return CorpusConfig(
        families=[
            {"kind": "zn", "min": 2, "max": 50},
            {"kind": "semilattice", "k": [1, 2, 3, 4]},
            {"kind": "chain", "orders": list(range(2, 17))},
            {"kind": "enumerated", "orders": [2, 3, 4]},
            {"kind": "random", "seed": seed, "count": 200, "max_order": 6, "max_domain": 6},
            {"kind": "modules", "zn": [2, 16], "znxzn": [2, 4], "products": [[2, 2], [2, 3]], "boolean": True,
             "zero": [6]},
            {"kind": "acts", "zn": [2, 8]},
        ],
        seed=seed,
    )
