"""Command-line entry point: ``zdg <command> ...``.

Exit codes: 0 on success, 1 if any verdict FAILs (or a table is invalid),
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from . import algebra as alg
from .construct import build_graph
from .graph import INF, UNDEFINED, bridges, core, diameter, girth, is_connected
from .search import SearchError, SearchSpec, search_extremal, search_realization
from .semigroup import (
    Budget, BudgetExhausted, SemigroupError, chain_semilattice, enumerate_semigroups,
    null_semigroup, subset_meet_semilattice, zn_multiplicative,
)
from .serialize import (
    InputError, dumps, export, graph_from_json, graph_to_json, instance_from_json,
    instance_to_json, load_json, meta, module_from_json, semigroup_from_json,
    semigroup_to_json, to_dot,
)
from .verify import CorpusConfig, default_config, run_corpus


class UsageError(Exception):
    pass


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write(path: str, data: bytes | str) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(data if isinstance(data, bytes) else data.encode("utf-8"))


def _diam(d):
    if d is INF:
        return "inf"
    if d is UNDEFINED:
        return None
    return d


def analyze(G) -> dict:
    return {
        "vertices": len(G),
        "edges": len(G.edges),
        "diameter": _diam(diameter(G)),
        "girth": girth(G),
        "connected": is_connected(G),
        "core_edges": len(core(G).edges),
        "bridges": [sorted(e) for e in sorted(bridges(G), key=sorted)],
    }


def _dot_header(m: dict) -> str:
    inputs = " ".join(f"{k}={v}" for k, v in sorted(m["inputs"].items()))
    return f"zdg {m['version']} seed={m['seed']} {inputs}".rstrip()


def _graph_outputs(G, args, m) -> None:
    if getattr(args, "dot", None):
        _write(args.dot, to_dot(G, header=_dot_header(m)))
    if getattr(args, "json_out", None):
        _write(args.json_out, dumps({**graph_to_json(G), "meta": m}) + "\n")
    if getattr(args, "plot", None):
        from .plotting import plot_graph

        plot_graph(G, args.plot)


# ---------------------------------------------------------------- commands

def cmd_semigroup_validate(args) -> int:
    d = load_json(args.file)
    try:
        S = semigroup_from_json(d, args.file)
    except SemigroupError as e:
        _emit({"valid": False, "error": type(e).__name__, "message": str(e),
               "witness": list(getattr(e, "witness", ())), "meta": meta(None, [args.file])})
        return 1
    _emit({"valid": True, "order": S.order, "meta": meta(None, [args.file])})
    return 0


def cmd_semigroup_gen(args) -> int:
    if args.family == "zn":
        S = zn_multiplicative(args.n)
    elif args.family == "null":
        S = null_semigroup(args.n)
    elif args.family == "chain":
        S = chain_semilattice(args.n)
    else:
        S = subset_meet_semilattice(args.n)
    _emit(semigroup_to_json(S), args.out)
    return 0


def cmd_semigroup_enum(args) -> int:
    budget = Budget(args.max_nodes, args.max_seconds)
    resume = tuple(json.loads(args.resume)) if args.resume else None
    out = Path(args.out) if args.out else None
    found = []
    exhausted = None
    try:
        for S in enumerate_semigroups(args.order, budget, resume):
            found.append(S)
    except BudgetExhausted as e:
        exhausted = list(e.resume)
    if out:
        out.mkdir(parents=True, exist_ok=True)
        offset = args.index_offset
        for i, S in enumerate(found):
            (out / f"order{args.order}_{offset + i:04d}.json").write_text(
                dumps(semigroup_to_json(S)) + "\n", encoding="utf-8")
    _emit({"order": args.order, "count": len(found), "exhausted": exhausted is not None,
           "resume": exhausted, "tables": None if out else [semigroup_to_json(S) for S in found]})
    return 0


def cmd_gamma_build(args) -> int:
    path = Path(args.instance)
    inst = instance_from_json(load_json(path), path.parent, str(path))
    G = build_graph(inst)
    m = meta(None, [path])
    _graph_outputs(G, args, m)
    _emit({"graph": graph_to_json(G), "analysis": analyze(G), "meta": m})
    return 0


def cmd_graph_analyze(args) -> int:
    G = graph_from_json(load_json(args.input), args.input)
    if args.plot:
        from .plotting import plot_graph

        plot_graph(G, args.plot)
    res = analyze(G)
    res["meta"] = meta(None, [args.input])
    _emit(res)
    return 0


def cmd_export(args) -> int:
    G = graph_from_json(load_json(args.input), args.input)
    fmt = args.format or ("dot" if args.dot else "json")
    data = export(G, fmt)
    if args.out:
        _write(args.out, data)
    else:
        sys.stdout.write(data.decode())
    return 0


def cmd_module_gamma(args) -> int:
    path = Path(args.module)
    M = module_from_json(load_json(path), path.parent, str(path))
    inst = {"ann": alg.ann_instance, "content": alg.content_instance,
            "residual": alg.residual_instance}[args.kind](M)
    G = build_graph(inst)
    m = meta(None, [path])
    _graph_outputs(G, args, m)
    _emit({"kind": args.kind, "instance": instance_to_json(inst), "graph": graph_to_json(G),
           "analysis": analyze(G), "meta": m})
    return 0


def cmd_verify(args) -> int:
    inputs = []
    if args.config:
        cfg = CorpusConfig.from_json(load_json(args.config), Path(args.config).parent)
        inputs.append(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
    else:
        cfg = default_config(args.seed or 0)
    if args.checks:
        cfg = CorpusConfig(cfg.families, args.checks.split(","), cfg.caps, cfg.seed)
    report = run_corpus(cfg, jobs=args.jobs)
    m = meta(cfg.seed, inputs)
    lines = report.ndjson_lines(m, timing=not args.no_timing)
    text = "\n".join(lines) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if args.figures:
        from .plotting import plot_diameters, plot_verdicts

        fig_dir = Path(args.figures)
        plot_verdicts(report.counts(), fig_dir / "verdicts.png")
        diams = [r.info["diameter"] for r in report.records if "diameter" in r.info]
        plot_diameters(diams, fig_dir / "diameters.png")
    summary = report.summary()
    for e in report.errors:
        sys.stderr.write(f"zdg verify: family {e['family']} ({e['kind']}) skipped: {e['error']}\n")
    sys.stderr.write(f"zdg verify: {summary['records']} verdicts {summary['status']}\n")
    return 1 if report.failures else 0


def cmd_realize(args) -> int:
    G = graph_from_json(load_json(args.target), args.target)
    spec = SearchSpec(target=G, max_order=args.max_order, max_domain=args.max_domain,
                      budget=Budget(args.max_nodes, args.max_seconds), seed=args.seed,
                      exhaustive_domain=args.exhaustive_domain)
    r = search_realization(spec)
    _emit({"result": r.kind, "semigroup": r.semigroup, "reason": r.reason, "frontier": r.frontier,
           "nodes": r.nodes, "witness": instance_to_json(r.instance) if r.instance else None,
           "meta": meta(args.seed, [args.target])}, args.out)
    return 0


def cmd_extremal(args) -> int:
    spec = SearchSpec(predicate=args.predicate, min_diameter=args.min_diameter,
                      max_order=args.max_order, max_domain=args.max_domain,
                      budget=Budget(args.max_nodes, args.max_seconds), seed=args.seed,
                      mode=args.mode, samples=args.samples)
    r = search_extremal(spec)
    hits = [h for h in r.hits if h.closure or not args.only_closure]
    _emit({"predicate": args.predicate, "min_diameter": args.min_diameter, "examined": r.examined,
           "exhausted": r.exhausted, "count": len(hits),
           "closure_passing": sum(h.closure for h in hits),
           "instances": [h.to_json() for h in hits], "meta": meta(args.seed)}, args.out)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zdg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"zdg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sg = sub.add_parser("semigroup", help="validate, generate or enumerate semigroup tables")
    sgs = sg.add_subparsers(dest="action", required=True)
    v = sgs.add_parser("validate")
    v.add_argument("file")
    v.set_defaults(func=cmd_semigroup_validate)
    g = sgs.add_parser("gen")
    g.add_argument("family", choices=["zn", "null", "chain", "semilattice"])
    g.add_argument("--n", "--order", "--k", dest="n", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_semigroup_gen)
    e = sgs.add_parser("enum")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--out")
    e.add_argument("--max-nodes", type=int)
    e.add_argument("--max-seconds", type=float)
    e.add_argument("--resume", help="resume token (JSON list) from a previous run")
    e.add_argument("--index-offset", type=int, default=0)
    e.set_defaults(func=cmd_semigroup_enum)

    def graph_outputs(sp):
        sp.add_argument("--dot", help="write DOT here")
        sp.add_argument("--json", dest="json_out", help="write graph JSON here")
        sp.add_argument("--plot", help="write a PNG drawing here")

    gm = sub.add_parser("gamma", help="build the zero-divisor graph of an instance")
    gms = gm.add_subparsers(dest="action", required=True)
    b = gms.add_parser("build")
    b.add_argument("instance")
    graph_outputs(b)
    b.set_defaults(func=cmd_gamma_build)

    gr = sub.add_parser("graph", help="analyze or export a graph")
    grs = gr.add_subparsers(dest="action", required=True)
    a = grs.add_parser("analyze")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--plot")
    a.set_defaults(func=cmd_graph_analyze)
    x = grs.add_parser("export")
    x.add_argument("--in", dest="input", required=True)
    fmt = x.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    x.add_argument("--out")
    x.set_defaults(func=cmd_export, format=None)

    ex = sub.add_parser("export", help="serialize a graph as DOT or JSON")
    ex.add_argument("--in", dest="input", required=True)
    ex.add_argument("--format", choices=["dot", "json"], default="dot")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_export, dot=False)

    md = sub.add_parser("module", help="graphs attached to a semimodule")
    mds = md.add_subparsers(dest="action", required=True)
    mg = mds.add_parser("gamma")
    mg.add_argument("module")
    mg.add_argument("--kind", choices=["ann", "content", "residual"], required=True)
    graph_outputs(mg)
    mg.set_defaults(func=cmd_module_gamma)

    vf = sub.add_parser("verify", help="run theorem checks over a corpus")
    vf.add_argument("--config")
    vf.add_argument("--out")
    vf.add_argument("--figures", help="directory for PNG summaries")
    vf.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
    vf.add_argument("--seed", type=int)
    vf.add_argument("--checks", help="comma-separated check ids")
    vf.add_argument("--no-timing", action="store_true", help="write millis as 0 for byte-stable output")
    vf.set_defaults(func=cmd_verify)

    def search_caps(sp, order, domain):
        sp.add_argument("--max-order", type=int, default=order)
        sp.add_argument("--max-domain", type=int, default=domain)
        sp.add_argument("--max-nodes", type=int)
        sp.add_argument("--max-seconds", type=float)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")

    rz = sub.add_parser("realize", help="search for a map realizing a target graph")
    rz.add_argument("--target", required=True)
    rz.add_argument("--exhaustive-domain", action="store_true")
    search_caps(rz, 6, 5)
    rz.set_defaults(func=cmd_realize)

    xm = sub.add_parser("extremal", help="search for disconnected or large-diameter instances")
    xm.add_argument("--predicate", choices=["disconnected", "diameter", "either"], required=True)
    xm.add_argument("--min-diameter", type=int, default=4)
    xm.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    xm.add_argument("--samples", type=int, default=1000)
    xm.add_argument("--only-closure", action="store_true")
    search_caps(xm, 4, 4)
    xm.set_defaults(func=cmd_extremal)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (InputError, alg.AlgebraError, SemigroupError, SearchError, ValueError) as e:
        sys.stderr.write(f"zdg: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
