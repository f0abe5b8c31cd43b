"""JSON and DOT formats for tables, instances, modules and graphs.

All writers sort keys, vertices and edges so output is byte-stable.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from . import __version__
from .algebra import (
    FiniteModule, FiniteSemiring, boolean_semiring, power_module, product_semiring,
    regular_module, zero_module, zn_ring,
)
from .construct import LabeledFunction, table_of
from .graph import SimpleGraph, label_key
from .semigroup import (
    BoundedSemilattice, OrderedSemigroup, SemigroupTable, chain_semilattice, null_semigroup,
    subset_meet_semilattice, validate, zn_multiplicative,
)


class InputError(ValueError):
    """Malformed input; the message names the file and position."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def meta(seed: int | None = None, inputs: list[str | Path] = ()) -> dict:
    return {
        "tool": "zdg",
        "version": __version__,
        "seed": seed,
        "inputs": {str(p): digest(p) for p in inputs},
    }


def _resolve(obj, base: Path | None):
    """Inline ``obj`` if it is a file reference."""
    if isinstance(obj, str):
        p = Path(obj)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p), p.parent
    return obj, base


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{where}: missing key {key!r}")
    return d[key]


# ---------------------------------------------------------------- semigroups

def semigroup_to_json(S) -> dict:
    T = table_of(S)
    d = {"order": T.order, "zero": T.zero, "mul": [list(r) for r in T.mul], "labels": list(T.labels)}
    if isinstance(S, OrderedSemigroup):
        d["leq"] = [list(r) for r in S.leq]
    if isinstance(S, BoundedSemilattice):
        d["one"] = S.one
    return d


_SEMIGROUP_BUILTINS = {
    "zn": lambda d: zn_multiplicative(int(d["n"])),
    "null": lambda d: null_semigroup(int(d["order"])),
    "chain": lambda d: chain_semilattice(int(d["order"])),
    "semilattice": lambda d: subset_meet_semilattice(int(d["k"])),
}


def semigroup_from_json(d: dict, where: str = "semigroup"):
    """Validate a table (or build a builtin); attaches ``leq`` or ``one`` if present."""
    if isinstance(d, dict) and "builtin" in d:
        try:
            return _SEMIGROUP_BUILTINS[d["builtin"]](d)
        except KeyError as e:
            raise InputError(f"{where}: unknown builtin or missing parameter {e}") from None
    mul = _require(d, "mul", where)
    S = validate(mul, int(d.get("zero", 0)), d.get("labels"))
    if d.get("zero", 0) != 0 and ("leq" in d or "one" in d):
        raise InputError(f"{where}: 'leq'/'one' need zero at index 0")
    if "leq" in d:
        return OrderedSemigroup.from_relation(S, d["leq"])
    if "one" in d:
        return BoundedSemilattice(S, int(d["one"]))
    return S


# ---------------------------------------------------------------- instances

def instance_to_json(inst: LabeledFunction) -> dict:
    return {
        "semigroup": semigroup_to_json(inst.codomain),
        "domain": list(inst.domain),
        "f": {x: v for x, v in inst.items()},
    }


def instance_from_json(d: dict, base: Path | None = None, where: str = "instance") -> LabeledFunction:
    sg, sbase = _resolve(_require(d, "semigroup", where), base)
    S = semigroup_from_json(sg, where + ".semigroup")
    if d.get("order") is not None:
        S = OrderedSemigroup.from_relation(table_of(S), d["order"])
    f = _require(d, "f", where)
    T = table_of(S)
    vals = {}
    for x, v in f.items():
        # values may be indices or element labels
        if isinstance(v, str):
            if v not in T.labels:
                raise InputError(f"{where}: f({x}) = {v!r} is not an element label")
            v = T.labels.index(v)
        vals[str(x)] = int(v)
    return LabeledFunction.from_mapping(S, vals, d.get("domain"))


# ---------------------------------------------------------------- graphs

def graph_to_json(G: SimpleGraph) -> dict:
    return {"vertices": G.sorted_vertices(), "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_json(d: dict, where: str = "graph") -> SimpleGraph:
    verts = d.get("vertices", []) if isinstance(d, dict) else None
    edges = _require(d, "edges", where)
    try:
        return SimpleGraph.build([str(v) for v in verts], [(str(u), str(v)) for u, v in edges])
    except (TypeError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: SimpleGraph, name: str = "G", header: str | None = None) -> str:
    lines = []
    if header:
        lines.append(f"// {header}")
    lines.append(f"graph {name} {{")
    lines += [f"  {_dot_id(v)};" for v in G.sorted_vertices()]
    lines += [f"  {_dot_id(u)} -- {_dot_id(v)};" for u, v in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(G: SimpleGraph, fmt: str) -> bytes:
    """Serialize ``G`` as ``"dot"`` or ``"json"``."""
    if fmt == "dot":
        return to_dot(G).encode()
    if fmt == "json":
        return (dumps(graph_to_json(G)) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r}")


# ---------------------------------------------------------------- semirings and modules

def semiring_to_json(S: FiniteSemiring) -> dict:
    return {"order": S.order, "zero": S.zero, "one": S.one, "add": [list(r) for r in S.add],
            "mul": [list(r) for r in S.mul], "labels": list(S.labels)}


def semiring_from_json(d, base: Path | None = None, where: str = "semiring") -> FiniteSemiring:
    d, base = _resolve(d, base)
    if "builtin" in d:
        kind = d["builtin"]
        if kind == "zn":
            return zn_ring(int(_require(d, "n", where)))
        if kind == "boolean":
            return boolean_semiring()
        if kind == "product":
            parts = [semiring_from_json(p, base, where) for p in _require(d, "factors", where)]
            out = parts[0]
            for p in parts[1:]:
                out = product_semiring(out, p)
            return out
        raise InputError(f"{where}: unknown builtin {kind!r}")
    return FiniteSemiring(
        int(_require(d, "order", where)),
        tuple(map(tuple, _require(d, "add", where))),
        tuple(map(tuple, _require(d, "mul", where))),
        int(d.get("zero", 0)), int(d.get("one", 1)), tuple(d.get("labels") or ()),
    )


def module_to_json(M: FiniteModule) -> dict:
    return {"scalars": semiring_to_json(M.scalars), "order": M.order, "zero": M.zero,
            "add": [list(r) for r in M.add], "action": [list(r) for r in M.action],
            "labels": list(M.labels)}


def module_from_json(d, base: Path | None = None, where: str = "module") -> FiniteModule:
    d, base = _resolve(d, base)
    S = semiring_from_json(_require(d, "scalars", where), base, where + ".scalars")
    if "builtin" in d:
        kind = d["builtin"]
        if kind == "regular":
            return regular_module(S)
        if kind == "power":
            return power_module(S, int(_require(d, "k", where)))
        if kind == "zero":
            return zero_module(S)
        raise InputError(f"{where}: unknown builtin {kind!r}")
    return FiniteModule(
        S, int(_require(d, "order", where)),
        tuple(map(tuple, _require(d, "add", where))),
        tuple(map(tuple, _require(d, "action", where))),
        int(d.get("zero", 0)), tuple(d.get("labels") or ()),
    )


def sort_labels(labels) -> list[str]:
    return sorted(labels, key=label_key)
