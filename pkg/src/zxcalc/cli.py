"""Command-line front end and the JSON diagram file format (version 1)."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import diagram as dg
from .diagram import Bnd, Diagram, DiagramError, Phase, Port, check
from .numerics import DEFAULT_TOL, RingElement, scalar_equiv

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed diagram file."""


# ---------------------------------------------------------------- scalars

def _dump_scalar(x):
    if isinstance(x, bool):
        raise FormatError("boolean parameter")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, RingElement):
        return {"ring": list(x.c), "k": x.k}
    if isinstance(x, complex):
        return [x.real, x.imag]
    return float(x)


def _load_scalar(v):
    if isinstance(v, bool):
        raise FormatError("boolean parameter")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, list):
        if len(v) != 2 or not all(isinstance(t, (int, float)) for t in v):
            raise FormatError(f"complex value must be [re, im], got {v!r}")
        return complex(v[0], v[1])
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return Fraction(int(v["num"]), int(v["den"]))
    if isinstance(v, dict) and set(v) == {"ring", "k"}:
        return RingElement(v["ring"], v["k"])
    raise FormatError(f"bad scalar {v!r}")


def _dump_phase(p: Phase):
    return p.rad if not p.exact_p else {"pi_num": p.k, "pi_den": p.m}


def _load_phase(v) -> Phase:
    if isinstance(v, dict):
        if set(v) != {"pi_num", "pi_den"}:
            raise FormatError(f"bad phase {v!r}")
        return Phase(int(v["pi_num"]), int(v["pi_den"]))
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return Phase(rad=float(v))
    raise FormatError(f"bad phase {v!r}")


# ---------------------------------------------------------------- kinds

_KIND_NAMES = {dg.ZSpider: "Z", dg.XSpider: "X", dg.Hadamard: "H", dg.Triangle: "triangle",
               dg.LambdaBox: "lambda", dg.ZWWhite: "white", dg.ZWBlackW: "W",
               dg.ZWCrossing: "crossing", dg.ZWPi: "pi"}


def dump_kind(kind) -> tuple:
    name = _KIND_NAMES.get(type(kind))
    if name is None:
        raise FormatError(f"cannot serialize {kind!r}")
    if name in ("Z", "X"):
        params = {"phases": [_dump_phase(p) for p in kind.phases]}
    elif name in ("H", "triangle"):
        params = {"power": kind.power}
    elif name == "lambda":
        params = {"lambda": _dump_scalar(kind.lam)}
    elif name == "white":
        params = {"r": _dump_scalar(kind.r)}
    else:
        params = {}
    return name, params


def load_kind(name: str, params: dict):
    if not isinstance(params, dict):
        raise FormatError("params must be an object")
    try:
        if name in ("Z", "X"):
            ph = tuple(_load_phase(p) for p in params.get("phases", [0.0]))
            return (dg.ZSpider if name == "Z" else dg.XSpider)(ph)
        if name == "H":
            return dg.Hadamard(int(params.get("power", 1)))
        if name == "triangle":
            return dg.Triangle(int(params.get("power", 1)))
        if name == "lambda":
            return dg.LambdaBox(_load_scalar(params["lambda"]))
        if name == "white":
            return dg.ZWWhite(_load_scalar(params.get("r", 1.0)))
        if name == "W":
            return dg.ZWBlackW()
        if name == "crossing":
            return dg.ZWCrossing()
        if name == "pi":
            return dg.ZWPi()
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"bad params for {name}: {e}") from None
    raise FormatError(f"unknown kind {name!r}")


# ---------------------------------------------------------------- endpoints

def dump_end(e) -> str:
    if isinstance(e, Bnd):
        return f"{e.side}:{e.index}"
    return f"{e.node}:{e.port}"


def load_end(s, default_port: int):
    if not isinstance(s, str) or not s:
        raise FormatError(f"bad endpoint {s!r}")
    head, sep, tail = s.partition(":")
    if sep and not tail.lstrip("-").isdigit():
        raise FormatError(f"bad endpoint {s!r}")
    if head in ("in", "out"):
        if not sep:
            raise FormatError(f"boundary endpoint needs an index: {s!r}")
        return Bnd(head, int(tail))
    return Port(head, int(tail) if sep else default_port)


# ---------------------------------------------------------------- documents

def to_json(d: Diagram) -> dict:
    nodes = []
    for nid in d.node_ids():
        name, params = dump_kind(d.nodes[nid])
        nodes.append({"id": nid, "kind": name, "params": params})
    return {
        "version": FORMAT_VERSION,
        "calculus": d.calculus,
        "dimension": d.dim,
        "nodes": nodes,
        "edges": [[dump_end(a), dump_end(b)] for a, b in d.edges],
        "inputs": [dump_end(b) for b in d.inputs],
        "outputs": [dump_end(b) for b in d.outputs],
    }


def _boundary_list(doc, key: str, side: str) -> int:
    lst = doc.get(key, [])
    if not isinstance(lst, list):
        raise FormatError(f"{key} must be a list")
    for i, s in enumerate(lst):
        if s != f"{side}:{i}":
            raise FormatError(f"{key}[{i}] must be '{side}:{i}', got {s!r}")
    return len(lst)


def from_json(doc) -> Diagram:
    if not isinstance(doc, dict):
        raise FormatError("document must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")
    calculus = doc.get("calculus", "zx")
    dim = doc.get("dimension", 2)
    if calculus not in ("zx", "zw") or dim not in (2, 3):
        raise FormatError("calculus must be zx|zw and dimension 2|3")
    nodes = {}
    for n in doc.get("nodes", []):
        if not isinstance(n, dict) or not isinstance(n.get("id"), str):
            raise FormatError(f"bad node {n!r}")
        if n["id"] in nodes or n["id"] in ("in", "out"):
            raise FormatError(f"duplicate or reserved node id {n['id']!r}")
        nodes[n["id"]] = load_kind(n.get("kind"), n.get("params", {}))
    edges = []
    for e in doc.get("edges", []):
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError(f"edge must be a pair, got {e!r}")
        edges.append((load_end(e[0], 1), load_end(e[1], 0)))
    d = Diagram(calculus, dim, nodes, edges,
                _boundary_list(doc, "inputs", "in"), _boundary_list(doc, "outputs", "out"))
    try:
        return check(d)
    except DiagramError as e:
        raise FormatError(str(e)) from None


def dumps(d: Diagram) -> str:
    return json.dumps(to_json(d), indent=1) + "\n"


def loads(text: str) -> Diagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
    return from_json(doc)


def load(path: str) -> Diagram:
    return loads(_read(path))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None


# qutrit stabilizer states for `equiv --method gslc`:
#   {"version": 1, "gslc": {"graph": [[...]], "ops": [tag, ...]}}
#   {"version": 1, "qutrit_circuit": {"n": 2, "gates": [["H", 0], ["SUM", 0, 1], ["CZ", 0, 1, 2]]}}

def load_gslc(path: str):
    from . import qutrit as qt
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise FormatError("expected a version-1 object")
    try:
        if "gslc" in doc:
            g = qt.WeightedGraph.from_matrix(doc["gslc"]["graph"])
            ops = tuple(int(u) for u in doc["gslc"]["ops"])
            if len(ops) != g.n or any(not 0 <= u < 216 for u in ops):
                raise FormatError("ops must hold one tag in 0..215 per vertex")
            return qt.GSLCDiagram(g, ops)
        if "qutrit_circuit" in doc:
            c = doc["qutrit_circuit"]
            mk = {"S": qt.S, "H": qt.Hg, "SUM": qt.SUM, "CZ": qt.CZ}
            gates = [mk[g[0]](*[int(a) for a in g[1:]]) for g in c["gates"]]
            return qt.from_circuit(int(c["n"]), gates)
    except (KeyError, TypeError, IndexError, ValueError) as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(f"bad stabilizer file: {e}") from None
    raise FormatError("expected a 'gslc' or 'qutrit_circuit' object")


# ---------------------------------------------------------------- printing

def _num(x: float) -> float:
    return 0.0 if x == 0 else x


def format_entry(z: complex) -> str:
    return f"{_num(z.real):.12g}{_num(z.imag):+.12g}i"


def format_matrix(m: np.ndarray, exact: bool = False) -> str:
    rows = []
    for row in m:
        rows.append(" ".join(repr(x) if exact else format_entry(complex(x)) for x in row))
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------- commands

def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify_rules(a) -> int:
    from .rules import RULE_SETS, catalog, verify_rule
    sets = RULE_SETS if a.set == "all" else (a.set,)
    ok = True
    for s in sets:
        for rule in catalog(s):
            rep = verify_rule(rule, samples=a.samples, seed=a.seed, tol=a.tol)
            ok &= rep.passed
            status = "PASS" if rep.passed else f"FAIL ({len(rep.failures)} failures)"
            print(f"{s}\t{rule.name}\t{status}")
    return 0 if ok else 1


def cmd_interpret(a) -> int:
    from .semantics import interpret
    m = interpret(load(a.file), exact=a.exact)
    sys.stdout.write(format_matrix(m, exact=a.exact))
    return 0


def cmd_simplify(a) -> int:
    from .rewrite import simplify
    passes = a.passes.split(",") if a.passes else None
    _emit(dumps(simplify(load(a.file), passes=passes)), a.output)
    return 0


def cmd_translate(a) -> int:
    from .translate import zw_to_zx, zx_to_zw
    d = load(a.file)
    if d.calculus == a.to:
        raise FormatError(f"diagram is already in {a.to}")
    fn = zx_to_zw if a.to == "zw" else zw_to_zx
    _emit(dumps(fn(d, mode=a.mode)), a.output)
    return 0


def cmd_euler(a) -> int:
    from .euler import AngleTriple, zxz_to_xzx
    t = zxz_to_xzx(AngleTriple(a.alpha, a.beta, a.gamma))
    print(f"{_num(t.alpha):.12g} {_num(t.beta):.12g} {_num(t.gamma):.12g}")
    return 0


def cmd_qutrit_c1(a) -> int:
    from .qutrit import enumerate_c1
    if not a.enumerate:
        raise FormatError("qutrit-c1 needs --enumerate")
    counts = {}
    for form, _ in enumerate_c1():
        print(form)
        counts[type(form).__name__] = counts.get(type(form).__name__, 0) + 1
    total = sum(counts.values())
    print(" ".join(f"{k}={counts.get(k, 0)}" for k in ("Form1", "Form2", "Form3")) + f" total={total}")
    return 0


def cmd_equiv(a) -> int:
    if a.method == "gslc":
        from .qutrit import equal_states
        same = equal_states(load_gslc(a.file1), load_gslc(a.file2))
    else:
        from .semantics import interpret
        d1, d2 = load(a.file1), load(a.file2)
        if (d1.n_in, d1.n_out, d1.dim) != (d2.n_in, d2.n_out, d2.dim):
            print("type mismatch", file=sys.stderr)
            return 1
        same = scalar_equiv(interpret(d1), interpret(d2), a.tol) is not None
    print("equal" if same else "unequal")
    return 0 if same else 1


def cmd_gallery(a) -> int:
    from . import gallery
    if a.name not in gallery.ENTRIES:
        raise FormatError(f"unknown gallery entry {a.name!r}; known: {', '.join(gallery.names())}")
    if a.check:
        c = gallery.check_entry(a.name)
        print(f"{a.name}: " + ("ok scalar " + format_entry(complex(c)) if c is not None else "FAILED"))
        return 0 if c is not None else 1
    out = gallery.build(a.name)
    if isinstance(out, tuple):
        text = json.dumps({"lhs": to_json(out[0]), "rhs": to_json(out[1])}, indent=1) + "\n"
    else:
        text = dumps(out)
    _emit(text, a.output)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FormatError(message)


def parser() -> argparse.ArgumentParser:
    from .rules import RULE_SETS
    from .rewrite import PASSES
    p = _Parser(prog="zxcalc", description="ZX/ZW diagram toolkit")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("verify-rules")
    s.add_argument("--set", default="all", choices=("all",) + tuple(RULE_SETS))
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(fn=cmd_verify_rules)

    s = sub.add_parser("interpret")
    s.add_argument("file")
    s.add_argument("--exact", action="store_true")
    s.set_defaults(fn=cmd_interpret)

    s = sub.add_parser("simplify", help=f"passes: {','.join(PASSES)}")
    s.add_argument("file")
    s.add_argument("--passes")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_simplify)

    s = sub.add_parser("translate")
    s.add_argument("file")
    s.add_argument("--to", required=True, choices=("zw", "zx"))
    s.add_argument("--mode", default="full", choices=("full", "clifford-t"))
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_translate)

    s = sub.add_parser("euler")
    for k in ("alpha", "beta", "gamma"):
        s.add_argument(f"--{k}", type=float, required=True)
    s.set_defaults(fn=cmd_euler)

    s = sub.add_parser("qutrit-c1")
    s.add_argument("--enumerate", action="store_true")
    s.set_defaults(fn=cmd_qutrit_c1)

    s = sub.add_parser("equiv")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--method", default="semantic", choices=("semantic", "gslc"))
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(fn=cmd_equiv)

    s = sub.add_parser("gallery")
    s.add_argument("name")
    s.add_argument("--check", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_gallery)
    return p


def run(argv=None) -> int:
    try:
        a = parser().parse_args(argv)
        return a.fn(a)
    except (FormatError, DiagramError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else 0


def main():
    sys.exit(run())
