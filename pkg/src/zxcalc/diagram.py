"""Open-graph model of ZX and ZW diagrams (qubit and qutrit)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

TWO_PI = 2 * math.pi


class DiagramError(ValueError):
    pass


# ---------------------------------------------------------------- phases

@dataclass(frozen=True)
class Phase:
    """Angle k*pi/m (exact) or a float in [0, 2pi)."""

    k: int = 0
    m: int = 1
    rad: float | None = None

    def __post_init__(self):
        if self.rad is not None:
            r = float(self.rad) % TWO_PI
            if r >= TWO_PI - 1e-15:
                r = 0.0
            object.__setattr__(self, "rad", r)
            object.__setattr__(self, "k", 0)
            object.__setattr__(self, "m", 1)
            return
        k, m = int(self.k), int(self.m)
        if m <= 0:
            raise DiagramError("phase denominator must be positive")
        k %= 2 * m
        g = math.gcd(k, m)
        object.__setattr__(self, "k", k // g)
        object.__setattr__(self, "m", m // g)

    @classmethod
    def exact(cls, k: int, m: int = 1) -> "Phase":
        return cls(k, m)

    @classmethod
    def of(cls, x) -> "Phase":
        if isinstance(x, Phase):
            return x
        if isinstance(x, PVar):
            raise TypeError("pattern variable is not a phase")
        if isinstance(x, int) and x == 0:
            return cls()
        return cls(rad=float(x))

    @property
    def exact_p(self) -> bool:
        return self.rad is None

    @property
    def radians(self) -> float:
        return self.rad if self.rad is not None else math.pi * self.k / self.m

    def is_zero(self) -> bool:
        return self.rad == 0.0 if self.rad is not None else self.k == 0

    def __add__(self, other):
        o = Phase.of(other)
        if self.exact_p and o.exact_p:
            return Phase(self.k * o.m + o.k * self.m, self.m * o.m)
        return Phase(rad=self.radians + o.radians)

    __radd__ = __add__

    def __neg__(self):
        return Phase(-self.k, self.m) if self.exact_p else Phase(rad=-self.rad)

    def __sub__(self, other):
        return self + (-Phase.of(other))

    def __mul__(self, n: int):
        return Phase(self.k * n, self.m) if self.exact_p else Phase(rad=self.rad * n)

    __rmul__ = __mul__

    def pi4(self) -> int | None:
        """Multiple of pi/4 if on that grid (floats within 1e-12 count)."""
        if not self.exact_p:
            q = self.rad / (math.pi / 4)
            return round(q) % 8 if abs(q - round(q)) < 1e-12 else None
        if 4 % self.m:
            return None
        return self.k * (4 // self.m) % 8

    def __repr__(self):
        if self.rad is not None:
            return repr(self.rad)
        if self.k == 0:
            return "0"
        return f"{self.k}pi/{self.m}" if self.m != 1 else f"{self.k}pi"


def z3(a: int) -> Phase:
    """Qutrit angle a*2pi/3."""
    return Phase(2 * a, 3)


@dataclass(frozen=True)
class PVar:
    """Pattern variable used when a rule left-hand side is matched."""

    name: str


def _ph(x):
    return x if isinstance(x, PVar) else Phase.of(x)


# ---------------------------------------------------------------- kinds

@dataclass(frozen=True)
class ZSpider:
    phases: tuple = (Phase(),)


@dataclass(frozen=True)
class XSpider:
    phases: tuple = (Phase(),)


@dataclass(frozen=True)
class Hadamard:
    power: int = 1


@dataclass(frozen=True)
class Triangle:
    power: int = 1


@dataclass(frozen=True)
class LambdaBox:
    lam: object = 1.0


@dataclass(frozen=True)
class ZWWhite:
    r: object = 1.0


@dataclass(frozen=True)
class ZWBlackW:
    pass


@dataclass(frozen=True)
class ZWCrossing:
    pass


@dataclass(frozen=True)
class ZWPi:
    pass


Kind = Union[ZSpider, XSpider, Hadamard, Triangle, LambdaBox, ZWWhite, ZWBlackW, ZWCrossing, ZWPi]
SPIDERS = (ZSpider, XSpider, ZWWhite)
ZX_KINDS = (ZSpider, XSpider, Hadamard, Triangle, LambdaBox)
ZW_KINDS = (ZWWhite, ZWBlackW, ZWCrossing, ZWPi)

# fixed port layout of port-sensitive kinds: (inputs, outputs)
PORTS = {Hadamard: ((0,), (1,)), Triangle: ((0,), (1,)), LambdaBox: ((0,), (1,)),
         ZWPi: ((0,), (1,)), ZWBlackW: ((0,), (1, 2)), ZWCrossing: ((0, 1), (2, 3))}


def is_spider(kind) -> bool:
    return isinstance(kind, SPIDERS)


# ---------------------------------------------------------------- endpoints

@dataclass(frozen=True, order=True)
class Port:
    node: str
    port: int = 1

    def __repr__(self):
        return f"{self.node}:{self.port}"


@dataclass(frozen=True, order=True)
class Bnd:
    side: str
    index: int

    def __repr__(self):
        return f"{self.side}:{self.index}"


End = Union[Port, Bnd]


def node_key(nid: str):
    """Natural sort key for node ids such as n2 < n10."""
    head = nid.rstrip("0123456789")
    tail = nid[len(head):]
    return (head, int(tail) if tail else -1, nid)


# ---------------------------------------------------------------- diagram

@dataclass
class Diagram:
    calculus: str = "zx"
    dim: int = 2
    nodes: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    n_in: int = 0
    n_out: int = 0

    @property
    def inputs(self) -> list:
        return [Bnd("in", i) for i in range(self.n_in)]

    @property
    def outputs(self) -> list:
        return [Bnd("out", i) for i in range(self.n_out)]

    def copy(self) -> "Diagram":
        return Diagram(self.calculus, self.dim, dict(self.nodes), list(self.edges), self.n_in, self.n_out)

    def node_ids(self) -> list:
        return sorted(self.nodes, key=node_key)

    def incident(self, nid: str) -> list:
        """(edge index, own end, other end) for every edge end at nid; self-loops appear twice."""
        out = []
        for i, (a, b) in enumerate(self.edges):
            if isinstance(a, Port) and a.node == nid:
                out.append((i, a, b))
            if isinstance(b, Port) and b.node == nid:
                out.append((i, b, a))
        return out

    def degree(self, nid: str) -> int:
        return len(self.incident(nid))

    def fresh_id(self) -> str:
        i = len(self.nodes)
        while f"n{i}" in self.nodes:
            i += 1
        return f"n{i}"

    def signature(self) -> tuple:
        return (self.calculus, self.dim, self.n_in, self.n_out,
                tuple(sorted((k, repr(v)) for k, v in self.nodes.items())),
                tuple(sorted(tuple(sorted((repr(a), repr(b)))) for a, b in self.edges)))

    def __repr__(self):
        return (f"Diagram({self.calculus}, d={self.dim}, {self.n_in}->{self.n_out}, "
                f"{len(self.nodes)} nodes, {len(self.edges)} edges)")


def structurally_equal(a: Diagram, b: Diagram) -> bool:
    return a.signature() == b.signature()


# ---------------------------------------------------------------- validation

def _kind_problems(kind, calculus: str, dim: int) -> list:
    probs = []
    if calculus == "zw":
        if not isinstance(kind, ZW_KINDS):
            probs.append("kind/calculus mismatch")
        if dim != 2:
            probs.append("zw requires dimension 2")
        return probs
    if not isinstance(kind, ZX_KINDS):
        return ["kind/calculus mismatch"]
    if isinstance(kind, (ZSpider, XSpider)):
        if len(kind.phases) != dim - 1:
            probs.append(f"spider needs {dim - 1} phase(s)")
    if isinstance(kind, (Triangle, LambdaBox)) and dim != 2:
        probs.append("triangle and lambda-box are qubit generators")
    if isinstance(kind, Triangle) and kind.power not in (1, -1):
        probs.append("triangle power must be +1 or -1")
    if isinstance(kind, LambdaBox) and not isinstance(kind.lam, PVar):
        try:
            if float(kind.lam) < 0:
                probs.append("negative lambda")
        except TypeError:
            probs.append("lambda must be real")
    return probs


def validate(d: Diagram):
    """'ok' or a list of violation strings."""
    v = []
    if d.calculus not in ("zx", "zw"):
        v.append(f"unknown calculus {d.calculus}")
    if d.dim not in (2, 3):
        v.append(f"unsupported dimension {d.dim}")
    for nid, kind in d.nodes.items():
        for p in _kind_problems(kind, d.calculus, d.dim):
            v.append(f"{nid}: {p}")
    bcount = {}
    pcount = {}
    for a, b in d.edges:
        for e in (a, b):
            if isinstance(e, Bnd):
                bcount[e] = bcount.get(e, 0) + 1
            elif isinstance(e, Port):
                if e.node not in d.nodes:
                    v.append(f"edge to unknown node {e.node}")
                    continue
                kind = d.nodes[e.node]
                if is_spider(kind):
                    if e.port not in (0, 1):
                        v.append(f"{e.node}: spider leg port must be 0 or 1")
                else:
                    pcount[e] = pcount.get(e, 0) + 1
            else:
                v.append(f"bad endpoint {e!r}")
    for side, n in (("in", d.n_in), ("out", d.n_out)):
        for i in range(n):
            c = bcount.get(Bnd(side, i), 0)
            if c != 1:
                v.append(f"boundary {side}:{i} used {c} times")
    for e in bcount:
        if (e.side == "in" and e.index >= d.n_in) or (e.side == "out" and e.index >= d.n_out) \
                or e.side not in ("in", "out"):
            v.append(f"undeclared boundary {e!r}")
    for nid, kind in d.nodes.items():
        if is_spider(kind):
            continue
        ins, outs = PORTS[type(kind)]
        for p in ins + outs:
            c = pcount.get(Port(nid, p), 0)
            if c == 0:
                v.append(f"{nid}:{p} unconnected port")
            elif c > 1:
                v.append(f"{nid}:{p} port used {c} times")
        for e, c in pcount.items():
            if e.node == nid and e.port not in ins + outs:
                v.append(f"{nid}:{e.port} no such port")
    return "ok" if not v else v


def check(d: Diagram) -> Diagram:
    r = validate(d)
    if r != "ok":
        raise DiagramError("; ".join(r))
    return d


# ---------------------------------------------------------------- composition

def _renumber(d: Diagram, start: int, rename: dict) -> int:
    for nid in d.node_ids():
        rename[nid] = f"n{start}"
        start += 1
    return start


def _map_end(e, rename, side_map):
    if isinstance(e, Port):
        return Port(rename[e.node], e.port)
    return side_map(e)


def _loop_scalar(calculus: str, dim: int):
    # a closed wire evaluates to dim; realise it with a phase-free spider self-loop
    if calculus == "zw":
        return ZWWhite(1.0)
    return ZSpider(tuple(Phase() for _ in range(dim - 1)))


def _same_space(d1: Diagram, d2: Diagram):
    if d1.calculus != d2.calculus or d1.dim != d2.dim:
        raise DiagramError("calculus/dimension mismatch")


def compose_seq(d1: Diagram, d2: Diagram) -> Diagram:
    """d1 then d2; semantics d2 . d1."""
    _same_space(d1, d2)
    if d1.n_out != d2.n_in:
        raise DiagramError(f"arity mismatch: {d1.n_out} outputs vs {d2.n_in} inputs")
    r1, r2 = {}, {}
    nxt = _renumber(d1, 0, r1)
    _renumber(d2, nxt, r2)
    nodes = {r1[k]: v for k, v in d1.nodes.items()}
    nodes.update({r2[k]: v for k, v in d2.nodes.items()})
    J = "j"
    e1 = [(_map_end(a, r1, lambda b: Bnd(J, b.index) if b.side == "out" else b),
           _map_end(b, r1, lambda b: Bnd(J, b.index) if b.side == "out" else b)) for a, b in d1.edges]
    e2 = [(_map_end(a, r2, lambda b: Bnd(J, b.index) if b.side == "in" else b),
           _map_end(b, r2, lambda b: Bnd(J, b.index) if b.side == "in" else b)) for a, b in d2.edges]
    return splice(d1.calculus, d1.dim, nodes, e1 + e2, d1.n_in, d2.n_out)


def _is_joint(e) -> bool:
    return isinstance(e, Bnd) and e.side not in ("in", "out")


def splice(calculus: str, dim: int, nodes: dict, edges: list, n_in: int, n_out: int) -> Diagram:
    """Resolve joint endpoints (Bnd with a side other than in/out, each used exactly twice).

    Chains through joints become single edges; closed joint cycles become loop scalars.
    """
    nodes = dict(nodes)
    at = {}
    for i, (a, b) in enumerate(edges):
        for e in (a, b):
            if _is_joint(e):
                at.setdefault(e, []).append(i)
    for e, occ in at.items():
        if len(occ) != 2:
            raise DiagramError(f"joint {e!r} used {len(occ)} times")
    used = [False] * len(edges)
    out = []

    def walk(cur, prev):
        while _is_joint(cur):
            k = at[cur][0] if at[cur][1] == prev else at[cur][1]
            used[k] = True
            x, y = edges[k]
            cur = y if x == cur else x
            prev = k
        return cur

    for i, (a, b) in enumerate(edges):
        if used[i]:
            continue
        if not _is_joint(a) and not _is_joint(b):
            used[i] = True
            out.append((a, b))
            continue
        if _is_joint(a) and _is_joint(b):
            continue
        start, cur = (a, b) if not _is_joint(a) else (b, a)
        used[i] = True
        out.append((start, walk(cur, i)))
    # pure joint cycles become closed loops
    for i in range(len(edges)):
        if used[i]:
            continue
        used[i] = True
        a, b = edges[i]
        cur, prev = b, i
        while cur != a:
            k = at[cur][0] if at[cur][1] == prev else at[cur][1]
            used[k] = True
            x, y = edges[k]
            cur = y if x == cur else x
            prev = k
        nid = f"n{len(nodes)}"
        while nid in nodes:
            nid += "_"
        nodes[nid] = _loop_scalar(calculus, dim)
        out.append((Port(nid, 0), Port(nid, 1)))
    return Diagram(calculus, dim, nodes, out, n_in, n_out)


def compose_par(d1: Diagram, d2: Diagram) -> Diagram:
    _same_space(d1, d2)
    r1, r2 = {}, {}
    nxt = _renumber(d1, 0, r1)
    _renumber(d2, nxt, r2)
    nodes = {r1[k]: v for k, v in d1.nodes.items()}
    nodes.update({r2[k]: v for k, v in d2.nodes.items()})

    def shift(b):
        return Bnd(b.side, b.index + (d1.n_in if b.side == "in" else d1.n_out))

    edges = [(_map_end(a, r1, lambda b: b), _map_end(b, r1, lambda b: b)) for a, b in d1.edges]
    edges += [(_map_end(a, r2, shift), _map_end(b, r2, shift)) for a, b in d2.edges]
    return Diagram(d1.calculus, d1.dim, nodes, edges, d1.n_in + d2.n_in, d1.n_out + d2.n_out)


def seq(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose_seq(out, d)
    return out


def par(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose_par(out, d)
    return out


def transpose(d: Diagram) -> Diagram:
    """Exchange the roles of inputs and outputs (bending every boundary wire)."""
    def flip(e):
        if isinstance(e, Bnd):
            return Bnd("out" if e.side == "in" else "in", e.index)
        return e

    return Diagram(d.calculus, d.dim, dict(d.nodes), [(flip(a), flip(b)) for a, b in d.edges],
                   d.n_out, d.n_in)


def permute_outputs(d: Diagram, perm: list) -> Diagram:
    """Output i of the result is output perm[i] of d."""
    inv = {p: i for i, p in enumerate(perm)}

    def f(e):
        return Bnd("out", inv[e.index]) if isinstance(e, Bnd) and e.side == "out" else e

    return Diagram(d.calculus, d.dim, dict(d.nodes), [(f(a), f(b)) for a, b in d.edges], d.n_in, d.n_out)


# ---------------------------------------------------------------- generators

def _arity_ok(kind, n: int, m: int) -> bool:
    if is_spider(kind):
        return n >= 0 and m >= 0
    ins, outs = PORTS[type(kind)]
    return (n, m) == (len(ins), len(outs))


def from_generator(kind, n: int, m: int, calculus: str | None = None, dim: int = 2) -> Diagram:
    if calculus is None:
        calculus = "zw" if isinstance(kind, ZW_KINDS) else "zx"
    if not _arity_ok(kind, n, m):
        raise DiagramError(f"illegal arity {n}->{m} for {type(kind).__name__}")
    d = Diagram(calculus, dim, {"n0": kind}, [], n, m)
    if is_spider(kind):
        d.edges = [(Bnd("in", i), Port("n0", 0)) for i in range(n)]
        d.edges += [(Port("n0", 1), Bnd("out", j)) for j in range(m)]
    else:
        ins, outs = PORTS[type(kind)]
        d.edges = [(Bnd("in", i), Port("n0", p)) for i, p in enumerate(ins)]
        d.edges += [(Port("n0", p), Bnd("out", j)) for j, p in enumerate(outs)]
    return check(d)


def _phases(dim, phases):
    if not phases:
        phases = (0,) * (dim - 1)
    if len(phases) != dim - 1:
        raise DiagramError(f"need {dim - 1} phase(s), got {len(phases)}")
    return tuple(_ph(p) for p in phases)


def Z(n: int = 1, m: int = 1, *phases, dim: int = 2) -> Diagram:
    return from_generator(ZSpider(_phases(dim, phases)), n, m, "zx", dim)


def X(n: int = 1, m: int = 1, *phases, dim: int = 2) -> Diagram:
    return from_generator(XSpider(_phases(dim, phases)), n, m, "zx", dim)


def Zq(n: int, m: int, a=0, b=0) -> Diagram:
    """Qutrit green spider with the Z3 pair (a, b)."""
    return Z(n, m, z3(a), z3(b), dim=3)


def Xq(n: int, m: int, a=0, b=0) -> Diagram:
    return X(n, m, z3(a), z3(b), dim=3)


def H(power: int = 1, dim: int = 2) -> Diagram:
    return from_generator(Hadamard(power % (2 if dim == 2 else 4)), 1, 1, "zx", dim)


def TRI(power: int = 1) -> Diagram:
    return from_generator(Triangle(power), 1, 1, "zx", 2)


def LAM(lam) -> Diagram:
    return from_generator(LambdaBox(lam), 1, 1, "zx", 2)


def WHITE(n: int = 1, m: int = 1, r=1.0) -> Diagram:
    return from_generator(ZWWhite(r), n, m, "zw", 2)


def WB() -> Diagram:
    return from_generator(ZWBlackW(), 1, 2, "zw", 2)


def CROSS() -> Diagram:
    return from_generator(ZWCrossing(), 2, 2, "zw", 2)


def PI() -> Diagram:
    return from_generator(ZWPi(), 1, 1, "zw", 2)


def wire(n: int = 1, dim: int = 2, calculus: str = "zx") -> Diagram:
    return Diagram(calculus, dim, {}, [(Bnd("in", i), Bnd("out", i)) for i in range(n)], n, n)


def empty(dim: int = 2, calculus: str = "zx") -> Diagram:
    return Diagram(calculus, dim, {}, [], 0, 0)


def swap(dim: int = 2, calculus: str = "zx") -> Diagram:
    return Diagram(calculus, dim, {}, [(Bnd("in", 0), Bnd("out", 1)), (Bnd("in", 1), Bnd("out", 0))], 2, 2)


def cap(dim: int = 2, calculus: str = "zx") -> Diagram:
    """0 -> 2, sum_j |jj>."""
    return Diagram(calculus, dim, {}, [(Bnd("out", 0), Bnd("out", 1))], 0, 2)


def cup(dim: int = 2, calculus: str = "zx") -> Diagram:
    """2 -> 0, sum_j <jj|."""
    return Diagram(calculus, dim, {}, [(Bnd("in", 0), Bnd("in", 1))], 2, 0)


def like(d: Diagram):
    """(dim, calculus) keyword pair matching d, for wire/swap/cap/cup."""
    return {"dim": d.dim, "calculus": d.calculus}


def on(k: int, n: int, g: Diagram, at: int = 0) -> Diagram:
    """g placed on wires at..at+arity of an n-wire register (other wires identity)."""
    kw = like(g)
    parts = []
    if at:
        parts.append(wire(at, **kw))
    parts.append(g)
    rest = n - at - g.n_in
    if rest:
        parts.append(wire(rest, **kw))
    return par(*parts)


# ---------------------------------------------------------------- graph builder

class Builder:
    """Incremental construction of arbitrary (possibly cyclic) diagrams.

    Endpoint specs: node id (spider leg, output side), (id, port), or ('in'|'out', i).
    """

    def __init__(self, dim: int = 2, calculus: str = "zx", n_in: int = 0, n_out: int = 0):
        self.d = Diagram(calculus, dim, {}, [], n_in, n_out)

    def add(self, kind) -> str:
        nid = f"n{len(self.d.nodes)}"
        self.d.nodes[nid] = kind
        return nid

    def z(self, *phases) -> str:
        return self.add(ZSpider(_phases(self.d.dim, phases)))

    def x(self, *phases) -> str:
        return self.add(XSpider(_phases(self.d.dim, phases)))

    def zq(self, a=0, b=0) -> str:
        return self.add(ZSpider((z3(a), z3(b))))

    def xq(self, a=0, b=0) -> str:
        return self.add(XSpider((z3(a), z3(b))))

    def h(self, power: int = 1) -> str:
        return self.add(Hadamard(power % (2 if self.d.dim == 2 else 4)))

    def tri(self, power: int = 1) -> str:
        return self.add(Triangle(power))

    def lam(self, lam) -> str:
        return self.add(LambdaBox(lam))

    def white(self, r=1.0) -> str:
        return self.add(ZWWhite(r))

    def _end(self, spec, default_port: int) -> End:
        if isinstance(spec, (Port, Bnd)):
            return spec
        if isinstance(spec, str):
            return Port(spec, default_port)
        a, b = spec
        if a in ("in", "out"):
            return Bnd(a, int(b))
        return Port(a, int(b))

    def edge(self, a, b) -> "Builder":
        # a bare spider id on the source side is an output leg, on the target side an input leg
        self.d.edges.append((self._end(a, 1), self._end(b, 0)))
        return self

    def chain(self, *specs) -> "Builder":
        """Connect a sequence: spiders by id, 1->1 boxes by id (0 in, 1 out)."""
        prev = None
        for s in specs:
            if prev is not None:
                src = prev
                if isinstance(src, str) and not is_spider(self.d.nodes[src]):
                    src = (src, 1)
                dst = s
                if isinstance(dst, str) and not is_spider(self.d.nodes[dst]):
                    dst = (dst, 0)
                self.edge(src, dst)
            prev = s
        return self

    def build(self) -> Diagram:
        return check(self.d.copy())


def edges_iter(d: Diagram) -> Iterable:
    return iter(d.edges)


def node_legs(d: Diagram, nid: str):
    """(input legs, output legs) of a node as lists of (edge index, end position).

    Spider legs split by direction; box legs ordered by port.
    """
    kind = d.nodes[nid]
    ends = []
    for i, (a, b) in enumerate(d.edges):
        for pos, e in enumerate((a, b)):
            if isinstance(e, Port) and e.node == nid:
                ends.append((e.port, i, pos))
    if is_spider(kind):
        return ([(i, p) for port, i, p in ends if port == 0],
                [(i, p) for port, i, p in ends if port != 0])
    ins, outs = PORTS[type(kind)]
    byport = {port: (i, p) for port, i, p in ends}
    return [byport[q] for q in ins], [byport[q] for q in outs]


def substitute(d: Diagram, fn, calculus: str | None = None) -> Diagram:
    """Replace every node by fn(kind, n_in, n_out) (a Diagram) or keep it when fn returns None."""
    calc = calculus or d.calculus
    nodes = {}
    edges = [list(e) for e in d.edges]
    extra = []
    c = 0
    for nid in d.node_ids():
        kind = d.nodes[nid]
        ins, outs = node_legs(d, nid)
        img = fn(kind, len(ins), len(outs))
        if img is None:
            new = f"n{c}"
            c += 1
            nodes[new] = kind
            for i, p in ins + outs:
                edges[i][p] = Port(new, edges[i][p].port)
            continue
        if (img.n_in, img.n_out) != (len(ins), len(outs)):
            raise DiagramError(f"image of {kind!r} has wrong arity")
        rename = {}
        for k in img.node_ids():
            rename[k] = f"n{c}"
            c += 1
        nodes.update({rename[k]: v for k, v in img.nodes.items()})
        tag = f"J{nid}"
        for j, (i, p) in enumerate(ins):
            edges[i][p] = Bnd(tag + "<", j)
        for j, (i, p) in enumerate(outs):
            edges[i][p] = Bnd(tag + ">", j)

        def m(e, tag=tag, rename=rename):
            if isinstance(e, Port):
                return Port(rename[e.node], e.port)
            return Bnd(tag + ("<" if e.side == "in" else ">"), e.index)

        extra += [(m(a), m(b)) for a, b in img.edges]
    return splice(calc, d.dim, nodes, [tuple(e) for e in edges] + extra, d.n_in, d.n_out)
