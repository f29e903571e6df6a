"""Qutrit stabilizer engine: local Cliffords, graph states, GS-LC and rGS-LC forms.

Vertex operators are tags 0..215 into the enumerated local Clifford group; every
update is a table lookup. All comparisons are projective (global scalars dropped).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .numerics import scalar_equiv

W = cmath.exp(2j * math.pi / 3)

Pair = tuple  # (a, b) in Z3 x Z3

P_SET = ((1, 1), (2, 2))
N_SET = ((0, 1), (1, 0), (0, 2), (2, 0))
M_SET = ((0, 0), (1, 2), (2, 1))
Q_SET = P_SET + N_SET
A_SET = tuple((a, b) for a in range(3) for b in range(3))


def in_P(p): return tuple(p) in P_SET
def in_N(p): return tuple(p) in N_SET
def in_M(p): return tuple(p) in M_SET
def in_Q(p): return tuple(p) in Q_SET
def in_A(p): return tuple(p) in A_SET


# ---------------------------------------------------------------- matrices

HQ = np.array([[W ** (j * k) for j in range(3)] for k in range(3)]) / math.sqrt(3)
HQ_DAG = HQ.conj().T


def zmat(a, b) -> np.ndarray:
    return np.diag([1, W ** (a % 3), W ** (b % 3)])


def xmat(a, b) -> np.ndarray:
    return HQ @ zmat(a, b) @ HQ_DAG


SHIFT = np.roll(np.eye(3), 1, axis=0)        # |j> -> |j+1>
CLOCK = zmat(1, 2)                             # |j> -> w^j |j>
S_GATE = zmat(0, 1)
H2 = HQ @ HQ


def _key(u: np.ndarray) -> tuple:
    f = u.ravel()
    i = int(np.argmax(np.abs(f) > 1e-9))
    f = f / f[i]
    return tuple(np.round(np.concatenate([f.real, f.imag]), 5) + 0.0)


# ---------------------------------------------------------------- C1 normal forms

@dataclass(frozen=True)
class Form1:
    """Green `top` after red `bottom`."""
    top: Pair
    bottom: Pair

    def matrix(self):
        return zmat(*self.top) @ xmat(*self.bottom)


@dataclass(frozen=True)
class Form2:
    """Green q, then red p, then green a."""
    q: Pair
    p: Pair
    a: Pair

    def matrix(self):
        return zmat(*self.a) @ xmat(*self.p) @ zmat(*self.q)


@dataclass(frozen=True)
class Form3:
    """Double Hadamard, then red m, then green a."""
    m: Pair
    a: Pair

    def matrix(self):
        return zmat(*self.a) @ xmat(*self.m) @ H2


C1NormalForm = Form1 | Form2 | Form3


def all_normal_forms() -> list:
    f1 = [Form1(a, b) for a in A_SET for b in A_SET]
    f2 = [Form2(q, p, a) for q in Q_SET for p in P_SET for a in A_SET]
    f3 = [Form3(m, a) for m in M_SET for a in A_SET]
    return f1 + f2 + f3


class C1Table:
    """The 216 projective classes with multiplication and move tables."""

    def __init__(self):
        self.forms = all_normal_forms()
        self.mats = np.array([f.matrix() for f in self.forms])
        self.index = {}
        for i, m in enumerate(self.mats):
            k = _key(m)
            if k in self.index:
                raise AssertionError("normal forms are not distinct")
            self.index[k] = i
        n = len(self.forms)
        prods = np.einsum("aij,bjk->abik", self.mats, self.mats)
        self.mul = np.empty((n, n), dtype=np.int16)
        for a in range(n):
            for b in range(n):
                self.mul[a, b] = self.index[_key(prods[a, b])]
        self.inv = np.empty(n, dtype=np.int16)
        for a in range(n):
            self.inv[a] = int(np.nonzero(self.mul[a] == 0)[0][0])
        t = self.tag
        self.S, self.H = t(S_GATE), t(HQ)
        self.H2 = t(H2)
        self.X = [t(np.linalg.matrix_power(SHIFT, c)) for c in range(3)]
        self.Zp = [t(np.linalg.matrix_power(CLOCK, c)) for c in range(3)]
        self.Xaa = [t(xmat(a, a)) for a in range(3)]
        self.Zaa = [t(zmat(a, a)) for a in range(3)]
        self.diag = {t(zmat(*a)): a for a in A_SET}
        # red representatives X(1,1) Z(1+t, 1-t): x_v = y + t with phase 2y^2 + t y
        self.red = {t(xmat(1, 1) @ zmat(1 + s, 1 - s)): s for s in range(3)}
        self.rgs_red = {t(xmat(p, p) @ zmat(p + m, p - m)) for p in (1, 2) for m in (0, 1, 2)}
        self._build_moves()

    def tag(self, m: np.ndarray) -> int:
        return self.index[_key(np.asarray(m))]

    def matrix(self, tag: int) -> np.ndarray:
        return self.mats[tag]

    def _build_moves(self):
        n = len(self.forms)
        self.own_fix = [None] * n
        self.red_fix = [None] * n
        for u in range(n):
            for h, a, c in product((0, 1), range(3), range(3)):
                v = u
                if h:
                    v = self.mul[v, self.H2]
                v = self.mul[self.mul[v, self.Xaa[a]], self.X[c]]
                if v in self.diag and self.own_fix[u] is None:
                    self.own_fix[u] = (h, a, c)
                if v in self.red and self.red_fix[u] is None:
                    self.red_fix[u] = (h, a, c)
        plus = np.ones(3) / math.sqrt(3)
        self.basis_of = {}
        for u in range(n):
            s = self.mats[u] @ plus
            k = int(np.argmax(np.abs(s)))
            if abs(abs(s[k]) - 1) < 1e-9:
                self.basis_of[u] = k
        self.state_tag = {}
        for u in range(n):
            self.state_tag.setdefault(_key((self.mats[u] @ plus).reshape(3, 1)), u)

    def is_red_type(self, tag: int) -> bool:
        return self.own_fix[tag] is None


@lru_cache(maxsize=1)
def c1() -> C1Table:
    return C1Table()


def enumerate_c1() -> list:
    """(normal form, matrix) for all classes generated by S and H."""
    t = c1()
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for g in (t.S, t.H):
                v = int(t.mul[g, u])
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return [(t.forms[i], t.mats[i]) for i in sorted(seen)]


def normal_form(u: np.ndarray):
    t = c1()
    return t.forms[t.tag(u)]


# ---------------------------------------------------------------- graphs

class VertexError(IndexError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    gamma: tuple

    @classmethod
    def from_matrix(cls, g) -> "WeightedGraph":
        g = np.asarray(g, dtype=int) % 3
        if g.shape != (g.shape[0], g.shape[0]) or np.any(g != g.T) or np.any(np.diag(g)):
            raise ValueError("adjacency must be symmetric with zero diagonal")
        return cls(g.shape[0], tuple(tuple(int(x) for x in row) for row in g))

    @classmethod
    def empty(cls, n: int) -> "WeightedGraph":
        return cls.from_matrix(np.zeros((n, n), dtype=int))

    def matrix(self) -> np.ndarray:
        return np.array(self.gamma, dtype=int).reshape(self.n, self.n)

    def neighbours(self, v: int) -> list:
        return [u for u in range(self.n) if self.gamma[v][u]]


def _check_vertex(n, v):
    if not 0 <= v < n:
        raise VertexError(f"vertex {v} out of range")


def _lc_matrix(g: np.ndarray, v: int, a: int) -> np.ndarray:
    col = g[v].copy()
    g = (g + a * np.outer(col, col)) % 3
    np.fill_diagonal(g, 0)
    return g


def local_comp(g: WeightedGraph, v: int, a: int) -> WeightedGraph:
    _check_vertex(g.n, v)
    return WeightedGraph.from_matrix(_lc_matrix(g.matrix(), v, a % 3))


def _scale_matrix(g: np.ndarray, v: int, b: int) -> np.ndarray:
    g = g.copy()
    g[v, :] = g[v, :] * b % 3
    g[:, v] = g[:, v] * b % 3
    return g


def scale_vertex(g: WeightedGraph, v: int, b: int) -> WeightedGraph:
    _check_vertex(g.n, v)
    if b % 3 == 0:
        raise ValueError("scaling factor must be nonzero mod 3")
    return WeightedGraph.from_matrix(_scale_matrix(g.matrix(), v, b % 3))


def graph_state_vector(g: WeightedGraph) -> np.ndarray:
    """prod C^{Gamma_lm} |+>^n, normalised, as a column."""
    n = g.n
    if n > 10:
        raise ValueError("graph too large for a dense state vector")
    gm = g.matrix()
    xs = np.array(list(product(range(3), repeat=n)), dtype=int).reshape(-1, n)
    q = np.einsum("si,ij,sj->s", xs, np.triu(gm), xs) % 3 if n else np.zeros(1, dtype=int)
    v = W ** q / math.sqrt(3) ** n
    return v.reshape(-1, 1)


# ---------------------------------------------------------------- GS-LC diagrams

@dataclass(frozen=True)
class GSLCDiagram:
    graph: WeightedGraph
    ops: tuple  # local Clifford tag per vertex, applied after the graph state

    @property
    def n(self) -> int:
        return self.graph.n

    def vertex_ops(self) -> list:
        t = c1()
        return [t.forms[u] for u in self.ops]

    @classmethod
    def graph_state(cls, g: WeightedGraph) -> "GSLCDiagram":
        return cls(g, (0,) * g.n)


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Zero"


ZERO = _Zero()


def is_zero(d) -> bool:
    return d is ZERO


def state_vector(d) -> np.ndarray:
    if d is ZERO:
        raise ValueError("zero diagram has no state vector")
    t = c1()
    v = graph_state_vector(d.graph).reshape((3,) * d.n) if d.n else np.ones(())
    for i, u in enumerate(d.ops):
        v = np.moveaxis(np.tensordot(t.mats[u], v, axes=([1], [i])), 0, i)
    return v.reshape(-1, 1)


class _Work:
    """Mutable working copy; every move leaves the represented state unchanged."""

    def __init__(self, d: GSLCDiagram):
        self.t = c1()
        self.g = d.graph.matrix().copy() if d.n else np.zeros((0, 0), dtype=int)
        self.ops = list(d.ops)

    @property
    def n(self):
        return len(self.ops)

    def freeze(self) -> GSLCDiagram:
        return GSLCDiagram(WeightedGraph.from_matrix(self.g), tuple(int(u) for u in self.ops))

    def nb(self, v):
        return [u for u in range(self.n) if self.g[v, u]]

    def right(self, v, tag):
        self.ops[v] = int(self.t.mul[self.ops[v], tag])

    def left(self, v, tag):
        self.ops[v] = int(self.t.mul[tag, self.ops[v]])

    # state-preserving moves
    def lc(self, v, a):
        a %= 3
        if not a:
            return
        for u in self.nb(v):
            self.right(u, self.t.Zaa[2 * a % 3])
        self.right(v, self.t.Xaa[a])
        self.g = _lc_matrix(self.g, v, a)

    def stab(self, v, c):
        c %= 3
        if not c:
            return
        for u in self.nb(v):
            self.right(u, self.t.Zp[c * self.g[v, u] % 3])
        self.right(v, self.t.X[c])

    def scale(self, v):
        self.g = _scale_matrix(self.g, v, 2)
        self.right(v, self.t.H2)

    def apply_fix(self, v, fix):
        h, a, c = fix
        if h:
            self.scale(v)
        self.lc(v, a)
        self.stab(v, c)

    def is_diag(self, v):
        return self.ops[v] in self.t.diag

    def is_red(self, v):
        return self.t.is_red_type(self.ops[v])

    def own_fix(self, v):
        self.apply_fix(v, self.t.own_fix[self.ops[v]])

    # two-qutrit controlled phase C^w between u and v
    def cz(self, u, v, w):
        w %= 3
        if not w:
            return
        for _ in range(64):
            for x, p in ((u, v), (v, u)):
                if self.is_red(x) and not self.nb(x):
                    k = self.t.basis_of[self.ops[x]]
                    self.left(p, self.t.Zp[w * k % 3])
                    return
            if self.is_diag(u) and self.is_diag(v):
                self.g[u, v] = self.g[v, u] = (self.g[u, v] + w) % 3
                return
            x, p = (u, v) if not self.is_diag(u) else (v, u)
            if not self.is_red(x):
                self.own_fix(x)
                continue
            others = [y for y in self.nb(x) if y != p]
            if others:
                self.lc(others[0], 1)
                continue
            # x is red and attached to p alone
            if self.is_diag(p):
                self._pair_solve(p, x, w)
                return
            if not self.is_red(p):
                self.own_fix(p)
                continue
            others = [y for y in self.nb(p) if y != x]
            self.lc(others[0] if others else p, 1)
        raise RuntimeError("controlled phase did not settle")

    def _pair_solve(self, a, b, w):
        """a diagonal, b attached only to a; absorb C^w into (a, b)."""
        t = self.t
        e = int(self.g[a, b])
        ub = t.mats[self.ops[b]]
        plus = np.ones(3) / math.sqrt(3)
        zp = [np.linalg.matrix_power(CLOCK, k) for k in range(3)]
        m = [zp[w * j % 3] @ ub @ zp[e * j % 3] @ plus for j in range(3)]
        for e2 in (1, 2, 0):
            for dg in A_SET:
                dvals = np.diag(zmat(*dg))
                cols = [m[j] / dvals[j] for j in range(3)]
                if e2 == 0:
                    if any(scalar_equiv(c.reshape(3, 1), cols[0].reshape(3, 1)) is None for c in cols):
                        continue
                    vb = t.state_tag.get(_key(cols[0].reshape(3, 1)))
                    if vb is None:
                        continue
                else:
                    basis = np.column_stack([zp[e2 * j % 3] @ plus for j in range(3)])
                    vm = np.column_stack(cols) @ np.linalg.inv(basis)
                    try:
                        vb = t.tag(vm)
                    except KeyError:
                        continue
                self.right(a, t.tag(zmat(*dg)))
                self.ops[b] = vb
                self.g[a, b] = self.g[b, a] = e2
                return
        raise RuntimeError("no two-vertex normal form found")

    def effect(self, v, q):
        """Post-select vertex v on <q|; returns False for the zero outcome."""
        if self.is_red(v):
            nbs = self.nb(v)
            if not nbs:
                ok = self.t.basis_of[self.ops[v]] == q % 3
                self._drop(v)
                return ok
            self.lc(nbs[0], 1)
        if not self.is_diag(v):
            self.own_fix(v)
        for u in self.nb(v):
            self.right(u, self.t.Zp[q * self.g[v, u] % 3])
        self._drop(v)
        return True

    def _drop(self, v):
        keep = [i for i in range(self.n) if i != v]
        self.g = self.g[np.ix_(keep, keep)]
        del self.ops[v]

    def add_vertex(self, tag):
        n = self.n
        g = np.zeros((n + 1, n + 1), dtype=int)
        g[:n, :n] = self.g
        self.g = g
        self.ops.append(int(tag))


# ---------------------------------------------------------------- public operations

def apply_local_comp_with_corrections(d: GSLCDiagram, v: int, a: int) -> GSLCDiagram:
    """Graph becomes G *_a v; vertex operators absorb the compensating phases."""
    _check_vertex(d.n, v)
    w = _Work(d)
    w.lc(v, a)
    return w.freeze()


def apply_scale_with_corrections(d: GSLCDiagram, v: int, b: int = 2) -> GSLCDiagram:
    _check_vertex(d.n, v)
    if b % 3 == 0:
        raise ValueError("scaling factor must be nonzero mod 3")
    w = _Work(d)
    if b % 3 == 2:
        w.scale(v)
    return w.freeze()


def apply_stabilizer_with_corrections(d: GSLCDiagram, v: int, c: int) -> GSLCDiagram:
    _check_vertex(d.n, v)
    w = _Work(d)
    w.stab(v, c)
    return w.freeze()


@dataclass(frozen=True)
class Gate:
    name: str          # S | H | Hdag | SUM | CZ | prep | effect | local
    targets: tuple = ()
    arg: int = 0       # basis label for effect, tag for local


def S(v): return Gate("S", (v,))
def Hg(v): return Gate("H", (v,))
def SUM(c, t): return Gate("SUM", (c, t))
def CZ(c, t, w=1): return Gate("CZ", (c, t), w)
def prep(): return Gate("prep")
def effect(v, q=0): return Gate("effect", (v,), q)


def apply_clifford_generator(d, gate: Gate):
    if d is ZERO:
        return ZERO
    w = _Work(d)
    t = w.t
    for v in gate.targets:
        _check_vertex(w.n, v)
    name = gate.name
    if name == "S":
        w.left(gate.targets[0], t.S)
    elif name == "H":
        w.left(gate.targets[0], t.H)
    elif name == "Hdag":
        w.left(gate.targets[0], t.inv[t.H])
    elif name == "local":
        w.left(gate.targets[0], gate.arg)
    elif name == "CZ":
        c, x = gate.targets
        if c == x:
            raise ValueError("controlled gate needs two distinct vertices")
        w.cz(c, x, gate.arg)
    elif name == "SUM":
        c, x = gate.targets
        if c == x:
            raise ValueError("controlled gate needs two distinct vertices")
        w.left(x, t.H)
        w.cz(c, x, 1)
        w.left(x, t.inv[t.H])
    elif name == "prep":
        w.add_vertex(t.inv[t.H])
    elif name == "effect":
        if not w.effect(gate.targets[0], gate.arg):
            return ZERO
    else:
        raise ValueError(f"unknown gate {name}")
    return w.freeze()


def gate_matrix(gate: Gate, n: int) -> np.ndarray:
    """Oracle: dense operator of a gate on n qutrits (effect maps 3^n -> 3^(n-1))."""
    def emb(u, v):
        ops = [np.eye(3)] * n
        ops[v] = u
        out = np.ones((1, 1))
        for o in ops:
            out = np.kron(out, o)
        return out
    t = c1()
    if gate.name == "S":
        return emb(S_GATE, gate.targets[0])
    if gate.name == "H":
        return emb(HQ, gate.targets[0])
    if gate.name == "Hdag":
        return emb(HQ_DAG, gate.targets[0])
    if gate.name == "local":
        return emb(t.mats[gate.arg], gate.targets[0])
    if gate.name in ("SUM", "CZ"):
        c, x = gate.targets
        dim = 3 ** n
        m = np.zeros((dim, dim), dtype=complex)
        for idx in range(dim):
            digits = list(np.unravel_index(idx, (3,) * n)) if n else []
            if gate.name == "SUM":
                out = list(digits)
                out[x] = (digits[x] + digits[c]) % 3
                m[np.ravel_multi_index(out, (3,) * n), idx] = 1
            else:
                m[idx, idx] = W ** (gate.arg * digits[c] * digits[x] % 3)
        return m
    if gate.name == "prep":
        e0 = np.array([[1], [0], [0]])
        return np.kron(np.eye(3 ** n), e0)
    if gate.name == "effect":
        v = gate.targets[0]
        bra = np.zeros((1, 3))
        bra[0, gate.arg % 3] = 1
        out = np.ones((1, 1))
        for i in range(n):
            out = np.kron(out, bra if i == v else np.eye(3))
        return out
    raise ValueError(gate.name)


# ---------------------------------------------------------------- rGS-LC

def is_rgslc(d: GSLCDiagram) -> bool:
    t = c1()
    allowed = set(t.diag) | t.rgs_red
    if any(u not in allowed for u in d.ops):
        return False
    red = [u in t.rgs_red for u in d.ops]
    g = d.graph.matrix()
    return not any(red[i] and red[j] and g[i, j] for i in range(d.n) for j in range(i + 1, d.n))


def red_vertices(d: GSLCDiagram) -> set:
    t = c1()
    return {i for i, u in enumerate(d.ops) if u in t.rgs_red}


def to_rgslc(d: GSLCDiagram) -> GSLCDiagram:
    """Diagonal or red-representative operators, no two adjacent red vertices."""
    w = _Work(d)
    for _ in range(10 * (w.n + 1) ** 2):
        changed = False
        for v in range(w.n):
            if not w.is_diag(v) and not w.is_red(v):
                w.own_fix(v)
                changed = True
                break
        if changed:
            continue
        pair = None
        for u in range(w.n):
            if w.is_red(u):
                for v in w.nb(u):
                    if w.is_red(v):
                        pair = (u, v)
                        break
            if pair:
                break
        if pair is None:
            break
        w.lc(pair[0], 1)
    else:
        raise RuntimeError("rGS-LC reduction did not terminate")
    for v in range(w.n):
        if w.is_red(v):
            w.apply_fix(v, w.t.red_fix[w.ops[v]])
    out = w.freeze()
    assert is_rgslc(out)
    return out


# ---------------------------------------------------------------- canonical data and pivots

def _poly_of(d: GSLCDiagram):
    """(free list, support rows, quadratic form) of an rGS-LC diagram with red representatives.

    Phase polynomial over the free variables: Q[j][k] for j<k cross terms, Q[j][j] squares, L linear.
    """
    t = c1()
    n = d.n
    g = d.graph.matrix()
    red = {i: t.red[u] for i, u in enumerate(d.ops) if u in t.red}
    free = [i for i in range(n) if i not in red]
    Q = np.zeros((n, n), dtype=int)
    L = np.zeros(n, dtype=int)
    for j in free:
        for k in free:
            if j < k:
                Q[j, k] = g[j, k]
        a1, a2 = t.diag[d.ops[j]]
        L[j] = (a2 - a1) % 3
        Q[j, j] = (2 * a1 - a2) % 3
    # red r: x_r = y + t, phase 2 y^2 + t y with y = sum g[r,u] x_u
    supp = {}
    for r, s in red.items():
        c = np.array([g[r, u] if u in free else 0 for u in range(n)], dtype=int)
        supp[r] = (c, s)
        _add_square(Q, c, 2)
        L[:] = (L + s * c) % 3
    return free, supp, Q % 3, L % 3


def _add_square(Q, c, coef):
    """Q += coef * (c.x)^2 with Q upper triangular incl. diagonal."""
    n = len(c)
    for j in range(n):
        if not c[j]:
            continue
        Q[j, j] = (Q[j, j] + coef * c[j] * c[j]) % 3
        for k in range(j + 1, n):
            if c[k]:
                Q[j, k] = (Q[j, k] + 2 * coef * c[j] * c[k]) % 3


def _inv3(x):
    return {1: 1, 2: 2}[x % 3]


def _rebuild(d: GSLCDiagram, new_free: list) -> GSLCDiagram:
    """Re-express the same state with `new_free` as the free (diagonal) vertices."""
    t = c1()
    n = d.n
    free, supp, Q, L = _poly_of(d)
    # affine expression of every variable in terms of old free variables: (vec over n, const)
    expr = {}
    for v in free:
        e = np.zeros(n, dtype=int)
        e[v] = 1
        expr[v] = (e, 0)
    for r, (c, s) in supp.items():
        expr[r] = (c.copy(), s)
    # change of variables: old free vars in terms of new free vars
    newf = sorted(new_free)
    lost = [v for v in free if v not in newf]
    gained = [v for v in newf if v not in free]
    # solve x_gained = A x_free + b for x_lost (square system)
    A = np.array([[expr[g][0][v] for v in lost] for g in gained], dtype=int).reshape(len(gained), len(lost))
    inv = _inv_mod3(A)
    if inv is None:
        raise ValueError("new free set is not an information set")
    # x_lost = inv (x_gained - rest(x_kept) - b)
    sub = {}
    for v in free:
        e = np.zeros(n, dtype=int)
        if v in newf:
            e[v] = 1
            sub[v] = (e, 0)
    for i, v in enumerate(lost):
        e = np.zeros(n, dtype=int)
        const = 0
        for j, gv in enumerate(gained):
            coef = inv[i, j]
            if not coef:
                continue
            ge, gc = expr[gv]
            e[gv] = (e[gv] + coef) % 3
            for u in free:
                if u in newf and ge[u]:
                    e[u] = (e[u] - coef * ge[u]) % 3
            const = (const - coef * gc) % 3
        sub[v] = (e % 3, const)
    # substitute into the phase polynomial
    Q2 = np.zeros((n, n), dtype=int)
    L2 = np.zeros(n, dtype=int)
    for j in free:
        ej, cj = sub[j]
        if L[j]:
            L2 = (L2 + L[j] * ej) % 3
        for k in free:
            if k < j or not Q[j, k]:
                continue
            ek, ck = sub[k]
            _add_product(Q2, ej, ek, Q[j, k])
            L2 = (L2 + Q[j, k] * (cj * ek + ck * ej)) % 3
    # new red vertices
    g = np.zeros((n, n), dtype=int)
    ops = [0] * n
    red_tag = {s: u for u, s in t.red.items()}
    for r in range(n):
        if r in newf:
            continue
        ce, cc = expr[r]
        e = np.zeros(n, dtype=int)
        const = cc
        for u in free:
            if ce[u]:
                ue, uc = sub[u]
                e = (e + ce[u] * ue) % 3
                const = (const + ce[u] * uc) % 3
        for u in newf:
            g[r, u] = g[u, r] = e[u]
        ops[r] = red_tag[const % 3]
        _add_square(Q2, e, -2)
        L2 = (L2 - const * e) % 3
    for j in newf:
        for k in newf:
            if j < k:
                g[j, k] = g[k, j] = Q2[j, k]
        al, be = Q2[j, j] % 3, L2[j] % 3
        ops[j] = t.tag(zmat((al + be) % 3, (al + 2 * be) % 3))
    return GSLCDiagram(WeightedGraph.from_matrix(g), tuple(int(o) for o in ops))


def _add_product(Q, ej, ek, coef):
    n = len(ej)
    for a in range(n):
        if not ej[a]:
            continue
        for b in range(n):
            if not ek[b]:
                continue
            c = coef * ej[a] * ek[b]
            if a == b:
                Q[a, a] = (Q[a, a] + c) % 3
            else:
                i, j = min(a, b), max(a, b)
                Q[i, j] = (Q[i, j] + c) % 3


def _inv_mod3(A: np.ndarray):
    k = A.shape[0]
    if A.shape != (k, k):
        return None
    M = np.concatenate([A % 3, np.eye(k, dtype=int)], axis=1)
    for col in range(k):
        piv = next((r for r in range(col, k) if M[r, col] % 3), None)
        if piv is None:
            return None
        M[[col, piv]] = M[[piv, col]]
        M[col] = M[col] * _inv3(M[col, col]) % 3
        for r in range(k):
            if r != col and M[r, col]:
                M[r] = (M[r] - M[r, col] * M[col]) % 3
    return M[:, k:]


def simplify_pair(d1: GSLCDiagram, d2: GSLCDiagram):
    """No adjacent (a, b) with a red only in d1 and b red only in d2."""
    for _ in range(4 * (d1.n + 1)):
        r1, r2 = red_vertices(d1), red_vertices(d2)
        g1, g2 = d1.graph.matrix(), d2.graph.matrix()
        hit = None
        for a in sorted(r1 - r2):
            for b in sorted(r2 - r1):
                if g1[a, b] or g2[a, b]:
                    hit = (a, b)
                    break
            if hit:
                break
        if hit is None:
            return d1, d2
        a, b = hit
        if g1[a, b]:
            free = [v for v in range(d1.n) if v not in r1 and v != b] + [a]
            d1 = _rebuild(d1, free)
        else:
            free = [v for v in range(d2.n) if v not in r2 and v != a] + [b]
            d2 = _rebuild(d2, free)
    raise RuntimeError("pair simplification did not terminate")


def equal_states(d1, d2) -> bool:
    if d1 is ZERO or d2 is ZERO:
        return d1 is ZERO and d2 is ZERO
    if d1.n != d2.n:
        raise ValueError("vertex-count mismatch")
    a, b = simplify_pair(to_rgslc(d1), to_rgslc(d2))
    return a.graph == b.graph and a.ops == b.ops


def oracle_equal(d1, d2, tol: float = 1e-9) -> bool:
    if d1 is ZERO or d2 is ZERO:
        return d1 is ZERO and d2 is ZERO
    return scalar_equiv(state_vector(d1), state_vector(d2), tol) is not None


def from_circuit(n: int, gates: list):
    """Start from |0...0> on n qutrits and apply gates."""
    d = GSLCDiagram(WeightedGraph.empty(0), ())
    for _ in range(n):
        d = apply_clifford_generator(d, prep())
    for gte in gates:
        d = apply_clifford_generator(d, gte)
    return d
