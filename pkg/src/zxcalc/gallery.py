"""Concrete circuits and identities: Toffoli forms, UMA, two-qubit Clifford+T relations, W/GHZ states."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .diagram import (Builder, Diagram, DiagramError, Phase, Triangle, X, Z, par, seq, substitute,
                      wire)
from .numerics import DEFAULT_TOL, scalar_equiv
from .rules import SoundnessReport
from .semantics import interpret
from .translate import decompose_triangle, wprime_zx


class UnknownEntry(KeyError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------- circuits

class Circuit:
    """Gate list on n qubits compiled to a ZX diagram (qubit i = boundary index i)."""

    def __init__(self, n: int):
        self.n = n
        self.b = Builder(2, "zx", n, n)
        self.front = [("in", i) for i in range(n)]

    def _box(self, q, nid, in_port=0, out_port=1):
        self.b.edge(self.front[q], (nid, in_port))
        self.front[q] = (nid, out_port)
        return self

    def _spider(self, q, nid):
        self.b.edge(self.front[q], (nid, 0))
        self.front[q] = (nid, 1)
        return nid

    def h(self, q):
        return self._box(q, self.b.h())

    def z(self, q, k: int, m: int = 4):
        """Z-phase k*pi/m."""
        self._spider(q, self.b.z(Phase(k, m)))
        return self

    def xr(self, q, k: int, m: int = 1):
        self._spider(q, self.b.x(Phase(k, m)))
        return self

    def t(self, q):
        return self.z(q, 1)

    def tdg(self, q):
        return self.z(q, -1)

    def s(self, q):
        return self.z(q, 2)

    def x(self, q):
        return self.xr(q, 1)

    def cx(self, c, t):
        zc, xt = self.b.z(), self.b.x()
        self._spider(c, zc)
        self._spider(t, xt)
        self.b.edge(zc, xt)
        return self

    def cz(self, a, b):
        za, zb, hh = self.b.z(), self.b.z(), self.b.h()
        self._spider(a, za)
        self._spider(b, zb)
        self.b.edge(za, (hh, 0)).edge((hh, 1), zb)
        return self

    def ccx_triangle(self, c1, c2, t):
        """Toffoli from triangles: AND of the controls XORed into the target."""
        z1, z2, xt = self.b.z(), self.b.z(), self.b.x()
        self._spider(c1, z1)
        self._spider(c2, z2)
        self._spider(t, xt)
        _and_into(self.b, [z1, z2], xt)
        return self

    def mcx_triangle(self, controls, t):
        zs = [self.b.z() for _ in controls]
        for c, zc in zip(controls, zs):
            self._spider(c, zc)
        xt = self.b.x()
        self._spider(t, xt)
        _and_into(self.b, zs, xt)
        return self

    def ccx(self, c1, c2, t):
        """Standard seven-T decomposition."""
        (self.h(t).cx(c2, t).tdg(t).cx(c1, t).t(t).cx(c2, t).tdg(t).cx(c1, t)
         .t(c2).t(t).h(t).cx(c1, c2).t(c1).tdg(c2).cx(c1, c2))
        return self

    def build(self) -> Diagram:
        for q in range(self.n):
            self.b.edge(self.front[q], ("out", q))
        return self.b.build()


def _and_into(b: Builder, sources, target):
    """Triangles from each source into a merge spider, inverse triangle to target."""
    m = b.z()
    for s in sources:
        tr = b.tri()
        b.edge(s, (tr, 0)).edge((tr, 1), m)
    ti = b.tri(-1)
    b.edge(m, (ti, 0)).edge((ti, 1), target)


def and_gate() -> Diagram:
    """2 -> 1, |ab> -> |a AND b> (triangles, merge, inverse triangle)."""
    b = Builder(2, "zx", 2, 1)
    m = b.z()
    for i in range(2):
        tr = b.tri()
        b.edge(("in", i), (tr, 0)).edge((tr, 1), m)
    ti = b.tri(-1)
    b.edge(m, (ti, 0)).edge((ti, 1), ("out", 0))
    return b.build()


def toffoli_circuit() -> Diagram:
    return Circuit(3).ccx(0, 1, 2).build()


def toffoli_triangle() -> Diagram:
    return Circuit(3).ccx_triangle(0, 1, 2).build()


def multi_toffoli(controls: int = 3) -> Diagram:
    return Circuit(controls + 1).mcx_triangle(list(range(controls)), controls).build()


def _uma(c: Circuit, version: int) -> Circuit:
    # wires (c, b, a); the Toffoli is the triangle form
    if version == 1:
        return c.ccx_triangle(0, 1, 2).cx(2, 0).cx(0, 1)
    return c.x(1).cx(0, 1).ccx_triangle(0, 1, 2).x(1).cx(2, 0).cx(2, 1)


def uma_v1() -> Diagram:
    return _uma(Circuit(3), 1).build()


def uma_v2() -> Diagram:
    return _uma(Circuit(3), 2).build()


def ccx_matrix(n_controls: int = 2) -> np.ndarray:
    n = n_controls + 1
    p = np.eye(2 ** n, dtype=complex)
    a, b = 2 ** n - 2, 2 ** n - 1
    p[[a, b]] = p[[b, a]]
    return p


# ---------------------------------------------------------------- two-qubit relations

def _c2(*ops) -> Diagram:
    c = Circuit(2)
    for op, *args in ops:
        getattr(c, op)(*args)
    return c.build()


def _inv(ops):
    inv = {"t": "tdg", "tdg": "t"}
    out = []
    for op, *args in reversed(ops):
        if op == "s":
            out += [("z", args[0], -2)]
        elif op == "z":
            out += [("z", args[0], -args[1])]
        else:
            out.append((inv.get(op, op), *args))
    return out


_U12 = [("t", 0), ("h", 1), ("cx", 0, 1), ("t", 1)]
_U13 = [("h", 0), ("t", 1), ("cz", 0, 1), ("t", 0), ("s", 1)]
_SWAP3 = [("cx", 0, 1), ("cx", 1, 0), ("cx", 0, 1)]


def _a12():
    return _U12 + [("cz", 0, 1)] + _inv(_U12)


def _b13():
    return _U13 + _SWAP3 + _inv(_U13)


SB_RELATIONS = {
    -2: ([("h", 0), ("h", 0)], []),
    -1: ([("s", 0)] * 4, []),
    0: ([("s", 0), ("h", 0)] * 3, []),
    1: ([("t", 0), ("t", 0)], [("s", 0)]),
    2: ([("cz", 0, 1), ("cz", 0, 1)], []),
    3: ([("s", 0), ("cz", 0, 1)], [("cz", 0, 1), ("s", 0)]),
    4: ([("s", 1), ("cz", 0, 1)], [("cz", 0, 1), ("s", 1)]),
    5: ([("t", 0), ("cz", 0, 1)], [("cz", 0, 1), ("t", 0)]),
    6: ([("t", 1), ("cz", 0, 1)], [("cz", 0, 1), ("t", 1)]),
    7: ([("h", 0), ("t", 1)], [("t", 1), ("h", 0)]),
    8: ([("cz", 0, 1), ("h", 0), ("h", 1)] * 3, [("cx", 0, 1), ("cx", 1, 0), ("cx", 0, 1)]),
    9: ([("cz", 0, 1), ("x", 0), ("cz", 0, 1)], [("x", 0), ("z", 1, 4)]),
    10: ([("h", 1), ("cz", 0, 1), ("h", 1), ("h", 0), ("cz", 0, 1), ("h", 0), ("h", 1), ("cz", 0, 1), ("h", 1)],
         [("cx", 0, 1), ("cx", 1, 0), ("cx", 0, 1)]),
    11: ([("t", 0), ("cx", 0, 1)], [("cx", 0, 1), ("t", 0)]),
    12: (_a12() * 2, []),
    13: (_b13() * 2, []),
    14: ([("cx", 0, 1), ("t", 1), ("cx", 0, 1), ("t", 1), ("cx", 0, 1), ("tdg", 1), ("cx", 0, 1), ("tdg", 1)], []),
}


def sb_relation(k: int) -> tuple:
    lhs, rhs = SB_RELATIONS[k]
    return _c2(*lhs), _c2(*rhs)


# ---------------------------------------------------------------- W and GHZ

def w_state_triangle() -> Diagram:
    """|001> + |010> + |100> from two W' nodes (triangle-built) on a red pi state."""
    return seq(X(0, 1, Phase(1)), wprime_zx(), par(wprime_zx(), wire()))


def w_state_phase() -> Diagram:
    """Same state with every triangle unfolded into pi/4 phase spiders."""
    return substitute(w_state_triangle(),
                      lambda k, n, m: decompose_triangle(k.power) if isinstance(k, Triangle) else None)


def _gphase(b: Builder, src, x: complex):
    """Chain a diag(1, x) (lambda-box then Z phase) from src; returns the last node."""
    lam = b.lam(abs(x))
    b.edge(src, (lam, 0))
    if abs(x) == 0 or cmath.phase(x) == 0:
        return (lam, 1)
    z = b.z(cmath.phase(x))
    b.edge((lam, 1), z)
    return z


def ghz_lhs(l1: complex, l2: complex, l3: complex) -> Diagram:
    """1 -> 2 with matrix rows (1+l1l2l3, 0), (0, l2+l1l3), (0, l1+l2l3), (l3+l1l2, 0).

    A hidden Z spider s is weighted by l3^s; output k carries l_k^(o_k xor s).
    """
    b = Builder(2, "zx", 1, 2)
    p = b.x()
    b.edge(("in", 0), p)
    s = b.z()
    b.edge(_gphase(b, s, l3), b.z())
    for k, lam in ((0, l1), (1, l2)):
        c, x = b.z(), b.x()
        b.edge(p, c).edge(c, ("out", k)).edge(c, x).edge(s, x)
        b.edge(_gphase(b, x, lam), b.z())
    return b.build()


def ghz_rhs(x1: complex, x2: complex, x3: complex) -> Diagram:
    """Red parity spider with generalised phases x1 (input), x2, x3 (outputs)."""
    b = Builder(2, "zx", 1, 2)
    p = b.x()
    lam = b.lam(abs(x1))
    b.edge(("in", 0), (lam, 0))
    last = (lam, 1)
    if cmath.phase(x1):
        z = b.z(cmath.phase(x1))
        b.edge(last, z)
        last = z
    b.edge(last, p)
    for k, x in ((0, x2), (1, x3)):
        z = b.z(cmath.phase(x))
        lam = b.lam(abs(x))
        b.edge(p, z).edge(z, (lam, 0)).edge((lam, 1), ("out", k))
    return b.build()


def normalize_from_products(m13: complex, m12: complex, m23: complex) -> tuple:
    """(x1, x2, x3) with x1x3 = m13, x1x2 = m12, x2x3 = m23 (principal root for x1)."""
    if m23 == 0:
        raise PreconditionError("degenerate products")
    x1 = cmath.sqrt(m13 * m12 / m23)
    if x1 == 0:
        raise PreconditionError("degenerate products")
    return x1, m12 / x1, m13 / x1


def ghz_normalize(l1: complex, l2: complex, l3: complex, eps: float = 1e-12) -> tuple:
    d = 1 + l1 * l2 * l3
    p13, p12, p23 = l2 + l1 * l3, l1 + l2 * l3, l3 + l1 * l2
    if abs(d * p13 * p12 * p23) < eps:
        raise PreconditionError("(1+l1l2l3)(l1+l2l3)(l2+l1l3)(l3+l1l2) vanishes")
    return normalize_from_products(p13 / d, p12 / d, p23 / d)


# ---------------------------------------------------------------- checks

def check_equiv(d1: Diagram, d2: Diagram, tol: float = DEFAULT_TOL):
    if (d1.n_in, d1.n_out) != (d2.n_in, d2.n_out) or d1.dim != d2.dim:
        raise DiagramError("arity mismatch")
    return scalar_equiv(interpret(d1), interpret(d2), tol)


def supplementarity_pair(n: int, alpha) -> tuple:
    a = Phase.of(alpha)
    effects = [Z(1, 0, a + Phase(2 * j, n)) for j in range(n)]
    lhs = seq(X(1, n), par(*effects))
    rhs = seq(X(1, n), Z(n, 0, a * n + Phase(n - 1)))
    return lhs, rhs


def supplementarity_product(n: int, alpha) -> tuple:
    a = Phase.of(alpha).radians
    prod = 1
    for j in range(n):
        prod *= 1 + cmath.exp(1j * (a + 2 * math.pi * j / n))
    return prod, 1 + cmath.exp(1j * (n * a + (n - 1) * math.pi))


def verify_supplementarity(n: int, alpha, tol: float = DEFAULT_TOL) -> SoundnessReport:
    if not 1 <= n <= 6:
        raise ValueError("n must lie in 1..6")
    lhs, rhs = supplementarity_pair(n, alpha)
    a, b = interpret(lhs), interpret(rhs)
    rep = SoundnessReport(f"supplementarity-{n}", 1)
    c = scalar_equiv(a, b, tol)
    rep.scalars.append(c)
    p, q = supplementarity_product(n, alpha)
    if c is None or abs(p - q) > tol * max(1.0, abs(p)):
        rep.failures.append(({"n": n, "alpha": alpha}, "lhs", "rhs", float(np.max(np.abs(a - b)))))
    return rep


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class GalleryEntry:
    name: str
    builder: Callable
    expected: object = None  # a matrix, or "pair" for pair-equivalence


def _entries() -> dict:
    e = [
        GalleryEntry("toffoli-circuit", toffoli_circuit, lambda: ccx_matrix(2)),
        GalleryEntry("toffoli-triangle", toffoli_triangle, lambda: ccx_matrix(2)),
        GalleryEntry("toffoli", lambda: (toffoli_circuit(), toffoli_triangle()), "pair"),
        GalleryEntry("and", and_gate, lambda: np.array([[1, 1, 1, 0], [0, 0, 0, 1]], dtype=complex)),
        GalleryEntry("multi-toffoli", multi_toffoli, lambda: ccx_matrix(3)),
        GalleryEntry("uma-v1", uma_v1),
        GalleryEntry("uma-v2", uma_v2),
        GalleryEntry("uma", lambda: (uma_v1(), uma_v2()), "pair"),
        GalleryEntry("w-state-triangle", w_state_triangle, lambda: _w_vec()),
        GalleryEntry("w-state-phase", w_state_phase, lambda: _w_vec()),
        GalleryEntry("w-state", lambda: (w_state_phase(), w_state_triangle()), "pair"),
        GalleryEntry("ghz-normal", lambda l1=0.5, l2=1j, l3=2.0: (ghz_lhs(l1, l2, l3),
                                                                  ghz_rhs(*ghz_normalize(l1, l2, l3))), "pair"),
        GalleryEntry("supplementarity", lambda n=3, alpha=0.3: supplementarity_pair(n, alpha), "pair"),
    ]
    e += [GalleryEntry(f"sb-relation-{k}", (lambda k=k: sb_relation(k)), "pair") for k in SB_RELATIONS]
    return {x.name: x for x in e}


def _w_vec():
    v = np.zeros((8, 1), dtype=complex)
    v[[1, 2, 4], 0] = 1
    return v


ENTRIES = _entries()


def names() -> list:
    return list(ENTRIES)


def build(name: str, **params):
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise UnknownEntry(name) from None
    return entry.builder(**params)


def check_entry(name: str, tol: float = DEFAULT_TOL, **params):
    """Scalar c relating the entry to its expectation (or its pair), None on failure."""
    entry = ENTRIES.get(name)
    if entry is None:
        raise UnknownEntry(name)
    out = entry.builder(**params)
    if entry.expected == "pair":
        return check_equiv(out[0], out[1], tol)
    if entry.expected is None:
        return 1.0
    return scalar_equiv(interpret(out), entry.expected(), tol)
