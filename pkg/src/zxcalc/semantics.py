"""Standard interpretation of diagrams by tensor contraction.

Basis ordering is big-endian: boundary index 0 is the most significant digit.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from itertools import count

import numpy as np

from .diagram import (PORTS, Bnd, Diagram, DiagramError, Hadamard, LambdaBox, Port, Triangle,
                      XSpider, ZWBlackW, ZWCrossing, ZWPi, ZWWhite, check, is_spider)
from .numerics import RingElement

MAX_SPIDER_LEGS = 12
W3 = cmath.exp(2j * math.pi / 3)


class ExactnessError(ValueError):
    """A parameter has no representation in Z[1/2, e^{i pi/4}]."""


# ---------------------------------------------------------------- scalars

def _phase_value(p, exact: bool):
    if exact:
        k = p.pi4()
        if k is None:
            raise ExactnessError(f"phase {p!r} is not a multiple of pi/4")
        return RingElement.omega(k)
    return cmath.exp(1j * p.radians)


def _real_value(x, exact: bool):
    if not exact:
        return complex(x)
    if isinstance(x, RingElement):
        return x
    if isinstance(x, complex):
        if x.imag != 0:
            raise ExactnessError(f"{x} needs an exact ring parameter")
        x = x.real
    try:
        return RingElement.coerce(Fraction(x))
    except (ValueError, TypeError) as e:
        raise ExactnessError(f"{x} is not dyadic") from e


def _ring(x):
    return RingElement.coerce(x)


def hadamard_matrix(dim: int, exact: bool = False) -> np.ndarray:
    if dim == 2:
        if exact:
            s = RingElement.inv_sqrt2()
            return np.array([[s, s], [s, -s]], dtype=object)
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if exact:
        raise ExactnessError("qutrit Hadamard has no exact Clifford+T form")
    return np.array([[W3 ** (j * k) for j in range(3)] for k in range(3)]) / math.sqrt(3)


def _dtype(exact):
    return object if exact else complex


def _zeros(shape, exact):
    if exact:
        a = np.empty(shape, dtype=object)
        a.fill(RingElement())
        return a
    return np.zeros(shape, dtype=complex)


# ---------------------------------------------------------------- tensors

def _spider_values(kind, dim: int, exact: bool) -> list:
    if isinstance(kind, ZWWhite):
        return [_ring(1) if exact else 1.0, _real_value(kind.r, exact) if exact else complex(kind.r)]
    one = _ring(1) if exact else 1.0
    return [one] + [_phase_value(p, exact) for p in kind.phases]


def spider_tensor(kind, dirs: list, dim: int, exact: bool = False) -> np.ndarray:
    """Tensor with one axis per leg; dirs[i] is 0 (input side) or 1 (output side)."""
    vals = _spider_values(kind, dim, exact)
    k = len(dirs)
    if k == 0:
        total = vals[0]
        for v in vals[1:]:
            total = total + v
        out = np.empty((), dtype=_dtype(exact))
        out[()] = total
        return out
    t = _zeros((dim,) * k, exact)
    for j in range(dim):
        t[(j,) * k] = vals[j]
    if isinstance(kind, XSpider):
        h = hadamard_matrix(dim, exact)
        hc = h if (dim == 2) else np.conj(h)
        for ax, dr in enumerate(dirs):
            m = h if dr == 1 else hc
            t = np.moveaxis(np.tensordot(m, t, axes=([1], [ax])), 0, ax)
    return t


def _box_matrix(kind, dim: int, exact: bool) -> np.ndarray:
    one, zero = (_ring(1), _ring(0)) if exact else (1.0, 0.0)
    dt = _dtype(exact)
    if isinstance(kind, Hadamard):
        p = kind.power % (2 if dim == 2 else 4)
        h = hadamard_matrix(dim, exact)
        m = np.array([[one if i == j else zero for j in range(dim)] for i in range(dim)], dtype=dt)
        for _ in range(p):
            m = h.dot(m) if not exact else np.tensordot(h, m, axes=([1], [0]))
        return m
    if isinstance(kind, Triangle):
        s = one if kind.power == 1 else (-one if exact else -1.0)
        return np.array([[one, s], [zero, one]], dtype=dt)
    if isinstance(kind, LambdaBox):
        return np.array([[one, zero], [zero, _real_value(kind.lam, exact)]], dtype=dt)
    if isinstance(kind, ZWPi):
        return np.array([[zero, one], [one, zero]], dtype=dt)
    if isinstance(kind, ZWBlackW):
        return np.array([[zero, one], [one, zero], [one, zero], [zero, zero]], dtype=dt)
    if isinstance(kind, ZWCrossing):
        m = np.array([[zero] * 4 for _ in range(4)], dtype=dt)
        m[0, 0] = one
        m[2, 1] = one
        m[1, 2] = one
        m[3, 3] = -one if exact else -1.0
        return m
    raise DiagramError(f"no matrix for {kind!r}")


def box_tensor(kind, dim: int, exact: bool = False) -> np.ndarray:
    """Axes in port order."""
    ins, outs = PORTS[type(kind)]
    m = _box_matrix(kind, dim, exact)
    t = m.reshape((dim,) * (len(outs) + len(ins)))
    order = list(outs) + list(ins)  # axis i of t corresponds to port order[i]
    perm = [order.index(p) for p in range(len(order))]
    return np.transpose(t, perm)


def generator_matrix(kind, n: int, m: int, dim: int = 2, exact: bool = False) -> np.ndarray:
    if is_spider(kind):
        t = spider_tensor(kind, [1] * m + [0] * n, dim, exact)
        return t.reshape(dim ** m, dim ** n)
    ins, outs = PORTS[type(kind)]
    if (n, m) != (len(ins), len(outs)):
        raise DiagramError(f"illegal arity {n}->{m} for {type(kind).__name__}")
    return _box_matrix(kind, dim, exact)


# ---------------------------------------------------------------- network

def _network(d: Diagram, exact: bool):
    """List of (tensor, labels) plus output/input label lists."""
    dim = d.dim
    legs = {nid: [] for nid in d.nodes}
    tensors = []
    fresh = count()
    for i, (a, b) in enumerate(d.edges):
        if isinstance(a, Bnd) and isinstance(b, Bnd):
            eye = _zeros((dim, dim), exact)
            for j in range(dim):
                eye[j, j] = _ring(1) if exact else 1.0
            tensors.append((eye, [("b", a.side, a.index), ("b", b.side, b.index)]))
            continue
        if isinstance(a, Bnd):
            lab = ("b", a.side, a.index)
        elif isinstance(b, Bnd):
            lab = ("b", b.side, b.index)
        else:
            lab = ("e", i)
        for e in (a, b):
            if isinstance(e, Port):
                legs[e.node].append((e.port, lab))
    for nid, kind in d.nodes.items():
        lg = legs[nid]
        if is_spider(kind):
            pieces = _split_spider(kind, lg, fresh, dim)
            for pk, plg in pieces:
                t = spider_tensor(pk, [p for p, _ in plg], dim, exact)
                tensors.append((t, [lab for _, lab in plg]))
        else:
            byport = {p: lab for p, lab in lg}
            ins, outs = PORTS[type(kind)]
            t = box_tensor(kind, dim, exact)
            tensors.append((t, [byport[p] for p in range(len(ins) + len(outs))]))
    outs = [("b", "out", j) for j in range(d.n_out)]
    ins = [("b", "in", j) for j in range(d.n_in)]
    return tensors, outs, ins


def _split_spider(kind, legs, fresh, dim):
    if len(legs) <= MAX_SPIDER_LEGS:
        return [(kind, legs)]
    neutral = _neutral(kind, dim)
    pieces = []
    chunk = MAX_SPIDER_LEGS - 2
    rest = list(legs)
    cur_kind = kind
    prev_link = None
    while rest:
        take, rest = rest[:chunk], rest[chunk:]
        plg = list(take)
        if prev_link is not None:
            plg.append((0, prev_link))
        if rest:
            prev_link = ("s", next(fresh))
            plg.append((1, prev_link))
        pieces.append((cur_kind, plg))
        cur_kind = neutral
    return pieces


def _neutral(kind, dim):
    from .diagram import Phase
    if isinstance(kind, ZWWhite):
        return ZWWhite(1.0)
    return type(kind)(tuple(Phase() for _ in range(dim - 1)))


def _trace_repeats(t, labs):
    while True:
        seen = {}
        pair = None
        for i, l in enumerate(labs):
            if l in seen:
                pair = (seen[l], i)
                break
            seen[l] = i
        if pair is None:
            return t, labs
        i, j = pair
        t = np.asarray(np.trace(t, axis1=i, axis2=j))
        labs = [l for k, l in enumerate(labs) if k not in (i, j)]


def _contract_pair(a, la, b, lb):
    shared = [l for l in la if l in lb]
    ia = [la.index(l) for l in shared]
    ib = [lb.index(l) for l in shared]
    t = np.asarray(np.tensordot(a, b, axes=(ia, ib)))  # object scalars come back bare
    labs = [l for l in la if l not in shared] + [l for l in lb if l not in shared]
    return t, labs


def contract(tensors: list, order: str = "greedy"):
    """Contract a labelled network. order='greedy' or 'sequential' (for cross-checks)."""
    work = [_trace_repeats(t, list(l)) for t, l in tensors]
    while len(work) > 1:
        best = None
        if order == "sequential":
            for j in range(1, len(work)):
                if set(work[0][1]) & set(work[j][1]):
                    best = (0, 0, j)
                    break
            if best is None:
                best = (0, 0, 1)
        else:
            for i in range(len(work)):
                si = set(work[i][1])
                for j in range(i + 1, len(work)):
                    sh = si & set(work[j][1])
                    if not sh:
                        continue
                    rank = len(si) + len(work[j][1]) - 2 * len(sh)
                    if best is None or rank < best[0]:
                        best = (rank, i, j)
            if best is None:
                sizes = sorted(range(len(work)), key=lambda k: work[k][0].size)
                i, j = sorted(sizes[:2])
                best = (0, i, j)
        _, i, j = best
        (a, la), (b, lb) = work[i], work[j]
        t, labs = _contract_pair(a, la, b, lb)
        t, labs = _trace_repeats(t, labs)
        work = [w for k, w in enumerate(work) if k not in (i, j)] + [(t, labs)]
    return work[0] if work else (None, [])


def interpret(d: Diagram, exact: bool = False, order: str = "greedy") -> np.ndarray:
    """Matrix of shape dim**n_out x dim**n_in (object dtype of RingElement when exact)."""
    check(d)
    tensors, outs, ins = _network(d, exact)
    if not tensors:
        one = _ring(1) if exact else 1.0
        return np.array([[one]], dtype=_dtype(exact))
    t, labs = contract(tensors, order)
    want = outs + ins
    if sorted(map(str, labs)) != sorted(map(str, want)):
        raise DiagramError("contraction left unexpected open legs")
    if want:
        t = np.transpose(t, [labs.index(l) for l in want])
    return np.asarray(t, dtype=_dtype(exact)).reshape(d.dim ** d.n_out, d.dim ** d.n_in)


def interpret_exact(d: Diagram) -> np.ndarray:
    return interpret(d, exact=True)


def to_complex(m: np.ndarray) -> np.ndarray:
    if m.dtype != object:
        return m
    return np.array([[complex(_ring(x).to_complex()) for x in row] for row in m], dtype=complex)
