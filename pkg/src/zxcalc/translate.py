"""Translations between ZX (with triangle and lambda-box) and ZW, and plain-ZX decompositions."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .diagram import (Builder, Diagram, DiagramError, Hadamard, LambdaBox, Phase, PVar, Triangle,
                      XSpider, ZSpider, ZWBlackW, ZWCrossing, ZWPi, ZWWhite, LAM, TRI, WHITE, X, Z,
                      compose_par, par, seq, substitute, swap, transpose, wire)
from .numerics import Dyadic, RingElement

MODES = ("full", "clifford-t")


class TranslationError(ValueError):
    pass


def _mode(mode: str) -> str:
    m = {"full-qubit": "full", "full": "full", "clifford-t": "clifford-t", "ct": "clifford-t"}.get(mode)
    if m is None:
        raise TranslationError(f"unknown mode {mode}")
    return m


def _ct_phase(p) -> RingElement:
    if isinstance(p, PVar):
        raise TranslationError("unbound pattern variable")
    k = Phase.of(p).pi4()
    if k is None:
        raise TranslationError(f"phase {p!r} is not a multiple of pi/4")
    return RingElement.omega(k)


def _dyadic(x) -> Fraction:
    if isinstance(x, RingElement):
        if any(x.c[1:]):
            raise TranslationError(f"{x!r} is not real")
        return x.a0.to_fraction()
    if isinstance(x, Dyadic):
        return x.to_fraction()
    try:
        f = Fraction(x)
    except (TypeError, ValueError) as e:
        raise TranslationError(f"{x!r} is not dyadic") from e
    if f.denominator & (f.denominator - 1):
        raise TranslationError(f"{x!r} is not dyadic")
    return f


# ---------------------------------------------------------------- scalar gadgets (ZX)

def sqrt2_gadget() -> Diagram:
    """0 -> 0 diagram with value sqrt 2."""
    return seq(Z(0, 1), X(1, 0))


def real_gadget(c) -> Diagram:
    """0 -> 0 diagram with value c >= 0 (exact when c is dyadic)."""
    if c < 0:
        raise TranslationError("negative scalar")
    if c <= 1:
        return seq(Z(0, 1, Phase(1)), LAM(1 - c), Z(1, 0))
    return seq(Z(0, 1), LAM(c - 1), Z(1, 0))


def inv_sqrt2_gadget() -> Diagram:
    """0 -> 0 diagram with value 1/sqrt 2, free of lambda-boxes."""
    return seq(Z(0, 1), half_box(), X(1, 0, Phase(1)))


def scaled(d: Diagram, *gadgets: Diagram) -> Diagram:
    for g in gadgets:
        d = compose_par(d, g)
    return d


# ---------------------------------------------------------------- ZX images of ZW generators

def w_zx() -> Diagram:
    """ZX diagram equal to the black W node (1 -> 2)."""
    b = Builder(2, "zx", 1, 2)
    x = b.x(Phase(1))
    z1, z2 = b.z(), b.z()
    t1, t2 = b.tri(), b.tri()
    e = b.z(Phase(1))
    b.edge(("in", 0), x).edge(x, z1).edge(x, z2)
    b.edge(z1, ("out", 0)).edge(z2, ("out", 1))
    b.edge(z1, (t1, 0)).edge((t1, 1), e).edge(z2, (t2, 0)).edge((t2, 1), e)
    return scaled(b.build(), sqrt2_gadget())


def wprime_zx() -> Diagram:
    """W after the pi node: |0> -> |00>, |1> -> |01> + |10>."""
    return seq(X(1, 1, Phase(1)), w_zx())


def plus_zx() -> Diagram:
    """W'^T: 2 -> 1, adds the second components of two (1, x) vectors."""
    return transpose(wprime_zx())


def cz_zx() -> Diagram:
    b = Builder(2, "zx", 2, 2)
    z1, z2, h = b.z(), b.z(), b.h()
    b.edge(("in", 0), z1).edge(z1, ("out", 0)).edge(("in", 1), z2).edge(z2, ("out", 1))
    b.edge(z1, (h, 0)).edge((h, 1), z2)
    return scaled(b.build(), sqrt2_gadget())


def crossing_zx() -> Diagram:
    return seq(cz_zx(), swap())


def _r_term(a: Fraction, k: int) -> Diagram:
    d = LAM(a)
    return seq(d, Z(1, 1, Phase(k, 4))) if k % 8 else d


def ring_terms(r: RingElement) -> list:
    """(a_j >= 0 dyadic, multiple of pi/4) pairs with r = sum a_j e^{i k_j pi/4}."""
    out = []
    for j, a in enumerate(r.coefficients()):
        f = a.to_fraction()
        if f:
            out.append((abs(f), j if f > 0 else j + 4))
    return out


def r_box(r: RingElement) -> Diagram:
    """1 -> 1 ZX diagram for diag(1, r), r in the ring, via W'-addition."""
    terms = ring_terms(r)
    if not terms:
        return LAM(0)
    boxes = [_r_term(a, k) for a, k in terms]
    return _sum_boxes(boxes)


def _sum_boxes(boxes: list) -> Diagram:
    """diag(1, sum r_i) from boxes diag(1, r_i)."""
    out = boxes[0]
    for bx in boxes[1:]:
        out = seq(wprime_zx(), par(out, bx), plus_zx())
    return out


def _white_to_zx(r, n: int, m: int, mode: str) -> Diagram:
    if mode == "clifford-t":
        if isinstance(r, RingElement):
            rr = r
        elif isinstance(r, complex):
            raise TranslationError(f"white parameter {r!r} is not in the ring")
        else:
            rr = RingElement.coerce(_dyadic(r))
        terms = ring_terms(rr)
        if len(terms) == 1:
            lam, ph = terms[0][0], Phase(terms[0][1], 4)
            box = None if lam == 1 else LAM(lam)
        else:
            ph, box = Phase(), r_box(rr)
    else:
        c = complex(r)
        lam = abs(c)
        ph = Phase.of(cmath.phase(c) % (2 * math.pi)) if lam else Phase()
        box = None if lam == 1 else LAM(lam)
    if n + m == 0:
        core = seq(Z(0, 1, ph), box, Z(1, 0)) if box else seq(Z(0, 1, ph), Z(1, 0))
        return core
    sp = Z(n, m, ph)
    if box is None:
        return sp
    if n:
        return seq(par(box, wire(n - 1)) if n > 1 else box, sp)
    return seq(sp, par(box, wire(m - 1)) if m > 1 else box)


def zw_to_zx(d: Diagram, mode: str = "full") -> Diagram:
    mode = _mode(mode)
    if d.calculus != "zw":
        raise TranslationError("input is not a ZW diagram")

    def img(kind, n, m):
        if isinstance(kind, ZWWhite):
            return _white_to_zx(kind.r, n, m, mode)
        if isinstance(kind, ZWBlackW):
            return w_zx()
        if isinstance(kind, ZWCrossing):
            return crossing_zx()
        if isinstance(kind, ZWPi):
            return X(1, 1, Phase(1))
        raise TranslationError(f"not a ZW generator: {kind!r}")

    return substitute(d, img, "zx")


# ---------------------------------------------------------------- ZW images of ZX generators

def _w(n, m, r):
    return WHITE(n, m, r)


def h_zw(mode: str = "full") -> Diagram:
    s = (RingElement.inv_sqrt2() - 1) if mode == "clifford-t" else (1 / math.sqrt(2) - 1)
    one = RingElement.coerce(1) if mode == "clifford-t" else 1.0
    b = Builder(2, "zw", 1, 1)
    st, ef, c = b.white(one), b.white(one), b.add(ZWCrossing())
    b.add(ZWWhite(s))
    b.edge(("in", 0), (c, 0)).edge(st, (c, 1)).edge((c, 2), ("out", 0)).edge((c, 3), ef)
    return b.build()


def triangle_zw(mode: str = "full") -> Diagram:
    one = RingElement.coerce(1) if mode == "clifford-t" else 1.0
    b = Builder(2, "zw", 1, 1)
    p, w, e = b.add(ZWPi()), b.add(ZWBlackW()), b.white(one)
    b.edge(("in", 0), (p, 0)).edge((p, 1), (w, 0)).edge((w, 1), ("out", 0)).edge((w, 2), e)
    return b.build()


def _phase_r(p, mode):
    if mode == "clifford-t":
        return _ct_phase(p)
    if isinstance(p, PVar):
        raise TranslationError("unbound pattern variable")
    return cmath.exp(1j * Phase.of(p).radians)


def zx_to_zw(d: Diagram, mode: str = "full") -> Diagram:
    mode = _mode(mode)
    if d.calculus != "zx":
        raise TranslationError("input is not a ZX diagram")
    if d.dim != 2:
        raise TranslationError("only qubit diagrams translate to ZW")
    hz = h_zw(mode)

    def hs(k):
        return par(*([hz] * k)) if k else None

    def img(kind, n, m):
        if isinstance(kind, ZSpider):
            return _w(n, m, _phase_r(kind.phases[0], mode))
        if isinstance(kind, XSpider):
            parts = [p for p in (hs(n), _w(n, m, _phase_r(kind.phases[0], mode)), hs(m)) if p]
            return seq(*parts)
        if isinstance(kind, Hadamard):
            return hz if kind.power % 2 else wire(1, 2, "zw")
        if isinstance(kind, Triangle):
            t = triangle_zw(mode)
            if kind.power == 1:
                return t
            zpi = _w(1, 1, _phase_r(Phase(1), mode))
            return seq(zpi, t, zpi)
        if isinstance(kind, LambdaBox):
            lam = kind.lam
            if mode == "clifford-t":
                lam = RingElement.coerce(_dyadic(lam))
            return _w(1, 1, lam)
        raise TranslationError(f"not a ZX generator: {kind!r}")

    return substitute(d, img, "zw")


# ---------------------------------------------------------------- plain-ZX decompositions

def half_box() -> Diagram:
    """diag(1, 1/2) from triangles and X spiders."""
    return seq(X(1, 2), par(TRI(), transpose(TRI(-1))), X(2, 1))


def _zero_state() -> Diagram:
    return scaled(X(0, 1), inv_sqrt2_gadget())


def _psi(frac, mode: str) -> Diagram:
    """0 -> 1 diagram for the column (1, frac), 0 <= frac < 1."""
    if frac == 0:
        return _zero_state()
    if mode == "full":
        a = math.acos(float(frac) / 2)
        return seq(par(Z(0, 1, a), Z(0, 1, -a)), plus_zx())
    f = _dyadic(frac)
    terms = []
    k = 0
    while f:
        f *= 2
        k += 1
        if f >= 1:
            f -= 1
            terms.append(k)
    states = [seq(Z(0, 1), *([half_box()] * k)) for k in terms]
    out = states[0]
    for s in states[1:]:
        out = seq(par(out, s), plus_zx())
    return out


def decompose_lambda(lam, mode: str = "full") -> Diagram:
    """Spider/triangle diagram for diag(1, lam) (no lambda-box nodes)."""
    mode = _mode(mode)
    if mode == "clifford-t":
        lam = _dyadic(lam)
    elif isinstance(lam, (Dyadic, RingElement)):
        lam = _dyadic(lam)
    if lam < 0:
        raise TranslationError("lambda must be nonnegative")
    n = math.floor(lam)
    frac = lam - n
    if frac == 0 and n >= 1:
        psi, n = Z(0, 1), n - 1
    else:
        psi = _psi(frac, mode)
    tt = transpose(TRI())
    psi = seq(psi, *([tt] * n))
    return seq(par(wire(), psi), Z(2, 1))


def decompose_triangle(power: int = 1) -> Diagram:
    """Green/red pi/4 phase-polynomial form of the triangle, up to a nonzero scalar."""
    if power not in (1, -1):
        raise DiagramError("triangle power must be +1 or -1")
    q = Phase(1, 4)
    b = Builder(2, "zx", 1, 1)
    n = b.x(Phase(1))
    a, o, c = b.z(q), b.z(q), b.z(q)
    b.edge(("in", 0), n).edge(n, a).edge(o, ("out", 0))
    for grp, ph in (((a, o), -q), ((a, c), -q), ((o, c), -q), ((a, o, c), q)):
        g = b.x()
        leaf = b.z(ph)
        for v in grp:
            b.edge(v, g)
        b.edge(g, leaf)
    d = b.build()
    if power == -1:
        d = seq(Z(1, 1, Phase(1)), d, Z(1, 1, Phase(1)))
    return d
