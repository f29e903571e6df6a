"""Rule catalogs as parameterised LHS/RHS builders, and the semantic soundness checker."""
from __future__ import annotations

import cmath
import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .diagram import (Builder, Diagram, Phase, CROSS, H, LAM, PI, TRI, WB, WHITE, X, Z,
                      cap, cup, empty, par, seq, swap, transpose, wire)
from .euler import AngleTriple, zxz_to_xzx
from .numerics import DEFAULT_TOL, max_dev, scalar_equiv
from .semantics import interpret
from .translate import plus_zx, sqrt2_gadget, wprime_zx

RULE_SETS = ("qubit-traditional", "zx-full-extended", "clifford-t", "zw", "qutrit",
             "two-qubit-ct", "derived-lemma")

ANGLE, PI4, NNREAL, DYADIC, COMPLEX, Z3PAIR = (
    "angle", "angle-π/4", "nonneg-real", "nonneg-dyadic", "complex", "z3-pair")
BOUNDARY_ANGLES = (Phase(0), Phase(1, 2), Phase(1), Phase(3, 2))
MAX_EXP = 6
MAX_TRIES = 1000


class UnknownRuleSet(KeyError):
    pass


class DomainError(ValueError):
    """No parameter assignment satisfies the rule's side conditions."""


@dataclass(frozen=True)
class RewriteRule:
    name: str
    rule_set: str
    lhs: Callable
    rhs: Callable
    params: tuple = ()
    scalar_exact: bool = False
    dim: int = 2
    calculus: str = "zx"
    # side conditions: maps a sampled assignment to a completed one, or None to reject it
    derive: Callable | None = None

    def build(self, **p) -> tuple:
        if self.derive is not None:
            q = self.derive(dict(p))
            if q is None:
                raise DomainError(f"{self.name}: side condition fails for {p}")
            p = q
        return self.lhs(**p), self.rhs(**p)


@dataclass
class SoundnessReport:
    rule: str
    samples: int
    failures: list = field(default_factory=list)  # (params, lhs digest, rhs digest, max deviation)
    scalars: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------- sampling

def sample_value(domain: str, rng: random.Random, i: int, j: int = 0):
    """Value for sample i of parameter j; the first samples walk the boundary cases."""
    if domain == ANGLE:
        if i < len(BOUNDARY_ANGLES):
            return BOUNDARY_ANGLES[(i + j) % len(BOUNDARY_ANGLES)]
        return Phase(rad=rng.uniform(0, 2 * math.pi))
    if domain == PI4:
        return Phase((i + 3 * j) % 8 if i < 8 else rng.randrange(8), 4)
    if domain == NNREAL:
        if i < 2:
            return (0.0, 1.0)[(i + j) % 2]
        return rng.uniform(0, 3)
    if domain == DYADIC:
        if i < 2:
            return Fraction((i + j) % 2)
        e = rng.randint(0, MAX_EXP)
        return Fraction(rng.randint(0, 4 << e), 1 << e)
    if domain == COMPLEX:
        if i < 4:
            return (0j, 1 + 0j, -1 + 0j, 1j)[(i + j) % 4]
        return complex(rng.gauss(0, 1), rng.gauss(0, 1))
    if domain == Z3PAIR:
        k = (i + 4 * j) % 9 if i < 9 else rng.randrange(9)
        return (Phase(2 * (k // 3), 3), Phase(2 * (k % 3), 3))
    raise ValueError(f"unknown domain {domain}")


def sample_params(rule: RewriteRule, rng: random.Random, i: int) -> dict:
    for t in range(MAX_TRIES):
        k = i if t == 0 else len(BOUNDARY_ANGLES) + 9 + t
        p = {name: sample_value(dom, rng, k, j) for j, (name, dom) in enumerate(rule.params)}
        if rule.derive is None:
            return p
        q = rule.derive(dict(p))
        if q is not None:
            return q
    raise DomainError(f"{rule.name}: no admissible parameters after {MAX_TRIES} draws")


def digest(m: np.ndarray) -> str:
    a = np.round(np.asarray(m, dtype=complex), 9) + 0.0
    return hashlib.sha1(a.tobytes() + str(a.shape).encode()).hexdigest()[:12]


def verify_rule(rule: RewriteRule, samples: int = 100, seed: int = 0,
                tol: float = DEFAULT_TOL) -> SoundnessReport:
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(seed)
    rep = SoundnessReport(rule.name, samples)
    for i in range(samples):
        p = sample_params(rule, rng, i)
        lhs, rhs = rule.lhs(**p), rule.rhs(**p)
        a, b = interpret(lhs), interpret(rhs)
        dev = max_dev(a, b) if a.shape == b.shape else math.inf
        if rule.scalar_exact:
            ok = dev <= tol * max(1.0, float(np.max(np.abs(a), initial=0)))
            c = 1.0 if ok else None
        else:
            c = scalar_equiv(a, b, tol) if a.shape == b.shape else None
            ok = c is not None
        rep.scalars.append(c)
        if not ok:
            rep.failures.append((p, digest(a), digest(b), dev))
    return rep


# ---------------------------------------------------------------- shorthands

def _r(lam, a) -> Diagram:
    """diag(1, lam e^{ia})."""
    return seq(LAM(lam), Z(1, 1, a))


def _cnot() -> Diagram:
    return seq(par(Z(1, 2), wire()), par(wire(), X(2, 1)))


def _cnot_rev() -> Diagram:
    return seq(par(wire(), Z(1, 2)), par(X(2, 1), wire()))


def _cz() -> Diagram:
    b = Builder(2, "zx", 2, 2)
    z1, z2, h = b.z(), b.z(), b.h()
    b.edge(("in", 0), z1).edge(z1, ("out", 0)).edge(("in", 1), z2).edge(z2, ("out", 1))
    b.edge(z1, (h, 0)).edge((h, 1), z2)
    return b.build()


def _bialg_lhs(green, red) -> Diagram:
    return seq(par(green(1, 2), green(1, 2)), par(wire(), swap(), wire()), par(red(2, 1), red(2, 1)))


def _self_loop(a) -> Diagram:
    """1->1 Z spider with one plain self-loop."""
    b = Builder(2, "zx", 1, 1)
    n = b.z(a)
    b.edge(("in", 0), n).edge(n, ("out", 0)).edge(n, n)
    return b.build()


def _h_loops(a, loops: int) -> Diagram:
    b = Builder(2, "zx", 0, 0)
    n = b.z(a)
    for _ in range(loops):
        hh = b.h()
        b.edge(n, (hh, 0)).edge((hh, 1), n)
    return b.build()


def _rule(name, rs, lhs, rhs, params=(), exact=False, **kw) -> RewriteRule:
    return RewriteRule(name, rs, lhs, rhs, tuple(params), exact, **kw)


# ---------------------------------------------------------------- qubit ZX

def _traditional(rs: str, dom: str) -> list:
    ab = ((("alpha", dom), ("beta", dom)))
    a = (("alpha", dom),)
    q = Phase(1, 2)
    return [
        _rule("S1", rs, lambda alpha, beta: seq(Z(1, 1, alpha), Z(1, 1, beta)),
              lambda alpha, beta: Z(1, 1, alpha + beta), ab, True),
        _rule("S2", rs, lambda: Z(1, 1), lambda: wire(), (), True),
        _rule("S3", rs, lambda: Z(0, 2), lambda: cap(), (), True),
        _rule("H2", rs, lambda: seq(H(), H()), lambda: wire(), (), True),
        _rule("H3", rs, lambda: seq(cap(), par(H(), wire())), lambda: seq(cap(), par(wire(), H())), (), True),
        _rule("H", rs, lambda alpha: seq(H(), Z(1, 2, alpha), par(H(), H())),
              lambda alpha: X(1, 2, alpha), a, True),
        _rule("B1", rs, lambda: seq(X(0, 1), Z(1, 2)), lambda: par(X(0, 1), X(0, 1))),
        _rule("B2", rs, lambda: _bialg_lhs(Z, X), lambda: seq(X(2, 1), Z(1, 2))),
        _rule("EU", rs, lambda: H(), lambda: seq(Z(1, 1, q), X(1, 1, q), Z(1, 1, q))),
        _rule("K2", rs, lambda alpha: seq(X(1, 1, Phase(1)), Z(1, 1, alpha)),
              lambda alpha: seq(Z(1, 1, -alpha), X(1, 1, Phase(1))), a),
    ]


def mutated_b2() -> RewriteRule:
    """B2 with one phase corrupted; verify_rule must reject it."""
    return _rule("B2-mutated", "qubit-traditional", lambda: _bialg_lhs(Z, X),
                 lambda: seq(X(2, 1, Phase(1, 2)), Z(1, 2)))


def _ad_full(p):
    s = p["lam1"] * cmath.exp(1j * p["beta"].radians) + p["lam2"] * cmath.exp(1j * p["alpha"].radians)
    p["lam"] = abs(s)
    p["gamma"] = Phase(rad=cmath.phase(s)) if abs(s) > 0 else Phase(0)
    return p


def _ad_ct(p):
    ka, kb = p["alpha"].pi4(), p["beta"].pi4()
    if (ka - kb) % 4:
        return None  # alpha, beta must agree mod pi
    s = p["lam2"] + (p["lam1"] if ka == kb else -p["lam1"])
    p["lam"] = abs(s)
    p["gamma"] = p["alpha"] if s >= 0 else p["alpha"] + Phase(1)
    return p


def _ad_lhs(lam1, lam2, alpha, beta, **_):
    return seq(wprime_zx(), par(_r(lam1, beta), _r(lam2, alpha)), plus_zx())


def _ad_rhs(lam, gamma, **_):
    return _r(lam, gamma)


def _extended(rs: str, ang: str, real: str) -> list:
    T, Tt = TRI, lambda: transpose(TRI())
    pi = Phase(1)
    copy2 = lambda a, b: seq(Z(1, 2), par(a, b), Z(2, 1))
    out = [
        _rule("TR1", rs, lambda: seq(X(1, 1, pi), T(), X(1, 1, pi)), Tt, (), True),
        _rule("TR2", rs, lambda: seq(X(0, 1), T()), lambda: X(0, 1), (), True),
        _rule("TR3", rs, lambda: seq(X(0, 1, pi), T()), lambda: Z(0, 1)),
    ]
    if rs == "clifford-t":
        out.append(_rule("IV′", rs, lambda: par(sqrt2_gadget(), sqrt2_gadget(),
                                                seq(Z(0, 1, pi), LAM(Fraction(1, 2)), Z(1, 0))),
                         empty, (), True))
        out.append(_rule("TR5′", rs, lambda: par(seq(X(1, 2), par(T(), TRI(-1)), X(2, 1)),
                                                 sqrt2_gadget(), sqrt2_gadget()),
                         lambda: LAM(2), (), True))
    else:
        out.append(_rule("IV2", rs, lambda: par(sqrt2_gadget(),
                                                seq(Z(0, 1, pi), LAM(1 - 1 / math.sqrt(2)), Z(1, 0))),
                         empty, (), True))
    rr = (("lam", real), ("alpha", ang))
    ad = (("lam1", real), ("lam2", real), ("alpha", ang), ("beta", ang))
    out += [
        _rule("TR6", rs, lambda: seq(T(), Z(1, 1, pi), T()), lambda: Z(1, 1, pi), (), True),
        _rule("TR8", rs, lambda: copy2(T(), T()), T, (), True),
        _rule("TR9", rs, lambda: copy2(T(), TRI(-1)), lambda: TRI(-1), (), True),
        _rule("TR12", rs, lambda: copy2(TRI(-1), TRI(-1)), T, (), True),
        _rule("TR13′", rs, lambda lam, alpha: seq(_r(lam, alpha), wprime_zx()),
              lambda lam, alpha: seq(wprime_zx(), par(_r(lam, alpha), _r(lam, alpha))), rr, True),
        _rule("AD′", rs, _ad_lhs, _ad_rhs, ad, True,
              derive=_ad_ct if rs == "clifford-t" else _ad_full),
        _rule("L3", rs, lambda: LAM(1), wire, (), True),
        _rule("L4", rs, lambda lam1, lam2: seq(LAM(lam1), LAM(lam2)),
              lambda lam1, lam2: LAM(lam1 * lam2), (("lam1", real), ("lam2", real)), True),
    ]
    return out


def _two_qubit() -> list:
    rs = "two-qubit-ct"
    keep = {"S1", "S2", "S3", "H2", "H", "B1", "B2", "EU", "K2"}
    out = [r.__class__(r.name, rs, r.lhs, r.rhs, r.params, r.scalar_exact)
           for r in _traditional(rs, PI4) if r.name in keep]
    out.append(_rule("K1", rs, lambda alpha: seq(X(0, 1, Phase(1)), Z(1, 2, alpha)),
                     lambda alpha: par(X(0, 1, Phase(1)), X(0, 1, Phase(1))), (("alpha", PI4),)))

    def p_derive(p):
        t = zxz_to_xzx(AngleTriple(p["alpha"].radians, p["beta"].radians, p["gamma"].radians))
        p["alpha2"], p["beta2"], p["gamma2"] = (Phase(rad=t.alpha), Phase(rad=t.beta), Phase(rad=t.gamma))
        return p

    out.append(_rule("P", rs, lambda alpha, beta, gamma, **_: seq(Z(1, 1, alpha), X(1, 1, beta), Z(1, 1, gamma)),
                     lambda alpha2, beta2, gamma2, **_: seq(X(1, 1, alpha2), Z(1, 1, beta2), X(1, 1, gamma2)),
                     (("alpha", ANGLE), ("beta", ANGLE), ("gamma", ANGLE)), derive=p_derive))
    return out


def _derived() -> list:
    rs = "derived-lemma"
    a = (("alpha", ANGLE),)
    lam = (("lam", NNREAL),)
    pi, q = Phase(1), Phase(1, 2)
    T, Ti, Tt = TRI, lambda: TRI(-1), lambda: transpose(TRI())
    Tit = lambda: transpose(TRI(-1))
    zz = lambda a, b: seq(Z(1, 2), par(a, b), Z(2, 1))
    zx = lambda a, b: seq(Z(1, 2), par(a, b), X(2, 1))
    return [
        _rule("IV", rs, lambda: par(sqrt2_gadget(), _h_loops(q, 2), _h_loops(q, 1)), empty, (), True),
        _rule("hopf", rs, lambda: seq(Z(1, 2), X(2, 1)), lambda: seq(Z(1, 0), X(0, 1))),
        _rule("6b", rs, lambda alpha: seq(X(0, 1, pi), Z(1, 2, alpha)),
              lambda alpha: par(X(0, 1, pi), X(0, 1, pi)), a),
        _rule("com", rs, lambda alpha: seq(X(1, 1, pi), Z(1, 2, alpha)),
              lambda alpha: seq(Z(1, 2, -alpha), par(X(1, 1, pi), X(1, 1, pi))), a),
        _rule("inv", rs, lambda alpha: seq(X(1, 1, alpha), X(1, 1, -alpha)), lambda alpha: wire(), a, True),
        _rule("S4", rs, lambda alpha: _self_loop(alpha), lambda alpha: Z(1, 1, alpha), a, True),
        _rule("lemma1", rs, lambda alpha: seq(X(0, 1), Z(1, 1, alpha)), lambda alpha: X(0, 1), a, True),
        _rule("lemma2", rs, lambda alpha: seq(X(0, 1, pi), Z(1, 1, alpha)), lambda alpha: X(0, 1, pi), a),
        _rule("lemma3", rs, lambda: seq(_cnot(), _cnot()), lambda: wire(2)),
        _rule("lemma4", rs, lambda alpha: seq(H(), X(1, 1, alpha), H()), lambda alpha: Z(1, 1, alpha), a, True),
        _rule("lemma5", rs, lambda: seq(Z(1, 1, pi), X(1, 1, pi)), lambda: seq(X(1, 1, pi), Z(1, 1, pi))),
        _rule("lemma6", rs, lambda: seq(Z(1, 1, q), X(1, 1, q), Z(1, 1, q)),
              lambda: seq(X(1, 1, q), Z(1, 1, q), X(1, 1, q))),
        _rule("lemma7", rs, _cz, lambda: seq(par(wire(), H()), _cnot(), par(wire(), H()))),
        _rule("cnot-swap", rs, lambda: seq(_cnot(), _cnot_rev(), _cnot()), swap),
        _rule("3-crossing", rs, lambda: seq(par(swap(), wire()), par(wire(), swap()), par(swap(), wire())),
              lambda: seq(par(wire(), swap()), par(swap(), wire()), par(wire(), swap())), (), True),
        _rule("TR4", rs, lambda: seq(Z(0, 1, pi), T()), lambda: X(0, 1, pi)),
        _rule("TR5", rs, lambda: zx(Ti(), Tt()), H),
        _rule("TR7", rs, lambda: zx(T(), wire()), T),
        _rule("TR10", rs, lambda: zz(T(), Tt()), wire, (), True),
        _rule("TR10′", rs, lambda: zz(Ti(), Tit()), wire, (), True),
        _rule("TR11", rs, lambda: zx(T(), Ti()), lambda: seq(X(1, 0), X(0, 1))),
        _rule("L1", rs, lambda lam: seq(LAM(lam), Z(1, 2)), lambda lam: seq(Z(1, 2), par(LAM(lam), wire())),
              lam, True),
        _rule("L2", rs, lambda lam: seq(X(0, 1), LAM(lam)), lambda lam: X(0, 1), lam, True),
        _rule("L5", rs, lambda lam, alpha: seq(LAM(lam), Z(1, 1, alpha)),
              lambda lam, alpha: seq(Z(1, 1, alpha), LAM(lam)), lam + a, True),
        _rule("half-box", rs, lambda: seq(X(1, 2), par(T(), Tit()), X(2, 1)),
              lambda: LAM(Fraction(1, 2)), (), True),
        _rule("supplementarity", rs, lambda alpha: seq(X(1, 2), par(Z(1, 0, alpha), Z(1, 0, alpha + pi))),
              lambda alpha: seq(X(1, 2), Z(2, 0, alpha * 2 + pi)), a, True),
    ]


# ---------------------------------------------------------------- ZW

def _zw() -> list:
    rs = "zw"
    kw = {"calculus": "zw"}
    w = lambda n=1: wire(n, calculus="zw")
    sw = lambda: swap(calculus="zw")
    R = lambda r: WHITE(1, 1, r)
    Wp = lambda: seq(PI(), WB())
    zero = lambda: WHITE(0, 1, 0)
    r_ = (("r", COMPLEX),)
    rs_ = (("r", COMPLEX), ("s", COMPLEX))

    def curl():
        return seq(par(w(), cap(calculus="zw")), par(CROSS(), w()), par(w(), cup(calculus="zw")))

    def cross_fan(top):
        return seq(par(top, w()), par(w(), CROSS()), par(CROSS(), w()))

    def swap_fan(top):
        return seq(par(top, w()), par(w(), sw()), par(sw(), w()))

    def nonzero(p):
        return p if abs(p["r"]) > 1e-6 else None

    def loop(r):
        b = Builder(2, "zw", 1, 1)
        n = b.white(r)
        b.edge(("in", 0), n).edge(n, ("out", 0)).edge(n, n)
        return b.build()

    yb = lambda c: seq(par(c(), w()), par(w(), c()), par(c(), w()))
    yb2 = lambda c: seq(par(w(), c()), par(c(), w()), par(w(), c()))
    return [
        _rule("rei_x1", rs, curl, lambda: R(-1), (), True, **kw),
        _rule("rei_x2", rs, lambda: seq(CROSS(), CROSS()), lambda: w(2), (), True, **kw),
        _rule("rei_x3", rs, lambda: yb(CROSS), lambda: yb2(CROSS), (), True, **kw),
        _rule("nat_n^x", rs, lambda: cross_fan(Wp()), lambda: seq(CROSS(), par(w(), Wp())), (), True, **kw),
        _rule("nat_e^x", rs, lambda: seq(par(zero(), w()), CROSS()), lambda: par(w(), zero()), (), True, **kw),
        _rule("sym3", rs, lambda: seq(WB(), sw()), WB, (), True, **kw),
        _rule("uncowL", rs, lambda: seq(Wp(), par(w(), WHITE(1, 0, 0))), w, (), True, **kw),
        _rule("natww", rs, lambda: seq(Wp(), par(Wp(), w())), lambda: seq(Wp(), par(w(), Wp())), (), True, **kw),
        _rule("natwx", rs, lambda: seq(Wp(), CROSS()), Wp, (), True, **kw),
        _rule("comcow", rs, lambda: seq(Wp(), sw()), Wp, (), True, **kw),
        _rule("natmw", rs, lambda r: seq(R(r), Wp()), lambda r: seq(Wp(), par(R(r), R(r))), r_, True, **kw),
        _rule("natmnw", rs, lambda: seq(WHITE(2, 1), Wp()),
              lambda: seq(par(Wp(), Wp()), par(w(), sw(), w()), par(WHITE(2, 1), WHITE(2, 1))), (), True, **kw),
        _rule("natmnew", rs, lambda: seq(zero(), Wp()), lambda: par(zero(), zero()), (), True, **kw),
        _rule("hopf", rs, lambda: seq(Wp(), WHITE(2, 1)), lambda: seq(WHITE(1, 0, 0), zero()), (), True, **kw),
        _rule("ant", rs, lambda: seq(PI(), PI()), w, (), True, **kw),
        _rule("inv", rs, lambda r: seq(R(r), R(1 / r)), lambda r: w(), r_, True, derive=nonzero, **kw),
        _rule("sym_z", rs, lambda r: seq(sw(), WHITE(2, 1, r)), lambda r: WHITE(2, 1, r), r_, True, **kw),
        _rule("unco_zR", rs, lambda: seq(WHITE(1, 2), par(w(), WHITE(1, 0, 1))), w, (), True, **kw),
        _rule("asso_z", rs, lambda r, s: seq(par(WHITE(2, 1, r), w()), WHITE(2, 1, s)),
              lambda r, s: WHITE(3, 1, r * s), rs_, True, **kw),
        _rule("ph", rs, lambda r, s: seq(R(r), WHITE(1, 2, s)), lambda r, s: WHITE(1, 2, r * s), rs_, True, **kw),
        _rule("nat_n^c", rs, lambda r: cross_fan(WHITE(1, 2, r)), lambda r: swap_fan(WHITE(1, 2, r)),
              r_, True, **kw),
        _rule("nat_m^c", rs, lambda r: transpose(cross_fan(WHITE(1, 2, r))),
              lambda r: transpose(swap_fan(WHITE(1, 2, r))), r_, True, **kw),
        _rule("loop", rs, loop, R, r_, True, **kw),
        _rule("un_x", rs, lambda: seq(par(w(), zero()), CROSS()), lambda: par(zero(), w()), (), True, **kw),
        _rule("rng₁", rs, lambda: R(1), w, (), True, **kw),
        _rule("rng₋₁", rs, lambda: seq(R(-1), R(-1)), w, (), True, **kw),
        _rule("rng^{r,s}×", rs, lambda r, s: seq(R(r), R(s)), lambda r, s: R(r * s), rs_, True, **kw),
        _rule("rng^{r,s}₊", rs, lambda r, s: seq(Wp(), par(R(r), R(s)), transpose(Wp())),
              lambda r, s: R(r + s), rs_, True, **kw),
        _rule("natʳ_c", rs, lambda r, s: seq(par(R(r), R(s)), CROSS()),
              lambda r, s: seq(CROSS(), par(R(s), R(r))), rs_, True, **kw),
        _rule("natʳ_εc", rs, lambda: seq(cap(calculus="zw"), CROSS()),
              lambda: seq(cap(calculus="zw"), par(w(), R(-1))), (), True, **kw),
        _rule("phʳ", rs, lambda r, s: seq(par(WHITE(0, 1, r), WHITE(0, 1, s)), transpose(Wp())),
              lambda r, s: WHITE(0, 1, r + s), rs_, True, **kw),
    ]


# ---------------------------------------------------------------- qutrit

def _qutrit() -> list:
    rs = "qutrit"
    kw = {"dim": 3}
    Zp = lambda n, m, p=(0, 0): Z(n, m, *p, dim=3)
    Xp = lambda n, m, p=(0, 0): X(n, m, *p, dim=3)
    Hq = lambda k=1: H(k, dim=3)
    w = lambda n=1: wire(n, dim=3)
    z3 = lambda a: Phase(2 * a, 3)
    one_two = (z3(1), z3(2))
    p_ = (("p", Z3PAIR),)
    pq = (("p", Z3PAIR), ("q", Z3PAIR))
    return [
        _rule("S1", rs, lambda p, q: seq(Zp(1, 1, p), Zp(1, 1, q)),
              lambda p, q: Zp(1, 1, (p[0] + q[0], p[1] + q[1])), pq, True, **kw),
        _rule("S2", rs, lambda: Zp(1, 1), w, (), True, **kw),
        _rule("S3", rs, lambda: Zp(0, 2), lambda: cap(dim=3), (), True, **kw),
        _rule("B1", rs, lambda: seq(Xp(0, 1), Zp(1, 2)), lambda: par(Xp(0, 1), Xp(0, 1)), (), **kw),
        _rule("B2", rs, lambda: seq(par(Zp(1, 2), Zp(1, 2)), par(w(), swap(dim=3), w()),
                                    par(Xp(2, 1), Xp(2, 1))),
              lambda: seq(Xp(2, 1), Zp(1, 2)), (), **kw),
        _rule("K1", rs, lambda: seq(Xp(0, 1, one_two), Zp(1, 2)),
              lambda: par(Xp(0, 1, one_two), Xp(0, 1, one_two)), (), **kw),
        _rule("K2", rs, lambda p: seq(Xp(1, 1, one_two), Zp(1, 1, p)),
              lambda p: seq(Zp(1, 1, (-p[1], p[0] - p[1])), Xp(1, 1, one_two)), p_, **kw),
        _rule("H1", rs, lambda p: seq(Hq(3), Zp(1, 2, p), par(Hq(), Hq())), lambda p: Xp(1, 2, p), p_, True, **kw),
        _rule("EU", rs, Hq, lambda: seq(Zp(1, 1, (z3(2), z3(2))), Xp(1, 1, (z3(2), z3(2))),
                                        Zp(1, 1, (z3(2), z3(2)))), (), **kw),
        _rule("H2", rs, lambda: seq(Hq(), Hq(3)), w, (), True, **kw),
        _rule("H2′", rs, lambda: Hq(2), lambda: seq(par(w(), Xp(0, 2)), par(cup(dim=3), w())), (), **kw),
        _rule("P1", rs, lambda: seq(Zp(1, 1, one_two), Xp(1, 1, one_two)),
              lambda: seq(Xp(1, 1, one_two), Zp(1, 1, one_two)), (), **kw),
    ]


# ---------------------------------------------------------------- catalogs

_BUILDERS = {
    "qubit-traditional": lambda: _traditional("qubit-traditional", ANGLE),
    "zx-full-extended": lambda: _extended("zx-full-extended", ANGLE, NNREAL),
    "clifford-t": lambda: [r.__class__(r.name, "clifford-t", r.lhs, r.rhs, r.params, r.scalar_exact)
                           for r in _traditional("clifford-t", PI4)] + _extended("clifford-t", PI4, DYADIC),
    "zw": _zw,
    "qutrit": _qutrit,
    "two-qubit-ct": _two_qubit,
    "derived-lemma": _derived,
}

ALIASES = {"rng^{r,s}_+": "rng^{r,s}₊", "rng^{r,s}_x": "rng^{r,s}×", "rng_1": "rng₁", "rng_-1": "rng₋₁",
           "nat^r_c": "natʳ_c", "nat^r_ec": "natʳ_εc", "ph^r": "phʳ"}


def catalog(rule_set: str) -> list:
    try:
        return _BUILDERS[rule_set]()
    except KeyError:
        raise UnknownRuleSet(rule_set) from None


def normalize_name(name: str) -> str:
    name = ALIASES.get(name, name)
    return name.replace("'", "′")


def get_rule(name: str, rule_set: str) -> RewriteRule:
    want = normalize_name(name)
    for r in catalog(rule_set):
        if r.name == want:
            return r
    if want == "B2-mutated":
        return mutated_b2()
    raise KeyError(f"no rule {name!r} in {rule_set}")


# ---------------------------------------------------------------- AD' side condition

def ad_prime_condition(lam, lam1, lam2, ka: int, kb: int, kg: int) -> bool:
    """lam e^{i g} == lam1 e^{i b} + lam2 e^{i a} in exact ring arithmetic (angles k pi/4)."""
    from .numerics import RingElement
    w = RingElement.omega
    lhs = RingElement.coerce(lam) * w(kg)
    rhs = RingElement.coerce(lam1) * w(kb) + RingElement.coerce(lam2) * w(ka)
    return lhs == rhs


def ad_prime_solution(lam1, lam2, ka: int, kb: int):
    """(lam, kg) with lam > 0 dyadic when the sum is a nonzero dyadic multiple of e^{i kg pi/4}, else None."""
    from .numerics import RingElement
    s = RingElement.coerce(lam1) * RingElement.omega(kb) + RingElement.coerce(lam2) * RingElement.omega(ka)
    for kg in range(8):
        t = s * RingElement.omega(-kg)
        c = t.coefficients()
        if not any(x.numerator for x in c[1:]) and c[0].to_fraction() > 0:
            return c[0].to_fraction(), kg
    return None
