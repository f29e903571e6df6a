"""Acceptance criteria, one check each. Run directly or under pytest; both print a PASS/FAIL line per criterion."""
import itertools
import math
import random
import time

import numpy as np

from zxcalc import gallery
from zxcalc.diagram import CROSS, H, LAM, PI, TRI, WB, WHITE, X, Z, Phase
from zxcalc.euler import (AngleTriple, DegenerateDecomposition, GeneralTriple, color_swap_general,
                          xzx_matrix, zxz_matrix, zxz_to_xzx)
from zxcalc.numerics import RingElement, max_dev, scalar_equiv
from zxcalc.qutrit import Form1, Form2, Form3, enumerate_c1, equal_states, oracle_equal
from zxcalc.randgen import RandomConfig, random_diagram, random_stabilizer_pair
from zxcalc.rewrite import simplify, step_bound
from zxcalc.rules import catalog, mutated_b2, verify_rule
from zxcalc.semantics import interpret, to_complex
from zxcalc.translate import zw_to_zx, zx_to_zw

RESULTS = {}


def record(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _ang_eq(a, b, tol=1e-9):
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d) < tol


# ---------------------------------------------------------------- 1

SWEEP = {"qubit-traditional": 10, "zx-full-extended": 12, "clifford-t": None, "zw": None,
         "qutrit": 12, "two-qubit-ct": None}


def check_rule_sweep():
    t0 = time.perf_counter()
    failed, total, sizes = [], 0, {}
    for rs, want in SWEEP.items():
        rules = catalog(rs)
        sizes[rs] = len(rules)
        if want is not None and len(rules) != want:
            failed.append(f"{rs} has {len(rules)} rules")
        for r in rules:
            total += 1
            if not verify_rule(r, samples=100, seed=0, tol=1e-9).passed:
                failed.append(f"{rs}/{r.name}")
    dt = time.perf_counter() - t0
    neg = not verify_rule(mutated_b2(), samples=100, seed=0, tol=1e-9).passed
    ok = not failed and dt < 60 and neg
    return ok, (f"{total} rules x 100 samples in {dt:.1f}s, sizes {sizes}, "
                f"mutated B2 rejected={neg}" + (f", failures {failed}" if failed else ""))


# ---------------------------------------------------------------- 2

def check_c1():
    t0 = time.perf_counter()
    items = enumerate_c1()
    kinds = [type(f) for f, _ in items]
    split = (kinds.count(Form1), kinds.count(Form2), kinds.count(Form3))
    mats = [m for _, m in items]
    clash = sum(scalar_equiv(mats[a], mats[b]) is not None
                for a, b in itertools.combinations(range(len(mats)), 2))
    dt = time.perf_counter() - t0
    ok = len(items) == 216 and split == (81, 108, 27) and clash == 0 and dt < 10
    return ok, f"{len(items)} classes split {split}, {clash} equivalent pairs, {dt:.2f}s"


# ---------------------------------------------------------------- 3

def _z_z1(a, b, g):
    z = math.cos(b / 2) * math.cos((a + g) / 2) + 1j * math.sin(b / 2) * math.cos((a - g) / 2)
    z1 = math.cos(b / 2) * math.sin((a + g) / 2) - 1j * math.sin(b / 2) * math.sin((a - g) / 2)
    return z, z1


def check_euler():
    rng = random.Random(2024)
    bad = 0
    for _ in range(1000):
        t = AngleTriple(*(rng.uniform(0, 2 * math.pi) for _ in range(3)))
        bad += scalar_equiv(xzx_matrix(zxz_to_xzx(t)), zxz_matrix(t), 1e-9) is None
    special = {"l1=l3": 0, "l1l3=-1": 0, "a1=g1": 0, "a1=-g1": 0}
    for _ in range(200):
        l1, l2 = (complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2))
        try:
            s = color_swap_general(GeneralTriple(l1, l2, l1))
            special["l1=l3"] += abs(s.l1 - s.l3) > 1e-9 * max(1, abs(s.l1))
            s = color_swap_general(GeneralTriple(l1, l2, -1 / l1))
            special["l1l3=-1"] += abs(s.l1 * s.l3 + 1) > 1e-9 * max(1, abs(s.l1 * s.l3))
        except DegenerateDecomposition:
            pass
        a, b = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        t = zxz_to_xzx(AngleTriple(a, b, a))
        special["a1=g1"] += not _ang_eq(t.alpha, t.gamma)
        z, z1 = _z_z1(a, b, -a)
        if abs(z) > 1e-6 and abs(z1) > 1e-6:
            t = zxz_to_xzx(AngleTriple(a, b, -a))
            special["a1=-g1"] += not _ang_eq(t.alpha, math.pi + t.gamma)
    ok = bad == 0 and not any(special.values())
    return ok, f"{bad}/1000 matrix mismatches, special-case violations {special}"


# ---------------------------------------------------------------- 4

GENERATORS = [Z(1, 1, 0.7), Z(2, 3, Phase(1, 4)), Z(0, 2), X(1, 1, 0.3), X(2, 1, Phase(1, 2)),
              X(0, 3), H(), TRI(), TRI(-1), LAM(0.0), LAM(2.5)]


def check_translation():
    bad1 = bad2 = 0
    ds = GENERATORS + [random_diagram(s, RandomConfig(max_nodes=6)) for s in range(100)]
    for d in ds:
        m = interpret(d)
        w = zx_to_zw(d)
        bad1 += max_dev(interpret(w), m) > 1e-12 * max(1.0, float(np.abs(m).max()))
        bad2 += scalar_equiv(interpret(zw_to_zx(w)), m, 1e-9) is None
    zw_bad = sum(scalar_equiv(interpret(zw_to_zx(g)), interpret(g)) is None
                 for g in (WB(), CROSS(), PI(), WHITE(2, 1, 0.5 - 1j)))
    ok = bad1 == bad2 == zw_bad == 0
    return ok, (f"{len(ds)} diagrams: {bad1} zx->zw mismatches (1e-12), {bad2} round-trip failures (1e-9); "
                f"{zw_bad} ZW generator failures")


# ---------------------------------------------------------------- 5

def check_ring():
    bad = 0
    for s in range(200):
        d = random_diagram(s, RandomConfig(phases="pi4"))
        e = interpret(d, exact=True)
        if not all(isinstance(x, RingElement) for x in e.ravel()):
            bad += 1
            continue
        m = interpret(d)
        bad += max_dev(to_complex(e), m) > 1e-12 * max(1.0, float(np.abs(m).max()))
    return bad == 0, f"{bad}/200 pi/4 diagrams failed exact-ring reconstruction"


# ---------------------------------------------------------------- 6

def check_qutrit_equality():
    t0 = time.perf_counter()
    dis = pos = 0
    for s in range(200):
        a, b, _ = random_stabilizer_pair(s, n_max=5)
        o = oracle_equal(a, b)
        pos += o
        dis += equal_states(a, b) != o
    dt = time.perf_counter() - t0
    ok = dis == 0 and dt < 120 and 0 < pos < 200
    return ok, f"{dis} disagreements on 200 pairs ({pos} equal, {200 - pos} unequal), {dt:.2f}s"


# ---------------------------------------------------------------- 7

def check_gallery():
    parts = {}
    parts["toffoli-triangle"] = gallery.check_entry("toffoli-triangle") is not None
    parts["uma"] = gallery.check_entry("uma") is not None
    sb = [k for k in gallery.SB_RELATIONS if gallery.check_entry(f"sb-relation-{k}") is None]
    parts["17 SB relations"] = len(gallery.SB_RELATIONS) == 17 and not sb
    parts["supplementarity"] = all(gallery.verify_supplementarity(n, a).passed
                                   for n in (1, 2, 3, 4) for a in (0.0, 0.4, 1.3, math.pi))
    rng = random.Random(7)
    done = ghz_bad = 0
    while done < 100:
        ls = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(3)]
        try:
            x = gallery.ghz_normalize(*ls)
        except gallery.PreconditionError:
            continue
        done += 1
        ghz_bad += gallery.check_equiv(gallery.ghz_lhs(*ls), gallery.ghz_rhs(*x), 1e-9) is None
    parts["ghz x100"] = ghz_bad == 0
    return all(parts.values()), ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items())


# ---------------------------------------------------------------- 8

def check_simplify():
    sem = grow = bound = 0
    for s in range(200):
        d = random_diagram(s, RandomConfig(dim=2 if s % 4 else 3, max_nodes=6 if s % 4 else 5))
        trace = []
        out = simplify(d, trace=trace)
        sem += scalar_equiv(interpret(out), interpret(d), 1e-9) is None
        grow += len(out.nodes) > len(d.nodes)
        again = []
        simplify(out, trace=again)
        bound += len(trace) > step_bound(d) or bool(again)
    ok = sem == grow == bound == 0
    return ok, f"200 diagrams: {sem} semantic changes, {grow} node-count increases, {bound} bound/fixpoint failures"


CHECKS = {1: check_rule_sweep, 2: check_c1, 3: check_euler, 4: check_translation, 5: check_ring,
          6: check_qutrit_equality, 7: check_gallery, 8: check_simplify}


def _run(n):
    ok, detail = CHECKS[n]()
    assert record(n, ok, detail), detail


def test_criterion_1_rule_soundness():
    _run(1)


def test_criterion_2_qutrit_local_clifford_group():
    _run(2)


def test_criterion_3_euler():
    _run(3)


def test_criterion_4_translation():
    _run(4)


def test_criterion_5_clifford_t_ring():
    _run(5)


def test_criterion_6_qutrit_equality():
    _run(6)


def test_criterion_7_gallery():
    _run(7)


def test_criterion_8_simplify():
    _run(8)


if __name__ == "__main__":
    for n in CHECKS:
        try:
            _run(n)
        except AssertionError:
            pass
