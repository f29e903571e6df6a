import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from zxcalc.euler import (AngleTriple, DegenerateDecomposition, GeneralTriple, color_swap_general,
                          xzx_matrix, zxz_matrix, zxz_to_xzx)
from zxcalc.numerics import scalar_equiv

angle = st.floats(0, 2 * math.pi, allow_nan=False)
cplx = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
HALF_PI = math.pi / 2


def ang_eq(a, b, tol=1e-9):
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d) < tol


def test_identity():
    t = zxz_to_xzx(AngleTriple(0, 0, 0))
    assert (t.alpha, t.beta, t.gamma) == (0, 0, 0)


def test_hadamard_euler():
    t = zxz_to_xzx(AngleTriple(HALF_PI, HALF_PI, HALF_PI))
    for v in (t.alpha, t.beta, t.gamma):
        assert ang_eq(v, HALF_PI)
    h = np.array([[1, 1], [1, -1]])
    assert scalar_equiv(xzx_matrix(t), h) is not None


def test_random_triples():
    rng = random.Random(0)
    for _ in range(300):
        t = AngleTriple(*(rng.uniform(0, 2 * math.pi) for _ in range(3)))
        assert scalar_equiv(xzx_matrix(zxz_to_xzx(t)), zxz_matrix(t)) is not None


@pytest.mark.parametrize("t", [AngleTriple(0.4, 0, 1.0), AngleTriple(0.4, math.pi, 0.4),
                               AngleTriple(1.0, math.pi, 1.0 + math.pi), AngleTriple(0, math.pi, 0)])
def test_degenerate_branches(t):
    assert scalar_equiv(xzx_matrix(zxz_to_xzx(t)), zxz_matrix(t)) is not None


@given(angle, angle)
def test_equal_outer_angles(a, b):
    t = zxz_to_xzx(AngleTriple(a, b, a))
    assert ang_eq(t.alpha, t.gamma)


def _z_z1(a, b, g):
    z = math.cos(b / 2) * math.cos((a + g) / 2) + 1j * math.sin(b / 2) * math.cos((a - g) / 2)
    z1 = math.cos(b / 2) * math.sin((a + g) / 2) - 1j * math.sin(b / 2) * math.sin((a - g) / 2)
    return z, z1


@given(angle, angle)
def test_opposite_outer_angles(a, b):
    # the relation is a statement about the generic formulas, so z, z1 must not vanish
    z, z1 = _z_z1(a, b, -a)
    assume(abs(z) > 1e-6 and abs(z1) > 1e-6)
    t = zxz_to_xzx(AngleTriple(a, b, -a))
    assert ang_eq(t.alpha, math.pi + t.gamma)
    assert scalar_equiv(xzx_matrix(t), zxz_matrix(AngleTriple(a, b, -a))) is not None


@given(cplx, cplx, cplx)
def test_general_colour_swap(l1, l2, l3):
    t = GeneralTriple(l1, l2, l3)
    try:
        s = color_swap_general(t)
    except DegenerateDecomposition:
        return
    lhs = zxz_matrix(t)
    assume(np.abs(lhs).max() > 1e-6 and abs(np.linalg.det(lhs)) > 1e-9)
    assert scalar_equiv(xzx_matrix(s), lhs, 1e-7) is not None


@given(cplx, cplx)
def test_general_symmetric(l1, l2):
    try:
        s = color_swap_general(GeneralTriple(l1, l2, l1))
    except DegenerateDecomposition:
        return
    assert abs(s.l1 - s.l3) < 1e-9 * max(1, abs(s.l1))


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=5, allow_nan=False, allow_infinity=False), cplx)
def test_general_product_minus_one(l1, l2):
    try:
        s = color_swap_general(GeneralTriple(l1, l2, -1 / l1))
    except DegenerateDecomposition:
        return
    assert abs(s.l1 * s.l3 + 1) < 1e-9 * max(1, abs(s.l1 * s.l3))


def test_degenerate_general_raises():
    # S = 0 when l2 = -1 and l1 = l3 = 0
    with pytest.raises(DegenerateDecomposition):
        color_swap_general(GeneralTriple(0, -1, 0))


def test_root_choice_keeps_sigma2_finite():
    s = color_swap_general(GeneralTriple(0, 1, 0))
    assert scalar_equiv(xzx_matrix(s), zxz_matrix(GeneralTriple(0, 1, 0))) is not None


@given(angle, angle, angle)
def test_general_agrees_with_angles(a, b, g):
    t = AngleTriple(a, b, g)
    try:
        s = color_swap_general(GeneralTriple(cmath.exp(1j * a), cmath.exp(1j * b), cmath.exp(1j * g)))
    except DegenerateDecomposition:
        return
    z, z1 = _z_z1(a, b, g)
    assume(abs(z) > 1e-6 and abs(z1) > 1e-6)
    u = zxz_to_xzx(t)
    sig = [cmath.phase(x) for x in (s.l1, s.l2, s.l3)]
    assert all(abs(abs(x) - 1) < 1e-6 for x in (s.l1, s.l2, s.l3))
    # the root choice selects one of two solutions related by (a + pi, -b, g + pi)
    direct = all(ang_eq(x, y, 1e-6) for x, y in zip(sig, (u.alpha, u.beta, u.gamma)))
    other = all(ang_eq(x, y, 1e-6) for x, y in zip(sig, (u.alpha + math.pi, -u.beta, u.gamma + math.pi)))
    assert direct or other
