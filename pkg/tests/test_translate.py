import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zxcalc.diagram import (CROSS, H, LAM, PI, TRI, WB, WHITE, X, Xq, Z, Phase, LambdaBox,
                            Triangle, par, seq)
from zxcalc.numerics import max_dev, scalar_equiv
from zxcalc.randgen import random_diagram
from zxcalc.semantics import interpret, to_complex
from zxcalc.translate import (TranslationError, decompose_lambda, decompose_triangle, half_box,
                              r_box, sqrt2_gadget, inv_sqrt2_gadget, zw_to_zx, zx_to_zw)
from zxcalc.numerics import RingElement

ZX_GENERATORS = [Z(1, 1, 0.7), Z(2, 3, Phase(1, 4)), Z(0, 2), Z(1, 0, 1.1), X(1, 1, 0.3),
                 X(2, 1, Phase(1, 2)), X(0, 3), H(), TRI(), TRI(-1), LAM(0.0), LAM(2.5)]
ZW_GENERATORS = [WB(), CROSS(), PI(), WHITE(1, 1, 1.0), WHITE(2, 1, -0.5 + 2j), WHITE(0, 3, 1j)]


def _scale(m):
    return max(1.0, float(np.abs(m).max()))


@pytest.mark.parametrize("d", ZX_GENERATORS, ids=repr)
def test_zx_generator_to_zw_exact(d):
    m = interpret(d)
    assert max_dev(interpret(zx_to_zw(d)), m) < 1e-12 * _scale(m)


@pytest.mark.parametrize("d", ZX_GENERATORS, ids=repr)
def test_zx_generator_round_trip(d):
    assert scalar_equiv(interpret(zw_to_zx(zx_to_zw(d))), interpret(d)) is not None


@pytest.mark.parametrize("d", ZW_GENERATORS, ids=repr)
def test_zw_generator_to_zx(d):
    t = zw_to_zx(d)
    assert t.calculus == "zx"
    assert scalar_equiv(interpret(t), interpret(d)) is not None


def test_scalar_gadgets():
    assert abs(interpret(sqrt2_gadget())[0, 0] - math.sqrt(2)) < 1e-12
    assert abs(interpret(inv_sqrt2_gadget())[0, 0] - 1 / math.sqrt(2)) < 1e-12


def test_r_box_ring_values():
    r = RingElement([1, -2, 0, 3], 2)
    assert scalar_equiv(interpret(r_box(r)), np.diag([1, r.to_complex()])) is not None


def test_clifford_t_mode_exact():
    d = seq(Z(1, 2, Phase(1, 4)), par(X(1, 1, Phase(3, 4)), H()), Z(2, 1))
    w = zx_to_zw(d, mode="clifford-t")
    assert max_dev(to_complex(interpret(w, exact=True)), interpret(d)) < 1e-12
    back = zw_to_zx(w, mode="clifford-t")
    assert scalar_equiv(interpret(back), interpret(d)) is not None


def test_clifford_t_mode_rejects_off_grid():
    with pytest.raises(TranslationError):
        zx_to_zw(Z(1, 1, Phase(1, 3)), mode="clifford-t")
    with pytest.raises(TranslationError):
        zx_to_zw(LAM(Fraction(1, 3)), mode="clifford-t")
    with pytest.raises(TranslationError):
        zx_to_zw(Z(1, 1), mode="nope")


def test_wrong_calculus_or_dimension():
    with pytest.raises(TranslationError):
        zx_to_zw(WB())
    with pytest.raises(TranslationError):
        zx_to_zw(Xq(1, 1, 1, 1))


def test_half_box():
    assert scalar_equiv(interpret(half_box()), np.diag([1, 0.5])) is not None


@pytest.mark.parametrize("lam", [0, Fraction(1, 2), 1, Fraction(3, 8), 2, Fraction(13, 4)])
@pytest.mark.parametrize("mode", ["full", "clifford-t"])
def test_decompose_lambda(lam, mode):
    d = decompose_lambda(lam, mode)
    assert not any(isinstance(k, LambdaBox) for k in d.nodes.values())
    assert scalar_equiv(interpret(d), np.diag([1, float(lam)])) is not None


def test_decompose_lambda_float():
    assert scalar_equiv(interpret(decompose_lambda(0.3)), np.diag([1, 0.3])) is not None


@pytest.mark.parametrize("power", [1, -1])
def test_decompose_triangle(power):
    d = decompose_triangle(power)
    assert not any(isinstance(k, Triangle) for k in d.nodes.values())
    assert all(k.phases[0].pi4() is not None for k in d.nodes.values())
    assert scalar_equiv(interpret(d), interpret(TRI(power))) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_round_trip(seed):
    d = random_diagram(seed)
    m = interpret(d)
    w = zx_to_zw(d)
    assert max_dev(interpret(w), m) < 1e-12 * _scale(m)
    assert scalar_equiv(interpret(zw_to_zx(w)), m) is not None
