import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zxcalc.diagram import (CROSS, H, LAM, PI, TRI, WB, WHITE, X, Xq, Z, Zq, Phase, cap, par, seq,
                            swap, wire)
from zxcalc.numerics import max_dev
from zxcalc.randgen import RandomConfig, random_diagram
from zxcalc.semantics import ExactnessError, generator_matrix, interpret, to_complex

S2 = 1 / math.sqrt(2)
HAD = np.array([[1, 1], [1, -1]]) * S2
W3 = cmath.exp(2j * math.pi / 3)
HQ = np.array([[W3 ** (j * k) for j in range(3)] for k in range(3)]) / math.sqrt(3)


def close(a, b, tol=1e-12):
    return max_dev(a, b) < tol


def test_qubit_generators():
    a = 0.37
    assert close(interpret(Z(1, 1, a)), np.diag([1, cmath.exp(1j * a)]))
    assert close(interpret(X(1, 1, a)), HAD @ np.diag([1, cmath.exp(1j * a)]) @ HAD)
    assert close(interpret(H()), HAD)
    assert close(interpret(TRI()), [[1, 1], [0, 1]])
    assert close(interpret(TRI(-1)), [[1, -1], [0, 1]])
    assert close(interpret(LAM(0.25)), np.diag([1, 0.25]))
    ghz = np.zeros((8, 1)); ghz[0] = ghz[7] = 1
    assert close(interpret(Z(0, 3)), ghz)
    assert interpret(Z(2, 3)).shape == (8, 4)


def test_big_endian_ordering():
    # |0> on wire 0 and |1> on wire 1 is basis index 1
    d = par(X(0, 1), X(0, 1, Phase(1)))
    v = interpret(d).ravel()
    assert np.argmax(np.abs(v)) == 1


def test_zw_generators():
    w = interpret(WB())
    assert close(w[:, 0], [0, 1, 1, 0]) and close(w[:, 1], [1, 0, 0, 0])
    assert close(interpret(PI()), [[0, 1], [1, 0]])
    assert close(interpret(CROSS()), np.diag([1, 1, 1, -1])[[0, 2, 1, 3]])
    wh = interpret(WHITE(1, 2, 3.0))
    assert close(wh[:, 0], [1, 0, 0, 0]) and close(wh[:, 1], [0, 0, 0, 3])


def test_qutrit_generators():
    z = interpret(Zq(1, 1, 1, 2))
    assert close(z, np.diag([1, W3, W3 ** 2]))
    assert close(interpret(H(1, dim=3)), HQ)
    x = interpret(Xq(1, 1, 1, 2))
    assert close(x, HQ @ z @ HQ.conj().T)
    assert close(interpret(H(4, dim=3)), np.eye(3))


def test_cap_and_swap():
    assert close(interpret(cap()).ravel(), [1, 0, 0, 1])
    assert close(interpret(swap()), np.eye(4)[[0, 2, 1, 3]])
    assert close(interpret(seq(swap(), swap())), np.eye(4))


def test_generator_matrix_agrees_with_interpret():
    from zxcalc.diagram import ZSpider
    k = ZSpider((Phase(1, 4),))
    assert close(generator_matrix(k, 2, 1), interpret(Z(2, 1, Phase(1, 4))))


def test_exact_mode():
    m = interpret(seq(Z(1, 1, Phase(1, 4)), H(), LAM(Fraction(3, 2))), exact=True)
    assert m.dtype == object
    want = interpret(seq(Z(1, 1, Phase(1, 4)), H(), LAM(1.5)))
    assert close(to_complex(m), want)
    with pytest.raises(ExactnessError):
        interpret(Z(1, 1, Phase(1, 3)), exact=True)
    with pytest.raises(ExactnessError):
        interpret(LAM(Fraction(1, 3)), exact=True)


def test_empty_and_wire():
    assert close(interpret(wire(0)), [[1]])
    assert close(interpret(wire(2)), np.eye(4))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_contraction_order_independent(seed):
    d = random_diagram(seed)
    assert max_dev(interpret(d), interpret(d, order="sequential")) < 1e-9 * max(1, np.abs(interpret(d)).max())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_exact_matches_float(seed):
    d = random_diagram(seed, RandomConfig(phases="pi4"))
    assert max_dev(to_complex(interpret(d, exact=True)), interpret(d)) < 1e-12 * max(1, np.abs(interpret(d)).max())
