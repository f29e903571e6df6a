import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zxcalc import gallery
from zxcalc.diagram import DiagramError, Triangle, X, Z
from zxcalc.gallery import (Circuit, PreconditionError, SB_RELATIONS, UnknownEntry, ccx_matrix,
                            check_entry, check_equiv, ghz_lhs, ghz_normalize, ghz_rhs,
                            normalize_from_products, supplementarity_product, toffoli_triangle,
                            verify_supplementarity)
from zxcalc.numerics import scalar_equiv
from zxcalc.semantics import interpret

S2 = 1 / math.sqrt(2)


def test_single_qubit_gates():
    h = np.array([[1, 1], [1, -1]]) * S2
    assert scalar_equiv(interpret(Circuit(1).h(0).build()), h) is not None
    assert scalar_equiv(interpret(Circuit(1).t(0).build()), np.diag([1, cmath.exp(1j * math.pi / 4)])) is not None
    assert scalar_equiv(interpret(Circuit(1).x(0).build()), [[0, 1], [1, 0]]) is not None


def test_cnot_and_cz():
    cx = np.eye(4)[[0, 1, 3, 2]]
    assert scalar_equiv(interpret(Circuit(2).cx(0, 1).build()), cx) is not None
    assert scalar_equiv(interpret(Circuit(2).cz(0, 1).build()), np.diag([1, 1, 1, -1])) is not None


def test_toffoli_forms():
    assert check_entry("toffoli-circuit") is not None
    assert check_entry("toffoli-triangle") is not None
    assert any(isinstance(k, Triangle) for k in toffoli_triangle().nodes.values())
    assert check_entry("multi-toffoli") is not None


def test_and_gate():
    assert check_entry("and") is not None


def test_uma_pair():
    assert check_entry("uma") is not None
    v1 = np.abs(interpret(gallery.uma_v1()))
    v1 /= v1.max()
    assert np.allclose(v1 @ v1.T, np.eye(8)) and set(np.round(v1.ravel(), 9)) == {0, 1}


def test_w_states():
    for name in ("w-state-triangle", "w-state-phase", "w-state"):
        assert check_entry(name) is not None, name
    assert not any(isinstance(k, Triangle) for k in gallery.w_state_phase().nodes.values())


@pytest.mark.parametrize("k", sorted(SB_RELATIONS))
def test_sb_relations(k):
    assert len(SB_RELATIONS) == 17
    assert check_entry(f"sb-relation-{k}") is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_supplementarity(n):
    for alpha in (0.0, 0.3, math.pi / 2, 2.1):
        assert verify_supplementarity(n, alpha).passed


def test_supplementarity_product_identity():
    for n in range(1, 7):
        p, q = supplementarity_product(n, 0.77)
        assert abs(p - q) < 1e-9


def test_supplementarity_range():
    with pytest.raises(ValueError):
        verify_supplementarity(7, 0.1)


def test_ghz_lhs_matrix():
    l1, l2, l3 = 0.5, 1j, 2.0
    want = np.array([[1 + l1 * l2 * l3, 0], [0, l2 + l1 * l3], [0, l1 + l2 * l3], [l3 + l1 * l2, 0]])
    assert scalar_equiv(interpret(ghz_lhs(l1, l2, l3)), want) is not None


def test_ghz_rhs_matrix():
    x = (1.5j, -0.5, 2 + 1j)
    want = np.zeros((4, 2), dtype=complex)
    for o1 in (0, 1):
        for o2 in (0, 1):
            i = o1 ^ o2
            want[2 * o1 + o2, i] = x[0] ** i * x[1] ** o1 * x[2] ** o2
    assert scalar_equiv(interpret(ghz_rhs(*x)), want) is not None


cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(cplx, cplx, cplx)
def test_ghz_normal_form(l1, l2, l3):
    try:
        x = ghz_normalize(l1, l2, l3)
    except PreconditionError:
        return
    d = 1 + l1 * l2 * l3
    assert max(abs(d), abs(l2 + l1 * l3), abs(l1 + l2 * l3), abs(l3 + l1 * l2)) < 1e6
    assert check_equiv(ghz_lhs(l1, l2, l3), ghz_rhs(*x), 1e-7) is not None


def test_ghz_trivial_and_degenerate():
    assert np.allclose(ghz_normalize(1, 1, 1), (1, 1, 1))
    with pytest.raises(PreconditionError):
        ghz_normalize(1, -1, 1)
    with pytest.raises(PreconditionError):
        normalize_from_products(1, 1, 0)


def test_ghz_sign_branch():
    # products of the triangle-broken instance; both signs solve, the principal root is returned
    m13, m12, m23 = -math.sqrt(2) + 1j, 1 - math.sqrt(2) * 1j, -1j
    x1, x2, x3 = normalize_from_products(m13, m12, m23)
    assert abs(x1 * x3 - m13) < 1e-12 and abs(x1 * x2 - m12) < 1e-12 and abs(x2 * x3 - m23) < 1e-12
    assert abs(abs(x1) - math.sqrt(3)) < 1e-12


def test_registry():
    assert "uma" in gallery.names()
    with pytest.raises(UnknownEntry):
        gallery.build("nope")
    with pytest.raises(UnknownEntry):
        check_entry("nope")


def test_check_equiv_arity():
    with pytest.raises(DiagramError):
        check_equiv(Z(1, 1), X(1, 2))


def test_ccx_matrix():
    m = ccx_matrix(2)
    assert m[7, 6] == 1 and m[6, 7] == 1 and m[0, 0] == 1


def test_all_entries_pass():
    bad = [n for n in gallery.names() if check_entry(n) is None]
    assert bad == []
