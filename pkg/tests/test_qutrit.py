import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zxcalc.numerics import scalar_equiv
from zxcalc.qutrit import (ZERO, CZ, SUM, S, GSLCDiagram, Hg, VertexError, WeightedGraph,
                           apply_clifford_generator, apply_local_comp_with_corrections, c1, effect,
                           enumerate_c1, equal_states, from_circuit, gate_matrix, graph_state_vector,
                           is_rgslc, local_comp, normal_form, oracle_equal, scale_vertex,
                           state_vector, to_rgslc, Form1, Form2, Form3)
from zxcalc.randgen import random_qutrit_gates, random_stabilizer_pair

seeds = st.integers(0, 10 ** 6)


def test_c1_order_and_partition():
    forms = [f for f, _ in enumerate_c1()]
    assert len(forms) == 216
    kinds = [type(f) for f in forms]
    assert (kinds.count(Form1), kinds.count(Form2), kinds.count(Form3)) == (81, 108, 27)


def test_c1_forms_pairwise_inequivalent():
    mats = [m for _, m in enumerate_c1()]
    for a, b in itertools.combinations(range(len(mats)), 2):
        assert scalar_equiv(mats[a], mats[b]) is None


def test_c1_multiplication_table():
    t = c1()
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randrange(216), rng.randrange(216)
        assert scalar_equiv(t.mats[t.mul[a, b]], t.mats[a] @ t.mats[b]) is not None
        assert t.mul[a, t.inv[a]] == 0


def test_normal_form_is_projective():
    u = c1().mats[17]
    assert normal_form(1j * u) == normal_form(u) == c1().forms[17]


def test_local_complementation_formula():
    g = WeightedGraph.from_matrix([[0, 1, 2, 0], [1, 0, 0, 1], [2, 0, 0, 1], [0, 1, 1, 0]])
    for v, a in itertools.product(range(4), (1, 2)):
        h = local_comp(g, v, a).matrix()
        G = g.matrix()
        for j, k in itertools.permutations(range(4), 2):
            assert h[j, k] == (G[j, k] + a * G[v, j] * G[v, k]) % 3
        assert not np.diag(h).any()


def test_scale_vertex():
    g = WeightedGraph.from_matrix([[0, 1], [1, 0]])
    assert scale_vertex(g, 0, 2).matrix()[0, 1] == 2
    with pytest.raises(ValueError):
        scale_vertex(g, 0, 3)


def test_bad_graphs_and_vertices():
    with pytest.raises(ValueError):
        WeightedGraph.from_matrix([[0, 1], [2, 0]])
    with pytest.raises(VertexError):
        local_comp(WeightedGraph.empty(2), 5, 1)


def test_graph_state_vector_two_vertices():
    v = graph_state_vector(WeightedGraph.from_matrix([[0, 1], [1, 0]])).ravel()
    w = np.exp(2j * np.pi / 3)
    want = np.array([w ** (j * k) for j in range(3) for k in range(3)])
    assert scalar_equiv(v, want) is not None


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_circuit_matches_gate_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    gates = random_qutrit_gates(rng, n, 3 * n)
    vec = np.zeros((3 ** n, 1), dtype=complex)
    vec[0] = 1
    for g in gates:
        vec = gate_matrix(g, n) @ vec
    assert scalar_equiv(state_vector(from_circuit(n, gates)), vec) is not None


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_local_comp_with_corrections_preserves_state(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = from_circuit(n, random_qutrit_gates(rng, n, 3 * n))
    e = apply_local_comp_with_corrections(d, rng.randrange(n), rng.choice((1, 2)))
    assert scalar_equiv(state_vector(e), state_vector(d)) is not None


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_rgslc_reduction(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    d = from_circuit(n, random_qutrit_gates(rng, n, 3 * n))
    r = to_rgslc(d)
    assert is_rgslc(r)
    assert scalar_equiv(state_vector(r), state_vector(d)) is not None


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_equal_states_matches_oracle(seed):
    a, b, _ = random_stabilizer_pair(seed)
    assert equal_states(a, b) == oracle_equal(a, b)


def test_equal_states_symmetric_and_reflexive():
    for s in range(20):
        a, b, _ = random_stabilizer_pair(s)
        assert equal_states(a, a)
        assert equal_states(a, b) == equal_states(b, a)


def test_distinct_simple_states():
    plus = from_circuit(1, [Hg(0)])
    zero = from_circuit(1, [])
    assert not equal_states(plus, zero)
    assert equal_states(from_circuit(1, [S(0)]), zero)


def test_effect_to_zero():
    d = from_circuit(1, [])
    assert apply_clifford_generator(d, effect(0, 1)) is ZERO
    assert equal_states(ZERO, ZERO) and not equal_states(ZERO, d)


def test_vertex_count_mismatch():
    with pytest.raises(ValueError):
        equal_states(from_circuit(1, []), from_circuit(2, []))


def test_two_qutrit_entangler():
    bell = from_circuit(2, [Hg(0), SUM(0, 1)])
    alt = from_circuit(2, [Hg(0), Hg(1), CZ(0, 1, 1), Hg(1), Hg(1), Hg(1)])
    assert equal_states(bell, alt) == oracle_equal(bell, alt) == True  # noqa: E712


def test_graph_state_constructor():
    g = GSLCDiagram.graph_state(WeightedGraph.empty(3))
    assert g.ops == (0, 0, 0) and g.n == 3
