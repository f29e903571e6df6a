import random

import pytest
from hypothesis import given, settings, strategies as st

from zxcalc.diagram import H, Phase, X, Z, Zq, empty, par, seq, structurally_equal, wire, WHITE
from zxcalc.numerics import max_dev, scalar_equiv
from zxcalc.randgen import RandomConfig, random_diagram
from zxcalc.rewrite import (PASSES, EmbeddingInvalid, apply_at, find_matches, measure, pattern_of,
                            simplify, step_bound)
from zxcalc.rules import RULE_SETS, catalog, get_rule, sample_params
from zxcalc.semantics import interpret

S1 = get_rule("S1", "qubit-traditional")


def test_spider_fusion_match_and_apply():
    d = seq(Z(1, 1, Phase(1, 4)), Z(1, 1, Phase(1, 2)))
    ms = find_matches(d, S1)
    assert len(ms) == 1
    r = apply_at(d, S1, ms[0])
    assert len(r.nodes) == 1
    (k,) = r.nodes.values()
    assert k.phases == (Phase(3, 4),)
    assert max_dev(interpret(r), interpret(d)) < 1e-12


def test_identity_removal():
    s2 = get_rule("S2", "qubit-traditional")
    d = seq(H(), Z(1, 1), H())
    (m,) = find_matches(d, s2)
    r = apply_at(d, s2, m)
    assert len(r.nodes) == 2
    assert scalar_equiv(interpret(r), interpret(d)) is not None


def test_hopf_disconnects():
    hopf = get_rule("hopf", "derived-lemma")
    d = seq(Z(1, 2), X(2, 1))
    (m,) = find_matches(d, hopf)
    r = apply_at(d, hopf, m)
    assert scalar_equiv(interpret(r), interpret(d)) is not None


def test_no_matches_on_empty():
    assert find_matches(empty(), S1) == []


def test_stale_embedding_rejected():
    d = seq(Z(1, 1, Phase(1, 4)), Z(1, 1, Phase(1, 2)))
    (m,) = find_matches(d, S1)
    with pytest.raises(EmbeddingInvalid):
        apply_at(seq(Z(1, 1), X(1, 1)), S1, m)


def test_matches_are_deterministic():
    d = seq(*[Z(1, 1, Phase(k, 4)) for k in range(4)])
    a = [m.host_nodes for m in find_matches(d, S1)]
    assert a == [m.host_nodes for m in find_matches(d, S1)]
    assert len(a) == 3


def test_every_match_application_is_sound():
    # each matchable rule, applied wherever it matches one of its own sampled instances
    rng = random.Random(0)
    for rs in RULE_SETS:
        for rule in catalog(rs):
            if pattern_of(rule) is None:
                continue
            lhs, _ = rule.build(**sample_params(rule, rng, 5))
            ms = find_matches(lhs, rule)
            assert ms, (rs, rule.name)
            for m in ms[:2]:
                r = apply_at(lhs, rule, m)
                assert scalar_equiv(interpret(r), interpret(lhs)) is not None, (rs, rule.name)


def test_simplify_examples():
    d = seq(*[Z(1, 1, Phase(k, 4)) for k in range(5)])
    assert len(simplify(d).nodes) == 1
    hh = simplify(seq(H(), H()))
    assert not hh.nodes
    w = simplify(seq(WHITE(1, 1, 2.0), WHITE(1, 1, 3.0)))
    assert len(w.nodes) == 1 and max_dev(interpret(w), interpret(seq(WHITE(1, 1, 6.0)))) < 1e-12
    q = simplify(seq(Zq(1, 1, 1, 0), Zq(1, 1, 2, 2)))
    assert len(q.nodes) <= 1


def test_cnot_is_a_fixpoint():
    from zxcalc.gallery import Circuit
    c = Circuit(2).cx(0, 1).build()
    assert structurally_equal(simplify(c), c)


def test_unknown_pass():
    with pytest.raises(ValueError):
        simplify(wire(), passes=["nope"])


def test_pass_subset_and_trace():
    trace = []
    simplify(seq(Z(1, 1, Phase(1, 4)), Z(1, 1, Phase(1, 4)), H(), H()), passes=["fusion"], trace=trace)
    assert set(trace) == {"fusion"}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_simplify_preserves_semantics(seed, dim):
    d = random_diagram(seed, RandomConfig(dim=dim, max_nodes=6 if dim == 2 else 5))
    trace = []
    s = simplify(d, trace=trace)
    assert len(s.nodes) <= len(d.nodes)
    assert measure(s) <= measure(d)
    assert len(trace) <= step_bound(d)
    assert scalar_equiv(interpret(s), interpret(d)) is not None
    assert simplify(s, trace=(t2 := [])) is not None and t2 == []


def test_passes_constant():
    assert set(PASSES) >= {"fusion", "identity", "hopf"}


def test_par_blocks_fuse_independently():
    d = par(seq(Z(1, 1, Phase(1, 2)), Z(1, 1, Phase(1, 2))), seq(X(1, 1), X(1, 1)))
    s = simplify(d)
    assert len(s.nodes) <= 1
    assert scalar_equiv(interpret(s), interpret(d)) is not None
