import cmath
import itertools
import math
import random
from fractions import Fraction

import pytest

from zxcalc.diagram import Phase, Z
from zxcalc.numerics import scalar_equiv
from zxcalc.rules import (ANGLE, RULE_SETS, DomainError, RewriteRule, UnknownRuleSet,
                          ad_prime_condition, ad_prime_solution, catalog, get_rule, mutated_b2,
                          sample_params, verify_rule)
from zxcalc.semantics import interpret

EXPECTED_COUNTS = {"qubit-traditional": 10, "zx-full-extended": 12, "qutrit": 12}


@pytest.mark.parametrize("name,n", sorted(EXPECTED_COUNTS.items()))
def test_catalog_sizes(name, n):
    assert len(catalog(name)) == n


def test_catalog_names_unique():
    for s in RULE_SETS:
        names = [r.name for r in catalog(s)]
        assert len(names) == len(set(names)), s
        assert all(r.rule_set == s for r in catalog(s))


@pytest.mark.parametrize("rule_set", RULE_SETS)
def test_rules_sound_quick(rule_set):
    bad = [r.name for r in catalog(rule_set) if not verify_rule(r, samples=20, seed=3).passed]
    assert bad == []


def test_mutated_b2_rejected():
    rep = verify_rule(mutated_b2(), samples=10)
    assert not rep.passed
    assert rep.failures[0][1] != rep.failures[0][2]  # digests differ


def test_unknown_rule_set():
    with pytest.raises(UnknownRuleSet):
        catalog("nope")
    with pytest.raises(KeyError):
        get_rule("S1", "nope")


def test_aliases():
    assert get_rule("TR13'", "zx-full-extended").name == "TR13′"
    assert get_rule("rng_1", "zw").name == "rng₁"


def test_report_deterministic():
    r = get_rule("EU", "qubit-traditional")
    a, b = verify_rule(r, samples=15, seed=11), verify_rule(r, samples=15, seed=11)
    assert a.scalars == b.scalars


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        verify_rule(get_rule("S1", "qubit-traditional"), samples=0)


def test_unsatisfiable_side_condition():
    r = RewriteRule("never", "qubit-traditional", lambda a: Z(1, 1, a), lambda a: Z(1, 1, a),
                    (("a", ANGLE),), derive=lambda p: None)
    with pytest.raises(DomainError):
        sample_params(r, random.Random(0), 0)
    with pytest.raises(DomainError):
        r.build(a=Phase(0))


def test_boundary_angles_sampled_first():
    r = get_rule("S1", "qubit-traditional")
    p = sample_params(r, random.Random(0), 0)
    assert all(isinstance(v, Phase) and v.exact_p for v in p.values())


def test_rule_build_consistent_with_verify():
    r = get_rule("H", "qubit-traditional")
    lhs, rhs = r.build(**sample_params(r, random.Random(1), 5))
    assert scalar_equiv(interpret(lhs), interpret(rhs)) is not None


# ---------------------------------------------------------------- AD'

def _dyadics(rng, n):
    out = [Fraction(0), Fraction(1), Fraction(1, 2)]
    while len(out) < n:
        e = rng.randint(0, 6)
        out.append(Fraction(rng.randint(0, 4 << e), 1 << e))
    return out


def test_ad_prime_solution_iff_mod_pi():
    rng = random.Random(5)
    ds = _dyadics(rng, 12)
    for ka, kb in itertools.product(range(8), repeat=2):
        for l1, l2 in itertools.product(ds[:6], ds[6:]):
            s = l1 * cmath.exp(1j * math.pi * kb / 4) + l2 * cmath.exp(1j * math.pi * ka / 4)
            sol = ad_prime_solution(l1, l2, ka, kb)
            aligned = ka % 4 == kb % 4 or l1 == 0 or l2 == 0
            assert (sol is not None) == (abs(s) > 1e-12 and aligned), (l1, l2, ka, kb)
            if sol is not None:
                lam, kg = sol
                assert lam > 0 and ad_prime_condition(lam, l1, l2, ka, kb, kg)
                assert abs(lam * cmath.exp(1j * math.pi * kg / 4) - s) < 1e-12


def test_ad_prime_condition_exhaustive_k():
    # the condition singles out exactly one kg for a nonzero admissible sum
    for ka, kb in itertools.product(range(8), repeat=2):
        sol = ad_prime_solution(Fraction(3, 4), Fraction(5, 8), ka, kb)
        if sol is None:
            continue
        lam, kg = sol
        hits = [g for g in range(8) if ad_prime_condition(lam, Fraction(3, 4), Fraction(5, 8), ka, kb, g)]
        assert hits == [kg]
