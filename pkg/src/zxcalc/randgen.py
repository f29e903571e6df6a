"""Random open graphs for property tests (stub matching, so loops and parallel edges occur)."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .diagram import (Diagram, Hadamard, LambdaBox, Phase, Port, Bnd, Triangle, XSpider,
                      ZSpider, check)


@dataclass
class RandomConfig:
    max_nodes: int = 6
    max_boundary: int = 2    # per side
    max_spider_legs: int = 4
    box_prob: float = 0.3    # chance a node is a 1->1 box rather than a spider
    phases: str = "float"    # "float" | "pi4" | "zero"
    dim: int = 2
    boxes: tuple = ("H", "triangle", "lambda")


def _phase(rng: random.Random, mode: str, dim: int):
    if mode == "zero":
        return Phase()
    if dim == 3:
        return Phase(2 * rng.randrange(3), 3)
    if mode == "pi4":
        return Phase(rng.randrange(8), 4)
    return Phase(rad=rng.uniform(0, 2 * math.pi))


def _lam(rng: random.Random, mode: str):
    if mode == "pi4":
        return Fraction(rng.randrange(0, 9), 1 << rng.randrange(0, 4))
    return rng.choice([0.0, 1.0, rng.uniform(0, 3)])


def _box(rng: random.Random, cfg: RandomConfig):
    if cfg.dim == 3:
        return Hadamard(rng.randrange(4))
    name = rng.choice(cfg.boxes)
    if name == "H":
        return Hadamard(1)
    if name == "triangle":
        return Triangle(rng.choice((1, -1)))
    return LambdaBox(_lam(rng, cfg.phases))


def random_diagram(seed, cfg: RandomConfig | None = None) -> Diagram:
    cfg = cfg or RandomConfig()
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n_in = rng.randint(0, cfg.max_boundary)
    n_out = rng.randint(0, cfg.max_boundary)
    nodes, stubs = {}, []
    for i in range(rng.randint(1, cfg.max_nodes)):
        nid = f"n{i}"
        if rng.random() < cfg.box_prob:
            nodes[nid] = _box(rng, cfg)
            stubs += [Port(nid, 0), Port(nid, 1)]
        else:
            ph = tuple(_phase(rng, cfg.phases, cfg.dim) for _ in range(cfg.dim - 1))
            nodes[nid] = rng.choice((ZSpider, XSpider))(ph)
            stubs += [Port(nid, rng.randrange(2)) for _ in range(rng.randint(1, cfg.max_spider_legs))]
    stubs += [Bnd("in", i) for i in range(n_in)] + [Bnd("out", j) for j in range(n_out)]
    if len(stubs) % 2:
        spiders = [k for k, v in nodes.items() if isinstance(v, (ZSpider, XSpider))]
        if spiders:
            stubs.append(Port(rng.choice(spiders), rng.randrange(2)))
        else:
            nid = f"n{len(nodes)}"
            nodes[nid] = ZSpider(tuple(_phase(rng, cfg.phases, cfg.dim) for _ in range(cfg.dim - 1)))
            stubs.append(Port(nid, 1))
    rng.shuffle(stubs)
    edges = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
    return check(Diagram("zx", cfg.dim, nodes, edges, n_in, n_out))


# ---------------------------------------------------------------- qutrit stabilizer states

def random_qutrit_gates(rng: random.Random, n: int, depth: int) -> list:
    from .qutrit import CZ, SUM, S, Hg
    gates = []
    for _ in range(depth):
        r = rng.random()
        if n > 1 and r < 0.4:
            c, t = rng.sample(range(n), 2)
            gates.append(SUM(c, t) if r < 0.2 else CZ(c, t, rng.choice((1, 2))))
        else:
            v = rng.randrange(n)
            gates.append(S(v) if r < 0.7 else Hg(v))
    return gates


def _identity_insert(rng: random.Random, n: int) -> list:
    from .qutrit import CZ, SUM, S, Hg
    v = rng.randrange(n)
    pick = rng.randrange(4 if n > 1 else 2)
    if pick == 0:
        return [S(v)] * 3
    if pick == 1:
        return [Hg(v)] * 4
    c, t = rng.sample(range(n), 2)
    if pick == 2:
        return [SUM(c, t)] * 3
    w = rng.choice((1, 2))
    return [CZ(c, t, w), CZ(c, t, 3 - w)]


def random_stabilizer_pair(seed, n_max: int = 5, positive: bool | None = None):
    """(d1, d2, intended_equal). Equality is a hint only: the state-vector oracle is authoritative."""
    from .qutrit import (apply_clifford_generator, apply_local_comp_with_corrections,
                         apply_scale_with_corrections, apply_stabilizer_with_corrections, from_circuit)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = rng.randint(1, n_max)
    if positive is None:
        positive = rng.random() < 0.5
    gates = random_qutrit_gates(rng, n, rng.randint(0, 4 * n))
    d1 = from_circuit(n, gates)
    if positive:
        cut = rng.randint(0, len(gates))
        alt = gates[:cut] + _identity_insert(rng, n) + gates[cut:]
        d2 = from_circuit(n, alt)
        for _ in range(rng.randint(0, 3)):
            v = rng.randrange(n)
            move = rng.randrange(3)
            if move == 0:
                d2 = apply_local_comp_with_corrections(d2, v, rng.choice((1, 2)))
            elif move == 1:
                d2 = apply_scale_with_corrections(d2, v, 2)
            else:
                d2 = apply_stabilizer_with_corrections(d2, v, rng.randrange(3))
    else:
        d2 = d1
        for g in random_qutrit_gates(rng, n, rng.randint(1, 2)):
            d2 = apply_clifford_generator(d2, g)
    return d1, d2, positive
