#!/usr/bin/env python3
"""Simplify and translate random diagrams; report node reduction and any semantic drift."""
import argparse
from dataclasses import dataclass

from zxcalc.numerics import scalar_equiv
from zxcalc.randgen import RandomConfig, random_diagram
from zxcalc.rewrite import simplify
from zxcalc.semantics import interpret
from zxcalc.translate import zw_to_zx, zx_to_zw


@dataclass
class Config:
    n: int = 200
    seed: int = 0
    dim: int = 2
    max_nodes: int = 6


def main(cfg: Config):
    before = after = drift = tr = 0
    gen = RandomConfig(max_nodes=cfg.max_nodes, dim=cfg.dim)
    for s in range(cfg.seed, cfg.seed + cfg.n):
        d = random_diagram(s, gen)
        m = interpret(d)
        out = simplify(d)
        before += len(d.nodes)
        after += len(out.nodes)
        drift += scalar_equiv(interpret(out), m) is None
        if cfg.dim == 2:
            tr += scalar_equiv(interpret(zw_to_zx(zx_to_zw(d))), m) is None
    print(f"{cfg.n} diagrams: nodes {before} -> {after}, simplify drift {drift}, translation failures {tr}")
    return drift == tr == 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in Config().__dict__.items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    raise SystemExit(0 if main(Config(**vars(ap.parse_args()))) else 1)
