#!/usr/bin/env python3
"""Soundness sweep over every rule catalog, with timing per set."""
import argparse
import time
from dataclasses import dataclass

from zxcalc.rules import RULE_SETS, catalog, mutated_b2, verify_rule


@dataclass
class SweepConfig:
    samples: int = 100
    seed: int = 0
    tol: float = 1e-9


def sweep(cfg: SweepConfig) -> bool:
    ok = True
    for rs in RULE_SETS:
        t0 = time.perf_counter()
        rules = catalog(rs)
        bad = [r.name for r in rules if not verify_rule(r, cfg.samples, cfg.seed, cfg.tol).passed]
        ok &= not bad
        print(f"{rs:20s} {len(rules):3d} rules  {time.perf_counter() - t0:5.2f}s  "
              + ("all sound" if not bad else f"FAILED: {', '.join(bad)}"))
    neg = verify_rule(mutated_b2(), cfg.samples, cfg.seed, cfg.tol)
    print(f"{'negative control':20s} mutated B2 rejected: {not neg.passed}")
    return ok and not neg.passed


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-9)
    a = ap.parse_args()
    raise SystemExit(0 if sweep(SweepConfig(a.samples, a.seed, a.tol)) else 1)
