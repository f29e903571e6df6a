#!/usr/bin/env python3
"""List the single-qutrit Clifford classes by normal form and check they are pairwise distinct."""
import itertools
from collections import Counter

from zxcalc.numerics import scalar_equiv
from zxcalc.qutrit import enumerate_c1

items = enumerate_c1()
counts = Counter(type(f).__name__ for f, _ in items)
for name in sorted(counts):
    print(f"{name}: {counts[name]}")
print(f"total: {len(items)}")

mats = [m for _, m in items]
clashes = sum(scalar_equiv(a, b) is not None for a, b in itertools.combinations(mats, 2))
print(f"scalar-equivalent pairs: {clashes}")
