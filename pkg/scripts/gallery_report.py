#!/usr/bin/env python3
"""Check every gallery entry and print its size and relating scalar."""
import argparse

from zxcalc import gallery
from zxcalc.cli import format_entry

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--tol", type=float, default=1e-9)
ap.add_argument("names", nargs="*")
a = ap.parse_args()

failed = 0
for name in a.names or gallery.names():
    out = gallery.build(name)
    ds = out if isinstance(out, tuple) else (out,)
    size = " / ".join(f"{len(d.nodes)} nodes" for d in ds)
    c = gallery.check_entry(name, a.tol)
    failed += c is None
    print(f"{name:20s} {size:24s} " + ("FAIL" if c is None else f"ok  c = {format_entry(complex(c))}"))
raise SystemExit(1 if failed else 0)
