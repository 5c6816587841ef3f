#!/usr/bin/env python3
"""Recompute the bundled reference examples and print a result table.

The tree rows are exact rational identities; the hyperbolic rows carry
explicit float tolerances. Useful as a quick end-to-end smoke run and
for watching how the identities behave as the instance sizes grow.

    python3 scripts/run_worked_examples.py
    python3 scripts/run_worked_examples.py --tree-depth 50 --curve-stop 20
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from cat0 import worked_examples


@dataclass(frozen=True)
class RunConfig:
    tree_depth: int = 25
    curve_stop: float = 10.0
    curve_step: float = 0.01
    verbose: bool = False


def parse_args(argv) -> RunConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tree-depth", type=int, default=25,
                    help="number of members in the tree-branch operator")
    ap.add_argument("--curve-stop", type=float, default=10.0,
                    help="end of the hyperbolic curve parameter grid")
    ap.add_argument("--curve-step", type=float, default=0.01,
                    help="step of the hyperbolic curve parameter grid")
    ap.add_argument("--verbose", action="store_true",
                    help="print every row, not just the failures")
    ns = ap.parse_args(argv)
    return RunConfig(ns.tree_depth, ns.curve_stop, ns.curve_step, ns.verbose)


def fmt(value) -> str:
    raw = getattr(value, "raw", value)
    if isinstance(raw, Fraction):
        return str(raw)
    if isinstance(raw, float):
        return f"{raw:.12g}"
    return str(raw)


def main(argv=None) -> int:
    cfg = parse_args(argv if argv is not None else sys.argv[1:])
    rows = worked_examples(
        tree_depth=cfg.tree_depth,
        curve_grid_stop=cfg.curve_stop,
        curve_grid_step=cfg.curve_step,
    )

    width = max(len(r.name) for r in rows)
    n_pass = 0
    for r in rows:
        status = "pass" if r.passed else "FAIL"
        n_pass += r.passed
        if cfg.verbose or not r.passed:
            print(
                f"{status}  {r.name:<{width}}  computed={fmt(r.computed)}"
                f"  expected={fmt(r.expected)}  tol={fmt(r.tol)}"
            )
    print(f"{n_pass}/{len(rows)} rows passed "
          f"(tree depth {cfg.tree_depth}, curve grid to {cfg.curve_stop})")
    return 0 if n_pass == len(rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
