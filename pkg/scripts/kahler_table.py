"""Kahler differentials of monomial quotients of Q[x, y] against the I/I^2 oracle.

    python3 scripts/kahler_table.py --max-exp 4 --bound 4
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product

from optangent.opalg import PresentedAlgebra
from optangent.rewrite import letter
from optangent.tangent_geo import kahler_module


@dataclass
class KahlerConfig:
    max_exp: int = 3
    bound: int = 3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-exp", type=int, default=KahlerConfig.max_exp)
    ap.add_argument("--bound", type=int, default=KahlerConfig.bound)
    a = ap.parse_args(argv)
    cfg = KahlerConfig(a.max_exp, a.bound)
    x, y = letter(0), letter(1)
    bad = 0
    for a_, b_ in product(range(2, cfg.max_exp + 1), repeat=2):
        A = PresentedAlgebra("Com", ["x", "y"], [{x * a_: 1}, {y * b_: 1}],
                             name=f"(x^{a_},y^{b_})")
        km = kahler_module(A, cfg.bound)
        bad += not km.agrees
        print(f"{A.name:<12} dims {km.dims}  oracle {km.oracle_dims}  "
              f"{'agree' if km.agrees else 'DISAGREE'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
