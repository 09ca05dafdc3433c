"""Run the algebraic and geometric tangent checks over a family of algebras.

    python3 scripts/axiom_sweep.py --max-n 5 --primes 2 3 5 --geo-bound 3
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from optangent.exactnum import GF, QQ
from optangent.opalg import (PresentedAlgebra, heisenberg, nonabelian_lie, truncated_polynomial,
                             upper_triangular)
from optangent.rewrite import letter
from optangent.tangent_alg import check_alg_tangent_axioms
from optangent.tangent_geo import check_geo_tangent_axioms


@dataclass
class SweepConfig:
    max_n: int = 4
    primes: list = field(default_factory=lambda: [0, 5])
    geo_bound: int = 3


def algebraic_cases(cfg: SweepConfig):
    for p in cfg.primes:
        ring = GF(p) if p else QQ
        for n in range(1, cfg.max_n + 1):
            yield truncated_polynomial(n, ring)
    yield upper_triangular()
    yield nonabelian_lie()
    yield heisenberg()


def geometric_cases(cfg: SweepConfig):
    x = letter(0)
    for n in range(2, cfg.max_n + 1):
        yield PresentedAlgebra("Com", ["x"], [{x * n: 1}], name=f"Q[x]/(x^{n})")
    yield PresentedAlgebra("Com", ["x", "y"], name="Q[x,y]")
    yield PresentedAlgebra("Ass", ["x", "y"], name="Q<x,y>")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--primes", type=int, nargs="*", default=[0, 5], help="0 means Q")
    ap.add_argument("--geo-bound", type=int, default=SweepConfig.geo_bound)
    a = ap.parse_args(argv)
    cfg = SweepConfig(a.max_n, a.primes, a.geo_bound)
    bad = 0
    print(f"{'algebra':<20} {'kind':<10} {'result':<24} seconds")
    for A in algebraic_cases(cfg):
        t = time.perf_counter()
        rep = check_alg_tangent_axioms(A)
        bad += not rep.passed
        print(f"{A.name:<20} {'alg':<10} {rep.summary():<24} {time.perf_counter() - t:.2f}")
    for A in geometric_cases(cfg):
        t = time.perf_counter()
        rep = check_geo_tangent_axioms(A, cfg.geo_bound)
        bad += not rep.passed
        print(f"{A.name:<20} {'geo':<10} {rep.summary():<24} {time.perf_counter() - t:.2f}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
