"""Graded ranks of the distributive-law comparison maps, per degree.

    python3 scripts/dist_law_ranks.py --bound 4
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from optangent.opalg import PresentedAlgebra, heisenberg, nonabelian_lie
from optangent.operad import builtin_morphism
from optangent.tangent_geo import dist_law_shriek, dist_law_star, is_iso_truncated


@dataclass
class RankConfig:
    bound: int = 3


def cases():
    qx = PresentedAlgebra("Com", ["x"], name="Q[x]")
    qxy = PresentedAlgebra("Com", ["x", "y"], name="Q[x,y]")
    ass = PresentedAlgebra("Ass", ["x"], name="Q<x>")
    yield "star", "Ass->Com", qx
    yield "star", "Ass->Com", qxy
    yield "shriek", "Ass->Com", ass
    yield "shriek", "Lie->Ass", nonabelian_lie()
    yield "shriek", "Lie->Ass", heisenberg()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=RankConfig.bound)
    cfg = RankConfig(ap.parse_args(argv).bound)
    for kind, name, A in cases():
        phi = builtin_morphism(name)
        h = (dist_law_star if kind == "star" else dist_law_shriek)(phi, A, cfg.bound)
        res = is_iso_truncated(h, cfg.bound)
        print(f"{kind:<7}{name:<10}{A.name:<8} {str(res):<40}")
        print(f"{'':25} source {res.source_dims}  target {res.target_dims}  ranks {res.ranks}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
