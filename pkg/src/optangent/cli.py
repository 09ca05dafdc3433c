"""Command-line front end: `optangent COMMAND [flags] FILE...`.

Reports print one line per check (`NAME: PASS|FAIL [witness]`) and a summary;
the exit status is 0 iff every check passed, and the first failure is echoed
on stderr.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .opalg import DEFAULT_BOUND, PresentedAlgebra, to_structure_constants
from .operad import builtin_morphism
from .report import AxiomReport
from .textformat import PresentationSyntaxError, ArityError, dump, emit, load

EXPECT = {"iso": "Iso", "surj-not-inj": "SurjNotInj", "not-surj": "NotSurj"}


def _algebra(path: str) -> PresentedAlgebra:
    obj = load(path)
    if not isinstance(obj, PresentedAlgebra):
        raise SystemExit(f"{path}: expected an algebra presentation")
    return obj


def _finish(rep: AxiomReport, out) -> int:
    if rep.title:
        print(rep.title, file=out)
    for line in rep.lines():
        print(line, file=out)
    print(rep.summary(), file=out)
    if not rep.passed:
        f = rep.failures()[0]
        print(f"{f.name}: FAIL" + (f" [{f.witness}]" if f.witness else ""), file=sys.stderr)
        return 1
    return 0


def _write(args, obj) -> None:
    if args.out:
        dump(obj, args.out)


def _rules(args, A: PresentedAlgebra, out) -> None:
    if args.dump_rules:
        print(A.require(args.bound).dump(A.generators), file=out)


# -- commands ---------------------------------------------------------------------

def cmd_check_axioms(args, out) -> int:
    A = _algebra(args.alg or args.files[0])
    _rules(args, A, out)
    if args.geo:
        from .tangent_geo import check_geo_tangent_axioms
        return _finish(check_geo_tangent_axioms(A, args.bound), out)
    from .tangent_alg import check_alg_tangent_axioms
    return _finish(check_alg_tangent_axioms(to_structure_constants(A)), out)


def cmd_tangent_alg(args, out) -> int:
    from .opalg import semidirect_tangent, to_presented
    A = to_structure_constants(_algebra(args.files[0]))
    TA = semidirect_tangent(A)
    print(f"{TA.name}: dim {TA.dim}", file=out)
    print("basis " + " ".join(TA.basis), file=out)
    op = TA.operad.product
    for (i, j), v in sorted(TA.tables[op].items()):
        terms = " + ".join(f"{c}*{TA.basis[k]}" if c != 1 else TA.basis[k]
                           for k, c in sorted(v.items()))
        print(f"{TA.basis[i]} . {TA.basis[j]} = {terms}", file=out)
    _write(args, to_presented(TA))
    return _finish(TA.certification(), out)


def cmd_tangent_geo(args, out) -> int:
    from .tangent_geo import Tn
    A = _algebra(args.files[0])
    TA = Tn(A, args.n)
    print(emit(TA), end="", file=out)
    print("dims " + " ".join(map(str, TA.dims(args.bound))), file=out)
    _rules(args, TA, out)
    _write(args, TA)
    return 0


def cmd_kahler(args, out) -> int:
    from .tangent_geo import kahler_module
    A = _algebra(args.files[0])
    km = kahler_module(A, args.bound)
    print(f"Omega({A.name})", file=out)
    print(f"generators {len(km.generators)}: " + " ".join(km.generators), file=out)
    print(f"relations {len(km.relations)}: " + "; ".join(km.relations), file=out)
    print("dims " + " ".join(map(str, km.dims)), file=out)
    print(f"dim {km.dim}", file=out)
    rep = AxiomReport()
    if km.agrees is not None:
        rep.add("oracle_I_mod_I2", km.agrees, f"{km.oracle_dims} vs {km.dims}")
    return _finish(rep, out)


def cmd_derivations(args, out) -> int:
    from .tangent_geo import derivation_space, same_derivation, to_derivation, to_vector_field
    A = _algebra(args.files[0])
    ders = derivation_space(A, args.bound)
    print(f"Der({A.name}): dim {len(ders)}", file=out)
    for d in ders:
        print("  " + d.fmt(), file=out)
    rep = AxiomReport()
    ok = all(same_derivation(to_derivation(to_vector_field(d), A, args.bound), d, args.bound)
             for d in ders)
    rep.add("vector_field_roundtrip", ok)
    return _finish(rep, out)


def cmd_dist_law(args, out) -> int:
    from .tangent_geo import dist_law_shriek, dist_law_star, is_iso_truncated
    A = _algebra(args.files[0])
    phi = builtin_morphism(args.morphism, A.ring)
    h = dist_law_star(phi, A, args.bound) if args.kind == "star" else \
        dist_law_shriek(phi, A, args.bound)
    res = is_iso_truncated(h, args.bound)
    print(f"{h.source.name} -> {h.target.name}", file=out)
    print("source dims " + " ".join(map(str, res.source_dims)), file=out)
    print("target dims " + " ".join(map(str, res.target_dims)), file=out)
    print("ranks " + " ".join(map(str, res.ranks)), file=out)
    rep = AxiomReport()
    rep.add(f"comparison is {res.kind}", res.kind == EXPECT[args.expect], str(res))
    return _finish(rep, out)


def cmd_env_operad(args, out) -> int:
    from .enveloping import EnvelopingOperad
    A = _algebra(args.files[0])
    env = EnvelopingOperad(A.kind, A, args.arity, args.bound)
    print(f"{A.kind}^{A.name}: dims " + " ".join(map(str, env.dims())), file=out)
    for m in range(args.arity + 1):
        print(f"arity {m}: " + " ".join(s.label(A) for s in env.basis(m)), file=out)
    return 0


def cmd_env_algebra(args, out) -> int:
    from .enveloping import enveloping_algebra
    A = _algebra(args.files[0])
    U = enveloping_algebra(A.kind, A, args.bound)
    print(f"{U.name}: dim {U.dim}", file=out)
    print("basis " + " ".join(U.basis), file=out)
    return _finish(U.certification() if U.certified else AxiomReport(), out)


def _under(args):
    from .slice_env import inclusion
    A, B = _algebra(args.files[0]), _algebra(args.files[1])
    return inclusion(A, B)


def cmd_vertical_tangent(args, out) -> int:
    from .slice_env import vertical_tangent
    V = vertical_tangent(_under(args), args.bound)
    print(emit(V), end="", file=out)
    print("dims " + " ".join(map(str, V.dims(args.bound))), file=out)
    _rules(args, V, out)
    _write(args, V)
    return 0


def cmd_slice_check(args, out) -> int:
    from .slice_env import check_slice_equivalence
    beta = _under(args)
    return _finish(check_slice_equivalence(beta.source.kind, beta.source, beta, args.bound), out)


def cmd_bundle_check(args, out) -> int:
    from .slice_env import (bundle_check, free_module, kahler_as_module, module_to_bundle,
                            sabotage_lift, zero_module)
    A = _algebra(args.files[0])
    if args.module == "kahler":
        M = kahler_as_module(A)
    elif args.module == "zero":
        M = zero_module(A)
    else:
        M = free_module(A, [f"m{i}" for i in range(1, int(args.module.split(":")[1]) + 1)])
    d = module_to_bundle(M)
    if args.sabotage:
        d = sabotage_lift(d)
    return _finish(bundle_check(d, args.bound), out)


def cmd_dims(args, out) -> int:
    A = _algebra(args.files[0])
    _rules(args, A, out)
    print(" ".join(map(str, A.dims(args.bound))), file=out)
    return 0


COMMANDS = {
    "tangent-alg": (cmd_tangent_alg, 1), "tangent-geo": (cmd_tangent_geo, 1),
    "kahler": (cmd_kahler, 1), "derivations": (cmd_derivations, 1),
    "dist-law": (cmd_dist_law, 1), "env-operad": (cmd_env_operad, 1),
    "env-algebra": (cmd_env_algebra, 1), "vertical-tangent": (cmd_vertical_tangent, 2),
    "slice-check": (cmd_slice_check, 2), "bundle-check": (cmd_bundle_check, 1),
    "check-axioms": (cmd_check_axioms, 0), "dims": (cmd_dims, 1),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="optangent",
                                 description="Tangent structures on algebras over an operad.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("files", nargs="*", help="presentation files (base first)")
    ap.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="degree truncation")
    ap.add_argument("--out", help="write the resulting presentation here")
    ap.add_argument("--dump-rules", action="store_true", help="print rewrite rules")
    ap.add_argument("--alg", help="algebra file (check-axioms)")
    ap.add_argument("--geo", action="store_true", help="check-axioms: geometric tangent")
    ap.add_argument("--n", type=int, default=1, help="tangent-geo: number of d-blocks")
    ap.add_argument("--morphism", default="Ass->Com", help="dist-law: Ass->Com or Lie->Ass")
    ap.add_argument("--kind", choices=("star", "shriek"), default="star")
    ap.add_argument("--expect", choices=sorted(EXPECT), default="iso")
    ap.add_argument("--arity", type=int, default=1, help="env-operad: arity bound")
    ap.add_argument("--module", default="kahler", help="bundle-check: kahler, zero or free:N")
    ap.add_argument("--sabotage", action="store_true", help="bundle-check: break the lift")
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_intermixed_args(argv)
    fn, nfiles = COMMANDS[args.command]
    need = 1 if args.command == "check-axioms" and not args.alg else nfiles
    if len(args.files) < need:
        print(f"{args.command} needs {need} file(s)", file=sys.stderr)
        return 2
    try:
        return fn(args, out)
    except (PresentationSyntaxError, ArityError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
