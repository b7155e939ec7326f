"""Command-line front end.  ``run`` does the work and returns a CommandResult;
``main`` prints the record to stdout and the summary to stderr."""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import io
from .budget import Budgets
from .category import nerve
from .complexes import SimplicialComplex, face_poset, order_complex
from .constructions import Product, pushout
from .diagrams import (canonical_complex_frame, colim_hom, corner_extension_test,
                       filtered_refinement_solve, hocolim, pro_equivalence_check, realize_LK,
                       relative_frame, restriction_map, slice_nerve)
from .errors import BudgetError, MalformedExpression, ProsimplError, ValidationError
from .homology import ChainComplex, homology, matrix_text
from .kan import ex, weq_test
from .simplicial import SMap, SimplexRef, constant_map, nd, validate, validate_map
from .subdivision import tower

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


@dataclass
class CommandResult:
    code: int
    record: dict
    summary: str


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _budget_flags(p, weq=False):
    p.add_argument("--dim", type=int, default=3, help="truncation cap D")
    p.add_argument("--map-cap", type=int, default=10**5, help="per-dimension map cap")
    if weq:
        p.add_argument("--nmax", type=int, default=3)
        p.add_argument("--sdmax", type=int, default=2)
        p.add_argument("--problems", type=int, default=12, help="lifting problems per dimension")
        p.add_argument("--nodes", type=int, default=200_000, help="search node budget")
        p.add_argument("--no-lifting", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="prosimpl", description=__doc__)
    top.add_argument("--meta", action="store_true", help="report timing on stderr")
    top.add_argument("--max-simplices", type=int, help="global simplex cap")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("validate", help="validate any object file")
    p.add_argument("input", nargs="?")
    p.add_argument("--input", dest="input_flag")

    p = sub.add_parser("sd", help="iterated barycentric subdivision")
    p.add_argument("--input", required=True)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--output")
    p.add_argument("--emit-gamma")

    p = sub.add_parser("nerve", help="nerve of a finite category")
    p.add_argument("--input", required=True)
    p.add_argument("--trunc", type=int)
    p.add_argument("--output")

    for name in ("order-complex", "face-poset"):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True)
        p.add_argument("--output")

    p = sub.add_parser("product")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--output")

    p = sub.add_parser("pushout", help="pushout of two maps with a common source")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--output")

    p = sub.add_parser("homology")
    p.add_argument("input", nargs="?")
    p.add_argument("--input", dest="input_flag")
    p.add_argument("--matrices", help="directory for boundary matrices")

    p = sub.add_parser("ex")
    p.add_argument("--input", required=True)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--map-cap", type=int)
    p.add_argument("--output")

    p = sub.add_parser("check-weq")
    p.add_argument("--map", required=True)
    _budget_flags(p, weq=True)

    for name in ("hocolim", "slice-nerve"):
        p = sub.add_parser(name)
        p.add_argument("--diagram", required=True)
        p.add_argument("--fibrant", required=True)
        _budget_flags(p)
        p.add_argument("--output")

    p = sub.add_parser("check-proeq")
    p.add_argument("--promap", required=True)
    p.add_argument("--fibrant", nargs="+", required=True)
    _budget_flags(p, weq=True)

    p = sub.add_parser("realize-lk")
    p.add_argument("--diagram", required=True)
    p.add_argument("--fibrant", required=True)
    p.add_argument("--omega", required=True, help="{complex, on} into the hocolim")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--output")

    p = sub.add_parser("corner-test")
    p.add_argument("--inclusion", required=True)
    p.add_argument("--fibrant", required=True)
    p.add_argument("--n", type=int, default=1, help="frame dimension")
    p.add_argument("--vertex", type=int, default=0, help="hocolim vertex for the constant data")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--sdmax", type=int, default=2)
    p.add_argument("--nodes", type=int, default=200_000)

    p = sub.add_parser("refine-solve")
    p.add_argument("--inclusion", required=True)
    p.add_argument("--fibrant", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--problem", help="map on the frame (ids as in --emit-frame)")
    p.add_argument("--map", help="for n = 0: a map X(index) -> Z")
    p.add_argument("--emit-frame")
    p.add_argument("--colim-dim", type=int, help="also report colim hom(X, Z) to this cap")
    p.add_argument("--nodes", type=int, default=200_000)

    p = sub.add_parser("export-dot")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    return top


# -- commands -----------------------------------------------------------------------

def _counts(X) -> list:
    return list(X.counts())


def _emit(args, record_obj, out: dict):
    if getattr(args, "output", None):
        io.write_json(record_obj, args.output)
        out["output"] = args.output


def _input(args):
    path = getattr(args, "input_flag", None) or args.input
    if not path:
        raise UsageError("an input file is required")
    return path


def cmd_validate(args):
    kind, obj = io.load_any(_input(args))
    if kind == "sset":
        problems = validate(obj)
    elif kind == "smap":
        problems = validate(obj.source) + validate(obj.target) + validate_map(obj)
    elif kind in ("category", "diagram", "promap", "functor"):
        problems = obj.validate()
    elif kind == "groupoid":
        problems = obj.validate()
        if not problems:
            problems = obj.groupoid_violations()
    elif kind == "inclusion":
        X, Y, maps = obj
        problems = X.validate() + Y.validate()
        for a, g in maps.items():
            problems += validate_map(g)
    else:
        problems = []
    rec = {"kind": kind, "valid": not problems,
           "violations": [{"where": v.where, "check": v.check, "detail": v.detail} for v in problems]}
    if problems:
        return CommandResult(EXIT_INVALID, rec, f"{kind}: {len(problems)} violation(s); first: {problems[0]}")
    return CommandResult(EXIT_OK, rec, f"{kind}: valid")


def _load_sset(path):
    X = io.sset_from_json(path)
    problems = validate(X)
    if problems:
        raise ValidationError(f"{path}: {problems[0]}", problems)
    return X


def cmd_sd(args):
    X = _load_sset(args.input)
    t = tower(X, args.iterations)
    top = t.levels[-1] if t.levels else X
    rec = {"input": list(X.counts()), "levels": [_counts(L) for L in t.levels], "counts": _counts(top)}
    _emit(args, io.sset_to_json(top), rec)
    if args.emit_gamma:
        io.write_json(io.smap_to_json(t.gamma_composite()), args.emit_gamma)
        rec["gamma"] = args.emit_gamma
    return CommandResult(EXIT_OK, rec, f"sd^{args.iterations}: counts {tuple(top.counts())}")


def cmd_nerve(args):
    C = io.category_from_json(args.input)
    C.check()
    B = nerve(C, trunc=args.trunc)
    rec = {"counts": _counts(B), "cap": B.cap}
    _emit(args, io.sset_to_json(B), rec)
    return CommandResult(EXIT_OK, rec, f"nerve: counts {tuple(B.counts())}")


def cmd_order_complex(args):
    K = io.complex_from_json(args.input)
    S = order_complex(K)
    rec = {"counts": _counts(S)}
    _emit(args, io.complex_to_json(S), rec)
    return CommandResult(EXIT_OK, rec, f"order complex: counts {tuple(S.counts())}")


def cmd_face_poset(args):
    P = face_poset(_load_sset(args.input))
    rec = {"elements": len(P.elements), "relations": len(P.relation) - len(P.elements)}
    _emit(args, io.category_to_json(P), rec)
    return CommandResult(EXIT_OK, rec, f"face poset: {len(P.elements)} elements")


def cmd_product(args):
    P = Product(_load_sset(args.left), _load_sset(args.right))
    rec = {"counts": _counts(P.obj)}
    _emit(args, io.sset_to_json(P.obj), rec)
    return CommandResult(EXIT_OK, rec, f"product: counts {tuple(P.obj.counts())}")


def cmd_pushout(args):
    f, g = io.smap_from_json(args.f), io.smap_from_json(args.g)
    for h in (f, g):
        problems = validate_map(h)
        if problems:
            raise ValidationError(f"{h.name}: {problems[0]}", problems)
    P = pushout(f, g).obj
    rec = {"counts": _counts(P)}
    _emit(args, io.sset_to_json(P), rec)
    return CommandResult(EXIT_OK, rec, f"pushout: counts {tuple(P.counts())}")


def cmd_homology(args):
    X = _load_sset(_input(args))
    groups = homology(X)
    rec = {"degrees": [{"degree": n, "rank": H.rank, "torsion": list(H.torsion), "group": str(H)}
                       for n, H in enumerate(groups)]}
    if args.matrices:
        out = Path(args.matrices)
        out.mkdir(parents=True, exist_ok=True)
        cc = ChainComplex(X, len(groups))
        for n in range(1, len(groups) + 1):
            (out / f"d{n}.txt").write_text(matrix_text(cc.dense(n)), encoding="utf-8")
        rec["matrices"] = str(out)
    return CommandResult(EXIT_OK, rec, "homology: " + ", ".join(f"H{n}={H}" for n, H in enumerate(groups)))


def cmd_ex(args):
    X = _load_sset(args.input)
    E = ex(X, args.dim, map_cap=args.map_cap)
    rec = {"counts": _counts(E), "cap": E.cap, "vertices_equal": len(E.level(0)) == len(X.level(0))}
    _emit(args, io.sset_to_json(E), rec)
    return CommandResult(EXIT_OK, rec, f"Ex truncated at {args.dim}: counts {tuple(E.counts())}")


def _budgets(args) -> Budgets:
    return Budgets(n_max=args.nmax, k_max=args.sdmax, map_cap=args.map_cap, dim=args.dim,
                   problems_per_dim=args.problems, search_nodes=args.nodes)


def cmd_check_weq(args):
    f = io.smap_from_json(args.map)
    problems = validate(f.source) + validate(f.target) + validate_map(f)
    if problems:
        raise ValidationError(f"{args.map}: {problems[0]}", problems)
    v = weq_test(f, _budgets(args), lifting=not args.no_lifting)
    return CommandResult(EXIT_OK, v.record(), v.status)


def cmd_hocolim(args):
    X = io.diagram_from_json(args.diagram).check()
    Z = io.fibrant_from_json(args.fibrant)
    H = hocolim(X, Z, args.dim, map_cap=args.map_cap)
    rec = {"counts": _counts(H), "cap": H.cap, "test_object": Z.name}
    _emit(args, io.sset_to_json(H), rec)
    return CommandResult(EXIT_OK, rec, f"hocolim: counts {tuple(H.counts())}")


def cmd_slice_nerve(args):
    X = io.diagram_from_json(args.diagram).check()
    Z = io.fibrant_from_json(args.fibrant)
    B = slice_nerve(X, Z, args.dim, map_cap=args.map_cap)
    rec = {"counts": _counts(B), "cap": B.cap, "test_object": Z.name}
    _emit(args, io.sset_to_json(B), rec)
    return CommandResult(EXIT_OK, rec, f"slice nerve: counts {tuple(B.counts())}")


def cmd_check_proeq(args):
    p = io.promap_from_json(args.promap)
    Zs = [io.fibrant_from_json(z) for z in args.fibrant]
    v = pro_equivalence_check(p, Zs, _budgets(args), lifting=not args.no_lifting)
    return CommandResult(EXIT_OK, v.record(), v.status)


def cmd_realize_lk(args):
    X = io.diagram_from_json(args.diagram).check()
    Z = io.fibrant_from_json(args.fibrant)
    H = hocolim(X, Z, args.dim)
    data, base = io._resolve(args.omega, None)
    K = io.complex_from_json(data["complex"], base)
    omega = io.smap_from_json({"on": data["on"]}, base, K.sset(), H)
    problems = validate_map(omega)
    if problems:
        raise ValidationError(f"omega: {problems[0]}", problems)
    r = realize_LK(X, H, omega)
    rec = {"counts": _counts(r.obj), "round_trip": r.round_trip}
    _emit(args, {"LK": io.sset_to_json(r.obj), "f_omega": io.smap_to_json(r.f_omega, inline=False)}, rec)
    return CommandResult(EXIT_OK, rec, f"L_K: counts {tuple(r.obj.counts())}")


def cmd_corner_test(args):
    X, Y, inc = io.inclusion_from_json(args.inclusion)
    Z = io.fibrant_from_json(args.fibrant)
    HY, HX = hocolim(Y, Z, args.dim), hocolim(X, Z, args.dim)
    fr = canonical_complex_frame(args.n)
    istar = restriction_map(inc, X, Y, Z, args.dim, HY, HX)
    if args.vertex >= len(HY.level(0)):
        raise ValidationError(f"the hocolim has only {len(HY.level(0))} vertices")
    v = HY.level(0)[args.vertex]
    omega = constant_map((fr.K or fr.K2).sset(), HY, v)
    beta = constant_map(fr.L.sset(), HX, istar(nd(v)).base)
    r = corner_extension_test(inc, X, Y, fr, Z, omega, beta, args.sdmax, args.dim, args.nodes)
    return CommandResult(EXIT_OK, r.record(), "success" if r.success else "exhausted")


def cmd_refine_solve(args):
    X, Y, inc = io.inclusion_from_json(args.inclusion)
    Z = io.fibrant_from_json(args.fibrant)
    i, n = args.index, args.n
    if i not in Y.objects:
        raise ValidationError(f"unknown index object {i!r}")
    P, M = relative_frame(n, Y.objects[i], {r.base for r in inc[i].assignment.values()})
    if args.emit_frame:
        io.write_json({"frame": io.sset_to_json(M),
                       "pairs": {s: [io.ref_record(a), io.ref_record(b)]
                                 for s, (a, b) in P.key.items() if s in M}}, args.emit_frame)
    T = Z.at(n + max(A.dim for A in Y.objects.values()))
    if args.problem:
        f = io.smap_from_json(args.problem, None, M, T)
    elif args.map and n == 0:
        g = io.smap_from_json(args.map, None, X.objects[i], T)
        pre = {r.base: x for x, r in inc[i].assignment.items()}
        f = SMap(M, T, {s: g(SimplexRef(P.key[s][1].word, pre[P.key[s][1].base])) for s in M.ids()})
    else:
        raise UsageError("give --problem, or --map with --n 0")
    problems = validate_map(f)
    if problems:
        raise ValidationError(f"problem: {problems[0]}", problems)
    r = filtered_refinement_solve(inc, X, Y, i, n, f, Z, args.nodes)
    rec = {"solved": r.solved, "morphism": r.morphism, "transcript": r.transcript}
    if args.colim_dim is not None:
        rec["colim_hom"] = _counts(colim_hom(X, Z, args.colim_dim))
    return CommandResult(EXIT_OK, rec, f"solved along {r.morphism}" if r.solved else "exhausted")


def cmd_export_dot(args):
    kind, obj = io.load_any(args.input)
    if kind == "category":
        text = obj.to_dot()
    elif kind in ("sset", "complex"):
        X = obj.sset() if isinstance(obj, SimplicialComplex) else obj
        text = face_poset(X).to_dot()
    else:
        raise ValidationError(f"cannot export a {kind} as DOT")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    rec = {"kind": kind, "dot": text}
    return CommandResult(EXIT_OK, rec, text.rstrip("\n"))


COMMANDS = {
    "validate": cmd_validate, "sd": cmd_sd, "nerve": cmd_nerve, "order-complex": cmd_order_complex,
    "face-poset": cmd_face_poset, "product": cmd_product, "pushout": cmd_pushout,
    "homology": cmd_homology, "ex": cmd_ex, "check-weq": cmd_check_weq, "hocolim": cmd_hocolim,
    "slice-nerve": cmd_slice_nerve, "check-proeq": cmd_check_proeq, "realize-lk": cmd_realize_lk,
    "corner-test": cmd_corner_test, "refine-solve": cmd_refine_solve, "export-dot": cmd_export_dot,
}


def run(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("no command given")
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, {"error": "usage", "message": str(exc)}, f"usage: {exc}")
    saved = os.environ.get("PROSIMPL_MAX_SIMPLICES")
    if args.max_simplices:
        os.environ["PROSIMPL_MAX_SIMPLICES"] = str(args.max_simplices)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, {"error": "usage", "message": str(exc)}, f"usage: {exc}")
    except BudgetError as exc:
        return CommandResult(EXIT_BUDGET, {"error": "budget", "message": str(exc)}, f"budget exhausted: {exc}")
    except (ValidationError, MalformedExpression, ProsimplError) as exc:
        rec = {"error": type(exc).__name__, "message": str(exc)}
        pair = getattr(exc, "pair", None)
        if pair is not None:
            rec["pair"] = list(pair)
        return CommandResult(EXIT_INVALID, rec, f"error: {exc}")
    finally:
        if saved is None:
            os.environ.pop("PROSIMPL_MAX_SIMPLICES", None)
        else:
            os.environ["PROSIMPL_MAX_SIMPLICES"] = saved


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    start = time.time()
    res = run(argv)
    sys.stdout.write(io.dumps(res.record))
    print(res.summary, file=sys.stderr)
    if "--meta" in argv:
        meta = {"started": time.strftime("%Y-%m-%dT%H:%M:%S", time.localtime(start)),
                "elapsed_s": round(time.time() - start, 3)}
        print(io.dumps({"meta": meta}), end="", file=sys.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
