"""Command line front-end: ``tkrpoly <command> ...``.

Exit codes: 0 success, 1 usage error, 2 computation error.  On exit 2 the
first line of stderr is ``error <Code>: <message>``.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from typing import Sequence

from .catalog import builtin, builtin_names, cell, manifold_kind, resolve_complex
from .complex import DEFAULT_CAP, validate
from .duality import PAIR_CATALOG, check_alexander_identities, check_duality, load_pair
from .errors import NonApcWarning, TkrError
from .homology import homology
from .matroid import activities, check_matroid_correspondence, column_matroid, tutte
from .skein import CASE_NAMES, require_case, skein_trace, verify_skein
from .tkr import bott_direct, bott_via_tkr, modified_tkr, tkr
from .trees import enumerate_csts, matrix_tree, tau, weighted_tau


class UsageError(Exception):
    pass


class CheckFailed(TkrError):
    """A verification command ran to completion and found a mismatch."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"largest number of cells to enumerate subsets of (default {DEFAULT_CAP})")
    p.add_argument("--threads", type=int, default=1, help="worker processes for subset enumeration")


def cmd_homology(args) -> int:
    K = resolve_complex(args.complex)
    degrees = [args.degree] if args.degree is not None else range(K.dim + 1)
    rows = [homology(K, j, reduced=args.reduced) for j in degrees]
    prefix = "H~" if args.reduced else "H"
    text = "\n".join(f"{prefix}_{h.degree} = {h}" for h in rows)
    data = [{"degree": h.degree, "betti": h.betti, "torsion": list(h.torsion_factors), "reduced": h.reduced}
            for h in rows]
    _emit(args, text, data)
    return 0


def cmd_tkr(args) -> int:
    K = resolve_complex(args.complex)
    fn = modified_tkr if args.modified else tkr
    p = fn(K, args.dim, args.cap, args.threads)
    _emit(args, p.to_text(), p.to_json())
    return 0


def cmd_bott(args) -> int:
    K = resolve_complex(args.complex)
    fn = bott_via_tkr if args.via_tkr else bott_direct
    p = fn(K, args.cap, args.threads)
    _emit(args, p.to_text(), p.to_json())
    return 0


def cmd_trees(args) -> int:
    K = resolve_complex(args.complex)
    data: dict = {"complex": K.name, "dim": args.dim}
    lines = []
    if args.list:
        trees = enumerate_csts(K, args.dim, args.cap)
        data["trees"] = [list(S.cell_ids()) for S in trees]
        lines += ["{" + ", ".join(S.cell_ids()) + "}" for S in trees]
    count = (weighted_tau if args.weighted else tau)(K, args.dim, args.cap, args.threads)
    data["weighted" if args.weighted else "count"] = count
    lines.append(str(count))
    if args.matrix_tree:
        r = matrix_tree(K, args.dim)
        data["matrix_tree"] = {"determinant": r.determinant, "torsion_complex": r.torsion_complex,
                               "torsion_gamma": r.torsion_gamma, "weighted": r.weighted}
        lines.append(f"matrix-tree: det {r.determinant} * {r.torsion_complex}^2 / {r.torsion_gamma}^2"
                     f" = {r.weighted}")
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_skein(args) -> int:
    K = resolve_complex(args.complex)
    if args.verify:
        rep = verify_skein(K, cell(K, args.verify), args.cap)
        c = rep.classification
        data = {
            "cell": rep.cell,
            "loop": c.is_loop,
            "bridge": c.is_bridge,
            "boundary_regular": c.boundary_regular,
            "free_faces": [K.cell_id(r) for r in c.free_faces],
            "case": rep.case,
            "lhs": rep.lhs.to_text(),
            "rhs": None if rep.rhs is None else rep.rhs.to_text(),
            "deleted": rep.deleted.to_text(),
            "contracted": None if rep.contracted is None else rep.contracted.to_text(),
            "holds": rep.holds,
        }
        lines = [
            f"cell {rep.cell}: loop={c.is_loop} bridge={c.is_bridge} "
            f"boundary_regular={c.boundary_regular} free_faces={data['free_faces']}",
            f"case: {CASE_NAMES[rep.case] if rep.case else 'none'}",
            f"T(K) = {rep.lhs}",
            f"T(K - s) = {rep.deleted}",
        ]
        if rep.contracted is not None:
            lines.append(f"T(K / s) = {rep.contracted}")
        if rep.collapsed is not None:
            lines.append(f"T(K ~ s) = {rep.collapsed}")
        if rep.rhs is not None:
            lines.append(f"rhs = {rep.rhs}")
            lines.append("holds" if rep.holds else "FAILS")
        _emit(args, "\n".join(lines), data)
        require_case(rep)
        if not rep.holds:
            raise CheckFailed(f"skein relation fails on {rep.cell}")
        return 0
    p, trace = skein_trace(K, args.order, args.cap)
    if args.json:
        print(json.dumps({"polynomial": p.to_json(), "trace": trace.lines() if args.trace else None},
                         sort_keys=True))
    else:
        if args.trace:
            print(trace.render())
        print(p.to_text())
    return 0


def cmd_matroid(args) -> int:
    K = resolve_complex(args.complex)
    M = column_matroid(K, args.dim)
    data: dict = {"complex": K.name, "dim": args.dim, "size": M.size, "rank": M.full_rank}
    lines = [f"column matroid of D[{args.dim}]: rank {M.full_rank} on {M.size} elements"]
    if args.tutte:
        t = tutte(M, args.cap)
        data["tutte"] = t.to_json()
        lines.append(f"tutte: {t}")
    if args.bases:
        data["bases"] = []
        for B in M.bases(args.cap):
            i, e = activities(M, B)
            data["bases"].append({"cells": list(M.names(B)), "internal": i, "external": e})
            lines.append("{" + ", ".join(M.names(B)) + f"}} internal={i} external={e}")
    failed = False
    if args.check:
        rep = check_matroid_correspondence(K, args.dim, args.cap)
        data["check"] = {"a": rep.tkr_matches_tutte, "b": rep.bases_are_csts, "c": rep.activities_match}
        b = "skipped (not APC)" if rep.bases_are_csts is None else _ok(rep.bases_are_csts)
        lines += [f"(a) T^j = T_M(X+1, Y+1): {_ok(rep.tkr_matches_tutte)}",
                  f"(b) bases = spanning trees: {b}",
                  f"(c) activities = T^j(X-1, Y-1): {_ok(rep.activities_match)}"]
        lines += rep.details
        failed = not rep.ok
    _emit(args, "\n".join(lines), data)
    if failed:
        raise CheckFailed(f"matroid correspondence fails: {', '.join(rep.failures())}")
    return 0


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAILS"


def cmd_duality(args) -> int:
    P = load_pair(args.pair)
    rep = check_duality(P, args.dim, args.modified, args.cap, args.threads)
    k = P.k
    tag = "T~" if args.modified else "T"
    data: dict = {"pair": P.name, "dim": args.dim, "modified": args.modified,
                  "left": rep.left.to_text(), "right": rep.right.to_text(), "holds": rep.holds}
    lines = [f"{tag}^{args.dim}({P.K.name}) = {rep.left}",
             f"{tag}^{k - args.dim}({P.K_star.name}) = {rep.right}",
             f"duality: {_ok(rep.holds)}"]
    failed = not rep.holds
    if args.alexander:
        alex = check_alexander_identities(P, args.dim, args.cap, strict=args.strict)
        data["alexander"] = {"checked": alex.checked, "failures": len(alex.failures)}
        lines.append(f"alexander identities: {alex.checked} subcomplexes, {len(alex.failures)} failures")
        failed = failed or not alex.holds
    _emit(args, "\n".join(lines), data)
    if failed:
        raise CheckFailed(f"duality check fails for {P.name} at j = {args.dim}")
    return 0


def cmd_list_builtins(args) -> int:
    rows = []
    for name in builtin_names():
        K = builtin(name)
        rows.append({"name": name, "f_vector": list(K.f_vector), "manifold": manifold_kind(name)})
    pairs = sorted(PAIR_CATALOG)
    if args.json:
        print(json.dumps({"complexes": rows, "dual_pairs": pairs}, sort_keys=True))
        return 0
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        f = "(" + ", ".join(map(str, r["f_vector"])) + ")"
        print(f"{r['name']:<{width}}  {f:<14} {r['manifold'] or ''}".rstrip())
    print("dual pairs: " + " ".join(pairs))
    return 0


def cmd_validate(args) -> int:
    K = resolve_complex(args.complex)
    validate(K)
    _emit(args, f"ok {K.name} f={K.f_vector}", {"ok": True, "name": K.name, "f_vector": list(K.f_vector)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tkrpoly", description="Spanning subcomplex polynomials, spanning trees and skein relations of finite cell complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("homology", help="integral homology")
    p.add_argument("complex")
    p.add_argument("--degree", type=int)
    p.add_argument("--reduced", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("tkr", help="the TKR polynomial T^j")
    p.add_argument("complex")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--modified", action="store_true", help="torsion-weighted version")
    _common(p)
    p.set_defaults(func=cmd_tkr)

    p = sub.add_parser("bott", help="the Bott polynomial")
    p.add_argument("complex")
    p.add_argument("--via-tkr", action="store_true", help="substitute into T^k instead of summing directly")
    _common(p)
    p.set_defaults(func=cmd_bott)

    p = sub.add_parser("trees", help="cellular spanning trees")
    p.add_argument("complex")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--matrix-tree", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("skein", help="skein evaluation of the top polynomial")
    p.add_argument("complex")
    p.add_argument("--verify", metavar="CELL", help="check the relation for one top cell (id or id@dim)")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--order", choices=("lowest", "highest"), default="lowest")
    _common(p)
    p.set_defaults(func=cmd_skein)

    p = sub.add_parser("matroid", help="column matroid of a boundary map")
    p.add_argument("complex")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--tutte", action="store_true")
    p.add_argument("--bases", action="store_true")
    p.add_argument("--check", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("duality", help="check duality on a pair of dual sphere decompositions")
    p.add_argument("pair", help="catalog pair name or pair file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--modified", action="store_true")
    p.add_argument("--alexander", action="store_true")
    p.add_argument("--strict", action="store_true", help="compare torsion invariant factors, not orders")
    _common(p)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("list-builtins", help="catalog of builtin complexes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list_builtins)

    p = sub.add_parser("validate", help="check a complex")
    p.add_argument("complex")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    with warnings.catch_warnings():
        warnings.simplefilter("always", NonApcWarning)
        warnings.showwarning = _show_warning
        try:
            return args.func(args)
        except TkrError as exc:
            print(f"error {exc.code}: {exc}", file=sys.stderr)
            return 2


def _show_warning(message, category, filename, lineno, file=None, line=None) -> None:
    print(f"warning: {message}", file=sys.stderr)


def run(argv: Sequence[str]) -> CommandResult:
    """Run the command line in-process and capture its output."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return CommandResult(code, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    raise SystemExit(main())
