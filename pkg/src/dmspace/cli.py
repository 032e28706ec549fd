"""Batch command-line interface.

Reads a JSON problem file (group, list, optional window/seed), dispatches
one computation, and writes a single JSON document to stdout.  Exit codes:
0 success, 1 invalid input, 2 property violation (certificate included),
3 window/resource exhaustion.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .chars import (bases, big_cells, cocircuit_indices, delta,
                    rational_subspaces, special_points, zonotope_points)
from .dm import (d_space_basis, deletion_restriction, dm_basis, dm_rank,
                 is_member_dm, local_decomposition)
from .errors import (DmspaceError, NonGeneric, UndeterminedValue,
                     WindowTooSmall)
from .filtration import f_decompose, generators_F, is_member_F
from .partition import cell_quasipoly, partition_count
from .verify import print_report, run_suite
from .windows import Window, default_window


def _parse_args(argv):
    ap = argparse.ArgumentParser(
        prog="dmspace",
        description="exact invariants of a finite character list")
    ap.add_argument("command", choices=[
        "subspaces", "cocircuits", "bases", "delta", "points", "cells",
        "zonotope-points", "dm-basis", "dm-check", "dm-rank", "d-space",
        "localize", "exact-seq", "f-check", "f-decompose", "gen-f",
        "partition", "cell-quasipoly", "verify"])
    ap.add_argument("problem", nargs="?", help="JSON problem file")
    ap.add_argument("--window", type=int, help="window radius override")
    ap.add_argument("--seed", type=int, default=None, help="seed override")
    ap.add_argument("--out", help="write the JSON document to this file")
    ap.add_argument("--format", choices=["json", "tsv"], default="json")
    ap.add_argument("--u", help="rational vector a/b,c/d,... for zonotope-points")
    ap.add_argument("--f", dest="table", help="JSON value-table file")
    ap.add_argument("--a", type=int, help="list index for exact-seq")
    ap.add_argument("--mode", choices=["strict", "translated"],
                    default="strict")
    ap.add_argument("--lambda", dest="lam", help="integer vector v1,v2,...")
    ap.add_argument("--cell", type=int, help="big-cell index")
    ap.add_argument("--codim", type=int, default=0)
    ap.add_argument("--suite", default="all")
    return ap.parse_args(argv)


def _emit(doc, args):
    if args.format == "tsv":
        lines = []
        _flatten("", doc, lines)
        text = "\n".join(f"{k}\t{v}" for k, v in lines) + "\n"
    else:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, value))


def _load_problem(args):
    if not args.problem:
        raise ValueError("a problem file is required for this command")
    with open(args.problem, encoding="utf-8") as fh:
        obj = json.load(fh)
    X, window, seed = jsonio.load_problem(obj)
    if args.window is not None:
        window = Window(X.group, args.window)
    if window is None:
        window = default_window(X)
    if args.seed is not None:
        seed = args.seed
    return X, window, seed


def _load_table(args, group):
    if not args.table:
        raise ValueError("--f FILE is required for this command")
    with open(args.table, encoding="utf-8") as fh:
        obj = json.load(fh)
    return jsonio.table_from_json(group, obj)


def main(argv=None):
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    try:
        code, doc = _dispatch(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _emit({"error": "invalid-input", "reason": str(exc)}, args)
        return 1
    except (WindowTooSmall, NonGeneric, UndeterminedValue) as exc:
        _emit({"error": "window-too-small", "reason": str(exc)}, args)
        return 3
    except DmspaceError as exc:
        _emit({"error": type(exc).__name__, "reason": str(exc)}, args)
        return 1
    _emit(doc, args)
    return code


def _dispatch(args):
    if args.command == "verify":
        reports = run_suite(args.suite, seed=args.seed or 0)
        ok = print_report(reports, echo=lambda s: print(s, file=sys.stderr))
        return (0 if ok else 2), {"suites": reports, "pass": ok}

    X, window, seed = _load_problem(args)
    group = X.group

    if args.command == "subspaces":
        by_dim = rational_subspaces(X)
        return 0, {str(d): [jsonio.subspace_to_json(r) for r in subs]
                   for d, subs in sorted(by_dim.items())}

    if args.command == "cocircuits":
        return 0, {"cocircuits": [list(c) for c in cocircuit_indices(X)]}

    if args.command == "bases":
        return 0, {"bases": [{"indices": list(c), "index": d}
                             for c, d in bases(X)]}

    if args.command == "delta":
        d = delta(X)
        return 0, {"delta": d, "z_rank": d * group.torsion_size}

    if args.command == "points":
        if args.codim == 0:
            pts = special_points(X, 0)
            return 0, {"points": [jsonio.torsion_point_to_json(p) for p in pts]}
        descs = special_points(X, args.codim)
        return 0, {"subgroups": [
            {"indices": list(d.indices),
             "characters": jsonio.group_to_json(d.characters)}
            for d in descs]}

    if args.command == "cells":
        cells = big_cells(X)
        return 0, {"cells": [jsonio.cell_to_json(c) for c in cells]}

    if args.command == "zonotope-points":
        u = None
        if args.u:
            u = tuple(Fraction(part) for part in args.u.split(","))
        pts = zonotope_points(X, u=u, seed=seed)
        return 0, {"count": len(pts),
                   "points": [jsonio.element_to_json(p) for p in pts]}

    if args.command == "dm-basis":
        basis = dm_basis(X)
        out = []
        for b in basis:
            out.append({
                "basis": list(b.provenance["basis"]),
                "index": b.provenance["index"],
                "sublist": list(b.provenance["sublist"]),
                "rep": jsonio.element_to_json(b.provenance["rep"]),
                "table": jsonio.table_to_json(b.func, window),
            })
        return 0, {"elements": out, "count": len(out)}

    if args.command == "dm-check":
        f, fwin = _load_table(args, group)
        use = window if args.window is not None else fwin
        cert = is_member_dm(f, X, use)
        doc = {"member": cert.ok} | jsonio.certificate_to_json(cert)
        return (0 if cert.ok else 2), doc

    if args.command == "dm-rank":
        r = dm_rank(X, window)
        return 0, {"rank": r, "z_rank": r * group.torsion_size,
                   "window": window.radius}

    if args.command == "d-space":
        basis = d_space_basis(X)
        out = []
        for p in basis:
            out.append([{"exponents": list(e),
                         "coefficient": jsonio.frac_str(p.coeffs[e])}
                        for e in p.monomials()])
        return 0, {"dimension": len(basis), "polynomials": out}

    if args.command == "localize":
        f, fwin = _load_table(args, group)
        use = window if args.window is not None else fwin
        qp = local_decomposition(f, X, use)
        return 0, jsonio.quasipolynomial_to_json(qp)

    if args.command == "exact-seq":
        if args.a is None:
            raise ValueError("--a INDEX is required for exact-seq")
        rep = deletion_restriction(X, args.a, window=window)
        doc = {
            "removed": jsonio.element_to_json(rep.removed),
            "quotient_group": jsonio.group_to_json(rep.quotient_group),
            "delta": {"X": rep.delta_X, "Z": rep.delta_Z, "Zt": rep.delta_Zt},
            "checks": {
                "rank_identity": rep.rank_identity_ok,
                "composite_zero": rep.composite_zero_ok,
                "lifted_in_dm": rep.lifted_in_dm_ok,
                "images_in_dm": rep.images_in_dm_ok,
                "images_span": rep.images_span_ok,
                "kernel_rank": rep.kernel_rank_ok,
            },
            "ok": rep.ok(),
        }
        return (0 if rep.ok() else 2), doc

    if args.command == "f-check":
        f, fwin = _load_table(args, group)
        use = window if args.window is not None else fwin
        cert = is_member_F(f, X, use, mode=args.mode)
        doc = jsonio.filtration_certificate_to_json(cert)
        return (0 if cert.ok else 2), doc

    if args.command == "f-decompose":
        f, fwin = _load_table(args, group)
        use = window if args.window is not None else fwin
        dec = f_decompose(f, X, window=use)
        comps = []
        for r, g in dec.components.items():
            sub_window = Window(g.group, dec.core.radius)
            comps.append({"subspace": jsonio.subspace_to_json(r),
                          "table": jsonio.table_to_json(g, sub_window)})
        return 0, {"components": comps,
                   "remainder": jsonio.table_to_json(dec.remainder, dec.core),
                   "core_radius": dec.core.radius}

    if args.command == "gen-f":
        gens = generators_F(X)
        return 0, {"count": len(gens),
                   "generators": [jsonio.table_to_json(g, window)
                                  for g in gens]}

    if args.command == "partition":
        if args.lam is None:
            raise ValueError("--lambda V is required for partition")
        lam = group.element(tuple(int(x) for x in args.lam.split(",")))
        return 0, {"count": partition_count(X, lam)}

    if args.command == "cell-quasipoly":
        cells = big_cells(X)
        if args.cell is None or not 0 <= args.cell < len(cells):
            raise ValueError(f"--cell I must be in [0, {len(cells)})")
        q = cell_quasipoly(X, cells[args.cell], window=window)
        return 0, {"cell": jsonio.cell_to_json(cells[args.cell]),
                   "coefficients": list(q.provenance["coefficients"]),
                   "table": jsonio.table_to_json(q.func, window)}

    raise ValueError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
