"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config, io
from .compare import profile_dict, run_compare
from .constructions import const_b_params, construct_b, construct_mn
from .delivery import generate_library, simulate
from .gpda import build_gpda
from .ordering import align_to_profile, const_b_order, exhaustive_order, greedy_order
from .pda import InvalidArrayError, check_gpda, check_pda, symbol_stats, validate_gpda, validate_pda
from .profile import parse_profile
from .rate import LoadValue, load_from_gpda, load_from_pda, tau_values

EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _load_json(load: LoadValue) -> dict:
    return {"numerator": load.messages, "denominator": load.subpacketization,
            "reduced": str(load.fraction), "decimal": load.decimal()}


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _profile_for(pda, text):
    profile = parse_profile(text)
    if len(profile) != pda.columns:
        raise UsageError(f"profile has {len(profile)} caches but the PDA has {pda.columns} columns")
    return profile


def cmd_validate(args) -> int:
    if args.gpda:
        grid, user_to_cache = io.gpda_grid_from_dict(json.loads(Path(args.file).read_text()))
        report = check_gpda(grid, user_to_cache)
    else:
        grid = io.read_pda_grid(args.file)
        report = check_pda(grid)
    if not report.ok:
        print(report, file=sys.stderr)
        if args.json:
            print(json.dumps({"valid": False, "violations": [
                {"condition": v.condition, "rows": [r + 1 for r in v.rows],
                 "cols": [c + 1 for c in v.cols], "message": v.message} for v in report.violations]}))
        return EXIT_INVALID
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.gpda:
        g = validate_gpda(grid, user_to_cache)
        info = {"valid": True, "K": g.columns, "F": g.rows, "Z": g.z_per_column,
                "S": g.symbol_count, "I": g.max_replica, "warnings": list(report.warnings)}
        line = (f"valid ({g.columns},{g.rows},{g.z_per_column},[{g.symbol_count}]x[{g.max_replica}])"
                " generalized PDA")
    else:
        pda = validate_pda(grid)
        g = symbol_stats(pda).regularity
        K, F, Z, S = pda.params
        info = {"valid": True, "K": K, "F": F, "Z": Z, "S": S, "regularity": g}
        line = f"valid ({K},{F},{Z},{S}) PDA" + (f", {g}-regular" if g else "")
    print(json.dumps(info) if args.json else line)
    return 0


def cmd_construct(args) -> int:
    if args.family == "mn":
        pda = construct_mn(args.caches, args.t)
    else:
        pda = construct_b(args.q, args.m)
    _emit(io.dumps(io.pda_to_dict(pda)), args.output)
    return 0


def cmd_order(args) -> int:
    pda = io.read_pda(args.pda)
    profile = _profile_for(pda, args.profile)
    if args.method == "greedy":
        ordering = greedy_order(pda, profile, lookahead=args.lookahead)
    elif args.method == "exhaustive":
        ordering, _ = exhaustive_order(pda, profile)
    else:
        qm = const_b_params(pda)
        if qm is None:
            raise UsageError("const-b ordering needs a PDA with Construction-B column labels")
        ordering = const_b_order(pda, *qm, profile)
    load = ordering.load(profile)
    assignment = [{"position": p + 1, "cache": profile.relabeling[p] + 1,
                   "users": profile.loads[p], "pda_column": k + 1}
                  for p, k in enumerate(ordering.perm)]
    ties = [{"position": pos, "candidates": [[x + 1 for x in c] if isinstance(c, tuple) else c + 1
                                             for c in cands]}
            for pos, cands in ordering.trace.tie_log]
    if args.output:
        io.write_pda(ordering.pda, args.output)
    if args.json:
        print(json.dumps({"method": args.method, "permutation": [k + 1 for k in ordering.perm],
                          "alpha": ordering.trace.alpha, "load": _load_json(load),
                          "intersection_numbers": list(ordering.trace.intersection_numbers),
                          "assignment": assignment, "tie_log": ties,
                          "profile": profile_dict(profile)}))
        return 0
    print(f"method       {args.method}")
    print(f"permutation  {' '.join(str(k + 1) for k in ordering.perm)}")
    print(f"alpha        {ordering.trace.alpha}")
    print(f"load         {load} = {load.fraction} ~ {load.decimal()}")
    for a in assignment:
        print(f"  position {a['position']}: cache {a['cache']} ({a['users']} users) <- PDA column {a['pda_column']}")
    for t in ties:
        print(f"  tie at position {t['position']}: {t['candidates']}")
    return 0


def cmd_gpda(args) -> int:
    pda = io.read_pda(args.pda)
    profile = _profile_for(pda, args.profile)
    gpda = build_gpda(pda, profile.raw)
    for w in gpda.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(io.dumps(io.gpda_to_dict(gpda)), args.output)
    return 0


def cmd_rate(args) -> int:
    pda = io.read_pda(args.pda)
    profile = _profile_for(pda, args.profile)
    aligned = align_to_profile(pda, profile)
    load = load_from_pda(aligned, profile)
    tau = tau_values(aligned)
    out = {"load": _load_json(load), "profile": profile_dict(profile),
           "tau": {str(s + 1): p for s, p in tau.items()}}
    if args.gpda:
        gload = load_from_gpda(io.read_gpda(args.gpda))
        out["gpda_load"] = _load_json(gload)
        out["agree"] = gload.fraction == load.fraction
    if args.json:
        print(json.dumps(out))
    else:
        print(f"load {load} = {load.fraction} ~ {load.decimal()}")
        if args.gpda:
            print(f"gpda load {out['gpda_load']['numerator']}/{out['gpda_load']['denominator']}"
                  f" ({'agrees' if out['agree'] else 'DISAGREES'})")
    return 0 if out.get("agree", True) else EXIT_INVALID


def _parse_demands(spec: str, users: int, files: int, seed: int) -> list[int]:
    if spec == "identity":
        return [k % files for k in range(users)]
    if spec == "random":
        return [int(x) for x in np.random.default_rng(seed + 1).integers(0, files, size=users)]
    try:
        demand = [int(x) - 1 for x in spec.split(",")]
    except ValueError:
        raise UsageError(f"malformed demand list {spec!r}") from None
    if len(demand) != users:
        raise UsageError(f"demand list has {len(demand)} entries for {users} users")
    return demand


def cmd_simulate(args) -> int:
    pda = io.read_pda(args.pda)
    profile = _profile_for(pda, args.profile)
    gpda = build_gpda(pda, profile.raw)
    library = generate_library(args.files, pda.rows, args.subfile_bytes, args.seed)
    demand = _parse_demands(args.demands, gpda.columns, args.files, args.seed)
    run = simulate(gpda, library, demand, check=True)
    expected = load_from_pda(align_to_profile(pda, profile), profile)
    failures = [k + 1 for k, ok in run.decoded.items() if not ok]
    if args.transcript:
        entries = []
        for tx in run.transmissions:
            entry = {"tag": [tx.tag[0] + 1, tx.tag[1]],
                     "users": [k + 1 for k, _, _ in tx.terms],
                     "rows": [j + 1 for _, j, _ in tx.terms],
                     "files": [d + 1 for _, _, d in tx.terms]}
            if args.payloads:
                entry["payload"] = tx.payload.hex()
            entries.append(entry)
        Path(args.transcript).write_text(json.dumps(entries, indent=1) + "\n")
    print(f"users {gpda.columns}, transmissions {len(run.transmissions)}, "
          f"measured load {run.measured_load} ~ {run.measured_load.decimal()}, "
          f"formula load {expected}")
    print(f"decoded {gpda.columns - len(failures)}/{gpda.columns}"
          + (f"; failures: {failures}" if failures else ""))
    if failures or run.measured_load.fraction != expected.fraction:
        return EXIT_INVALID
    return 0


def cmd_compare(args) -> int:
    pda = io.read_pda(args.pda)
    profile = _profile_for(pda, args.profile)
    report = run_compare(pda, profile, lookahead=args.lookahead)
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        sys.stdout.write(report.render())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharedpda",
        description="Shared-cache coded caching schemes from placement delivery arrays.",
        epilog=f"Budgets: {config.CELL_BUDGET_ENV} (cells, default {config.DEFAULT_CELL_BUDGET}), "
               f"{config.PERMUTATION_BUDGET_ENV} (orderings, default {config.DEFAULT_PERMUTATION_BUDGET}).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a PDA or GPDA file")
    p.add_argument("file")
    p.add_argument("--gpda", action="store_true", help="file holds a generalized PDA")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("construct", help="generate a PDA")
    fam = p.add_subparsers(dest="family", required=True)
    mn = fam.add_parser("mn")
    mn.add_argument("--caches", type=int, required=True)
    mn.add_argument("--t", type=int, required=True)
    mn.add_argument("-o", "--output")
    cb = fam.add_parser("const-b")
    cb.add_argument("--q", type=int, required=True)
    cb.add_argument("--m", type=int, required=True)
    cb.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("order", help="reorder PDA columns for a profile")
    p.add_argument("method", choices=["greedy", "exhaustive", "const-b"])
    p.add_argument("--pda", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--lookahead", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="write the reordered PDA here")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("gpda", help="expand a PDA into a generalized PDA")
    p.add_argument("--pda", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gpda)

    p = sub.add_parser("rate", help="delivery load of a PDA for a profile")
    p.add_argument("--pda", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--gpda")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("simulate", help="run placement, delivery and decoding end to end")
    p.add_argument("--pda", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--files", type=int, required=True)
    p.add_argument("--subfile-bytes", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--demands", default="identity", help="identity, random, or 1-based file ids")
    p.add_argument("--transcript")
    p.add_argument("--payloads", action="store_true", help="include hex payloads in the transcript")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="compare ordering strategies")
    p.add_argument("--pda", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--lookahead", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidArrayError as exc:
        print(exc.report, file=sys.stderr)
        return EXIT_INVALID
    except config.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
