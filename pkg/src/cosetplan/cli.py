"""Command-line entry point.

Subcommands:

* analyze            -- print a code's exact parameters as JSON
* plan               -- factor a demand file into a scheme bundle directory
* simulate           -- run randomized end-to-end trials of a planned bundle
* bench              -- sweep demand sizes and emit measured-vs-bound CSV
* reproduce-example  -- check the bundled reference scheme end to end

Exit codes: 0 success, 1 validation error, 2 budget exceeded,
3 reproduction assertion failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import budget
from .budget import BudgetError
from .codes import (
    LinearCode,
    from_parity_check,
    golay_binary,
    golay_ternary,
    hamming_code,
    repetition_code,
)
from .fieldmat import (
    FieldMatrix,
    parse_matrix,
    parse_matrix_json,
    serialize_matrix,
)
from .planner import (
    DemandMatrix,
    assemble_scheme,
    evaluate_bounds,
    maximal_basis_demand,
    plan,
)
from .reference import run_reference_check
from .sim import random_trials
from .syndrome import build_table, load_table, save_table


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit 1, keeping 2 for budgets."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def resolve_code(token: str, *, max_codewords: int, max_table_entries: int) -> LinearCode:
    """Turn a selector token into an analyzed code.

    Accepted forms: golay-ternary, golay-binary, hamming:q:r,
    repetition:q:n, file:PATH (text matrix format, or JSON for *.json).
    """
    kwargs = {"max_codewords": max_codewords, "max_table_entries": max_table_entries}
    if token == "golay-ternary":
        return golay_ternary(**kwargs)
    if token == "golay-binary":
        return golay_binary(**kwargs)
    head, _, rest = token.partition(":")
    if head == "hamming":
        q, r = _two_ints(rest, token)
        return hamming_code(q, r, **kwargs)
    if head == "repetition":
        q, n = _two_ints(rest, token)
        return repetition_code(q, n, **kwargs)
    if head == "file":
        if not rest:
            raise ValueError(f"selector {token!r} is missing a path")
        text = Path(rest).read_text()
        h = parse_matrix_json(text) if rest.endswith(".json") else parse_matrix(text)
        return from_parity_check(h, name=token, **kwargs)
    raise ValueError(
        f"unknown code selector {token!r}; expected golay-ternary, golay-binary, "
        "hamming:q:r, repetition:q:n, or file:PATH"
    )


def _two_ints(rest: str, token: str) -> tuple[int, int]:
    parts = rest.split(":")
    if len(parts) != 2:
        raise ValueError(f"selector {token!r} needs exactly two integer parameters")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"selector {token!r} has non-integer parameters") from None


def _code_params_dict(code: LinearCode) -> dict:
    mu = code.packing_density
    return {
        "n": code.length,
        "k": code.dimension,
        "d": code.min_distance,
        "tau": code.packing_radius,
        "rho": code.covering_radius,
        "mu_tau": f"{mu.numerator}/{mu.denominator}",
        "class": code.classification,
    }


def cmd_analyze(args) -> int:
    code = resolve_code(
        args.code,
        max_codewords=args.budget_codewords,
        max_table_entries=args.budget_table_entries,
    )
    print(json.dumps(_code_params_dict(code)))
    return 0


def _read_demand(args) -> FieldMatrix:
    text = Path(args.demand).read_text()
    if args.matrix_format == "json":
        return parse_matrix_json(text)
    return parse_matrix(text)


def cmd_plan(args) -> int:
    code = resolve_code(
        args.code,
        max_codewords=args.budget_codewords,
        max_table_entries=args.budget_table_entries,
    )
    if args.maximal_basis:
        demand = maximal_basis_demand(
            code.q, code.num_checks, max_columns=args.budget_table_entries
        )
    else:
        demand = DemandMatrix(
            _read_demand(args), allow_duplicate_columns=args.allow_duplicate_columns
        )

    table = None
    if args.table_cache:
        cache = Path(args.table_cache)
        if cache.exists():
            table = load_table(cache, code.H)
        else:
            table = build_table(code.H, max_table_entries=args.budget_table_entries)
            save_table(table, cache)

    scheme = plan(demand, code, table=table)
    bounds = evaluate_bounds(code, scheme)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "D.txt").write_text(serialize_matrix(scheme.D))
    (out / "E.txt").write_text(serialize_matrix(scheme.E))
    (out / "F.txt").write_text(serialize_matrix(scheme.demand.matrix))
    doc = {
        "code": code.name,
        "q": code.q,
        "gamma": scheme.total_cost,
        "lambda": scheme.max_load,
        "jobs": [list(s) for s in scheme.jobs],
        "audiences": [list(t) for t in scheme.audiences],
        "bounds": bounds.to_json_dict(),
    }
    (out / "scheme.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(
        json.dumps(
            {
                "out": str(out),
                "gamma": scheme.total_cost,
                "lambda": scheme.max_load,
                "bounds": bounds.to_json_dict(),
            }
        )
    )
    return 0


def load_scheme_bundle(path: Path):
    """Rebuild a ComputingScheme from a bundle directory written by plan."""
    f = parse_matrix((path / "F.txt").read_text())
    d = parse_matrix((path / "D.txt").read_text())
    e = parse_matrix((path / "E.txt").read_text())
    demand = DemandMatrix(f, allow_duplicate_columns=True)
    return assemble_scheme(demand, d, e)


def cmd_simulate(args) -> int:
    scheme = load_scheme_bundle(Path(args.scheme))
    agg = random_trials(scheme, args.trials, args.seed)
    if args.per_trial_csv:
        with open(args.per_trial_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial", "passed"])
            for i, ok in enumerate(agg.per_trial_passed):
                writer.writerow([i, int(ok)])
    print(
        json.dumps(
            {
                "trials": agg.trials,
                "pass_rate": agg.pass_rate,
                "lambda": agg.delay,
                "message_count": agg.message_count,
                "seed": agg.seed,
            }
        )
    )
    return 0


def cmd_bench(args) -> int:
    lengths = [tok for tok in args.lengths.split(",") if tok.strip()]
    if not lengths:
        raise ValueError("empty length sweep")
    try:
        lengths = [int(tok) for tok in lengths]
    except ValueError:
        raise ValueError(f"non-integer length in sweep {args.lengths!r}") from None

    code = resolve_code(
        args.code,
        max_codewords=args.budget_codewords,
        max_table_entries=args.budget_table_entries,
    )
    num_syndromes = code.q**code.num_checks
    for length in lengths:
        if not 1 <= length <= num_syndromes:
            raise ValueError(
                f"demand size {length} outside [1, q^K] = [1, {num_syndromes}] "
                f"for {code.name}"
            )

    rng = np.random.default_rng(args.seed)
    rows = []
    for length in lengths:
        for trial in range(args.trials):
            picked = np.sort(rng.choice(num_syndromes, size=length, replace=False))
            powers = code.q ** np.arange(code.num_checks, dtype=np.int64)
            cols = (picked[None, :] // powers[:, None]) % code.q
            demand = DemandMatrix(FieldMatrix(code.q, cols))
            start = time.perf_counter()
            scheme = plan(demand, code)
            elapsed = time.perf_counter() - start
            bounds = evaluate_bounds(code, scheme)
            rows.append(
                {
                    "L": length,
                    "trial": trial,
                    "gamma": scheme.total_cost,
                    "lambda": scheme.max_load,
                    "gamma_bound": bounds.total_cost_ub,
                    "lambda_bound": bounds.max_load_ub,
                    "plan_seconds": round(elapsed, 6),
                }
            )

    if args.format == "json":
        print(json.dumps(rows))
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    return 0


def cmd_reproduce(args) -> int:
    checks = run_reference_check(corrupt=args.corrupt)
    failed = 0
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failed += not ok
    if failed:
        print(f"{failed} of {len(checks)} checks FAILED", file=sys.stderr)
        return 3
    print(f"all {len(checks)} checks passed")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cosetplan", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--budget-table-entries",
        type=int,
        default=budget.MAX_TABLE_ENTRIES,
        help="refuse syndrome tables larger than this many entries",
    )
    parser.add_argument(
        "--budget-codewords",
        type=int,
        default=budget.MAX_CODEWORDS,
        help="refuse codeword enumerations larger than this",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default=None,
        help="output format (csv applies to bench only)",
    )
    parser.add_argument("--seed", type=int, default=0, help="RNG seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[], help="print code parameters as JSON")
    p.add_argument("code", help="code selector, e.g. golay-ternary or hamming:2:3")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("plan", help="factor a demand matrix into a scheme bundle")
    p.add_argument("--code", required=True, help="code selector")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--demand", help="path to the demand matrix file")
    src.add_argument(
        "--maximal-basis",
        action="store_true",
        help="use the full q^K-column demand instead of a file",
    )
    p.add_argument("--out", required=True, help="bundle output directory")
    p.add_argument(
        "--allow-duplicate-columns",
        action="store_true",
        help="plan demands with repeated columns (with a warning)",
    )
    p.add_argument(
        "--matrix-format",
        choices=("text", "json"),
        default="text",
        help="format of the demand file",
    )
    p.add_argument("--table-cache", help="path to a decoder table cache file to reuse or create")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="run randomized trials of a planned bundle")
    p.add_argument("--scheme", required=True, help="bundle directory written by plan")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--per-trial-csv", help="also write one CSV row per trial")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="sweep demand sizes; emit measured vs bounds")
    p.add_argument("--code", required=True, help="code selector")
    p.add_argument("--lengths", required=True, help="comma-separated demand sizes, e.g. 12,50,243")
    p.add_argument("--trials", type=int, default=1, help="random demands per size")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser(
        "reproduce-example", help="re-plan the bundled reference scheme and verify it"
    )
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "bench":
        print("cosetplan: error: csv output is only available for bench", file=sys.stderr)
        return 1
    if args.format is None:
        args.format = "csv" if args.command == "bench" else "json"
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"cosetplan: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"cosetplan: error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
