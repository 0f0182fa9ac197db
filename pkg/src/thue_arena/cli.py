"""Command-line surface: simulation batches, verification suites,
census / series / discriminant reports, interactive replay, and the play
service launcher."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import gf, verification
from .runner import aggregate, run_batch
from .service import replay_human_run
from .strategies import BEN_STRATEGIES
from .walks import count_walks_dp, count_walks_with_sum, spec_for_game

SEED_ENV_VAR = "THUE_ARENA_SEED"


def parse_seed(text: str) -> int:
    """Seeds read as decimal or 0x-prefixed hex."""
    text = text.strip()
    if text.lower().startswith(("0x", "-0x")):
        return int(text, 16)
    return int(text, 10)


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    return parse_seed(env) if env else 0


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=parse_seed,
        default=None,
        help=f"decimal or 0x-hex; falls back to ${SEED_ENV_VAR}, then 0",
    )


def _resolve_seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_simulate(args: argparse.Namespace) -> int:
    game = args.game
    symbols = args.symbols if args.symbols is not None else (8 if game == "erase" else 6)
    budget = args.moves if game == "erase" else args.ann_budget
    seed = _resolve_seed(args)
    summaries = run_batch(
        game, symbols, budget, args.ben, seed, args.runs,
        workers=args.workers, engine=args.engine,
    )
    report = {
        "config": {
            "game": game,
            "symbols": symbols,
            ("moves" if game == "erase" else "ann_budget"): budget,
            "ben": args.ben,
            "seed": seed,
            "runs": args.runs,
        },
        "aggregate": aggregate(summaries),
        "runs": [s.to_json() for s in summaries],
    }
    if args.format == "json":
        _write_output(json.dumps(report, indent=2), args.out)
    else:
        lines = ["run_index,seed,final_length,total_moves,ann_moves,violations"]
        lines += [
            f"{s.run_index},{s.seed},{s.final_length},{s.total_moves},{s.ann_moves},{len(s.violations)}"
            for s in summaries
        ]
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = verification.run_checks(
        which=args.which,
        runs_per_ben=args.runs,
        workers=args.workers,
        master_seed=args.seed if args.seed is not None else verification.MASTER_SEED,
    )
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}: {result.name} ({result.seconds:.1f}s)")
    verdict = {"passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}
    if args.out:
        _write_output(json.dumps(verdict, indent=2), args.out)
    elif args.json:
        print(json.dumps(verdict, indent=2))
    return 0 if verdict["passed"] else 1


def cmd_count(args: argparse.Namespace) -> int:
    spec = spec_for_game(args.game)
    if args.sum is not None:
        value = count_walks_with_sum(spec, args.max_length, args.sum)
        _write_output(str(value), args.out)
        return 0
    table = count_walks_dp(spec, args.max_length)
    if args.format == "csv":
        _write_output(table.to_csv(), args.out)
    elif args.format == "json":
        _write_output(table.to_json(), args.out)
    else:
        _write_output(",".join(str(c) for c in table.counts), args.out)
    return 0


def cmd_series(args: argparse.Namespace) -> int:
    equation = "erase" if args.game == "erase" else "search"
    series = gf.solve_series(equation, args.order)
    _write_output(gf.series_text(series), args.out)
    return 0


def cmd_discriminant(args: argparse.Namespace) -> int:
    equation = "erase" if args.game == "erase" else "search"
    poly = gf.defining_polynomial(equation)
    disc = gf.discriminant_wrt_t(poly)
    expected = (
        verification.ERASE_DISCRIMINANT
        if equation == "erase"
        else verification.SEARCH_DISCRIMINANT
    )
    scalar = gf.proportionality_scalar(disc, expected)
    roots = gf.isolate_positive_roots(disc, (Fraction(0), Fraction(1)), eps=1e-9)
    bound = "gt_inv_sqrt5" if equation == "erase" else "gt_quarter"
    certified = gf.certify_bound(disc, bound)
    report = {
        "discriminant": gf.poly_text(disc),
        "scalar_vs_reference": str(scalar),
        "roots": [r.to_json() for r in roots],
        "bound": bound,
        "bound_certified": certified,
    }
    if args.json:
        _write_output(json.dumps(report, indent=2), args.out)
    else:
        lines = [
            f"discriminant: {report['discriminant']}",
            f"scalar vs reference polynomial: {scalar}",
        ]
        for r in roots:
            lines.append(f"root ~= {r.value:.6f} in ({r.low}, {r.high}]  simple={r.simple}")
        lines.append(f"bound {bound} certified: {certified}")
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    symbols = [int(s) for s in args.human.split(",") if s.strip() != ""] if args.human else []
    run, events = replay_human_run(
        args.game,
        args.symbols,
        _resolve_seed(args),
        symbols,
    )
    _write_output(json.dumps({"run": run.to_json(), "events": events}, indent=2), args.out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thue-arena",
        description="Adversarial repetition games: simulate, verify, analyze, play.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a seeded batch of games")
    p.add_argument("--game", choices=("erase", "nonrep"), default="erase")
    p.add_argument("--symbols", type=int, default=None, help="alphabet size (8 erase / 6 nonrep)")
    p.add_argument("--moves", type=int, default=2000, help="total moves (erase game)")
    p.add_argument("--ann-budget", type=int, default=1000, help="builder draws (nonrep game)")
    p.add_argument("--ben", choices=BEN_STRATEGIES, default="mimic")
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--engine", choices=("auto", "pure", "fast"), default="auto")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_seed(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run verification checks; exit 0 iff all pass")
    p.add_argument(
        "--which",
        choices=("roundtrip", "invariants", "census", "gf", "all"),
        default="all",
    )
    p.add_argument("--runs", type=int, default=None, help="override batch size per case")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", action="store_true", help="print the JSON verdict")
    p.add_argument("--out", default=None, help="write the JSON verdict to a file")
    _add_seed(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="walk census table")
    p.add_argument("--game", choices=("erase", "nonrep", "search"), default="erase")
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--sum", type=int, default=None, help="count walks with this total instead")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="generating-function coefficients")
    p.add_argument("--game", choices=("erase", "nonrep", "search"), default="erase")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("discriminant", help="defining-polynomial discriminant and roots")
    p.add_argument("--game", choices=("erase", "nonrep", "search"), default="erase")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("replay", help="replay human moves through the session engine")
    p.add_argument("--game", choices=("erase", "nonrep"), default="erase")
    p.add_argument("--symbols", type=int, default=None)
    p.add_argument("--human", default="", help="comma-separated adversary symbols")
    p.add_argument("--out", default=None)
    _add_seed(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="launch the interactive play service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-level", default="info")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
