"""Executable verification of the package's headline guarantees.

Each check returns a CheckResult with a verdict and the measured numbers, so
the same functions drive the acceptance test suite and the CLI's verify
command.  Checks are deterministic: batch seeds derive from fixed master
seeds unless callers override them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import gf
from .engines import (
    ChoicesExhausted,
    GameRun,
    play_erase_game_scripted,
    simulate_nonrep_search_scripted,
)
from .logs import decode_erase_log, decode_search_log, encode_erase_log, encode_search_log
from .runner import aggregate, run_batch, simulate_one
from .strategies import BEN_STRATEGIES, derive_seed
from .walks import (
    ERASE_WALKS,
    SEARCH_WALKS,
    count_walks_bruteforce,
    count_walks_dp,
    count_walks_recurrence,
)

MASTER_SEED = 20260809

# Expected analytic constants.  The root literals are the published truncated
# decimals read as interval midpoints (0.457... means [0.457, 0.458)).
ERASE_DISCRIMINANT = [-4, -19, 32, -2, 36, 229]
SEARCH_DISCRIMINANT = [-1, -12, 24, 80, 288]
ERASE_ROOT_LITERAL = 0.4575
SEARCH_ROOT_LITERAL = 0.25375
ROOT_TOLERANCE = 5e-4
ERASE_GROWTH_TARGET = 1 / 0.4575
SEARCH_GROWTH_TARGET = 1 / 0.25372
GROWTH_RTOL = 0.02


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


def _timed(fn):
    def wrapper(*args, **kwargs) -> CheckResult:
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - t0
        return result

    return wrapper


def _sample_engine_agreement(
    game: str, alphabet_size: int, budget: int, ben: str, master_seed: int, runs: int
) -> int:
    """Cross-check a few batch runs between the JIT lane and the reference
    engine; returns the number of disagreements (0 expected)."""
    from .fastlane import HAVE_FASTLANE

    if not HAVE_FASTLANE or runs == 0:
        return 0
    bad = 0
    for index in {0, runs // 2, runs - 1}:
        seed = derive_seed(master_seed, index)
        fast = simulate_one(game, alphabet_size, budget, ben, seed, engine="fast")
        pure = simulate_one(game, alphabet_size, budget, ben, seed, engine="pure")
        if fast.to_json() != pure.to_json():
            bad += 1
    return bad


@_timed
def check_strategy_soundness_erase(
    runs_per_ben: int = 2000,
    moves: int = 2000,
    alphabet_size: int = 8,
    master_seed: int = MASTER_SEED,
    workers: int | None = None,
) -> CheckResult:
    """No repetition of size 2 or 3 ever occurs, and every height difference
    lies in {1, 0, -3, -4, ...}, across the whole seeded batch."""
    per_ben: dict = {}
    passed = True
    for offset, ben in enumerate(BEN_STRATEGIES):
        seed = derive_seed(master_seed, 1000 + offset)
        summaries = run_batch("erase", alphabet_size, moves, ben, seed, runs_per_ben, workers)
        agg = aggregate(summaries)
        bad_sizes = sum(
            int(agg["repetition_histogram"].get(str(s), 0)) for s in (2, 3)
        )
        engine_mismatch = _sample_engine_agreement(
            "erase", alphabet_size, moves, ben, seed, runs_per_ben
        )
        ok = agg["violations"] == 0 and bad_sizes == 0 and engine_mismatch == 0
        passed = passed and ok
        per_ben[ben] = {
            "runs": agg["runs"],
            "violations": agg["violations"],
            "size_2_or_3": bad_sizes,
            "mean_final_length": round(agg["mean_final_length"], 2),
            "engine_mismatch": engine_mismatch,
        }
    return CheckResult("strategy_soundness_erase", passed, per_ben)


@_timed
def check_strategy_soundness_search(
    runs_per_ben: int = 2000,
    budget: int = 1000,
    alphabet_size: int = 6,
    master_seed: int = MASTER_SEED,
    workers: int | None = None,
) -> CheckResult:
    """No repetition of size 2-4, every backtrack >= 5, the adversary never
    moves three times in a row, and every builder-to-builder height
    transition classifies into one of the five shapes."""
    per_ben: dict = {}
    passed = True
    for offset, ben in enumerate(BEN_STRATEGIES):
        seed = derive_seed(master_seed, 2000 + offset)
        summaries = run_batch("nonrep", alphabet_size, budget, ben, seed, runs_per_ben, workers)
        agg = aggregate(summaries)
        hist = {int(k): v for k, v in agg["repetition_histogram"].items()}
        bad_sizes = sum(v for k, v in hist.items() if k < 5)
        engine_mismatch = _sample_engine_agreement(
            "nonrep", alphabet_size, budget, ben, seed, runs_per_ben
        )
        ok = agg["violations"] == 0 and bad_sizes == 0 and engine_mismatch == 0
        passed = passed and ok
        per_ben[ben] = {
            "runs": agg["runs"],
            "violations": agg["violations"],
            "backtracks_below_5": bad_sizes,
            "smallest_backtrack": min(hist) if hist else None,
            "mean_final_length": round(agg["mean_final_length"], 2),
            "engine_mismatch": engine_mismatch,
        }
    return CheckResult("strategy_soundness_search", passed, per_ben)


@_timed
def check_roundtrip(
    runs_per_case: int = 1000,
    erase_moves: int = 120,
    search_budget: int = 60,
    master_seed: int = MASTER_SEED,
) -> CheckResult:
    """decode(encode(run)) reproduces the builder's choices exactly, for every
    seeded run, both games, all adversaries."""
    per_case: dict = {}
    passed = True
    case_number = 0
    for game, budget in (("erase", erase_moves), ("nonrep", search_budget)):
        for ben in BEN_STRATEGIES:
            case_number += 1
            failures = 0
            for index in range(runs_per_case):
                seed = derive_seed(master_seed, case_number * 10**6 + index)
                run = simulate_one(game, 8 if game == "erase" else 6, budget, ben, seed)
                if game == "erase":
                    decoded = decode_erase_log(encode_erase_log(run), ben)
                else:
                    decoded = decode_search_log(encode_search_log(run), ben)
                if decoded != run.ann_choices:
                    failures += 1
            ok = failures == 0
            passed = passed and ok
            per_case[f"{game}/{ben}"] = {"runs": runs_per_case, "mismatches": failures}
    return CheckResult("codec_roundtrip", passed, per_case)


def _enumerate_runs(
    game: str, alphabet_size: int, budget: int, ben: str, restrict: set[int] | None
) -> list[tuple[tuple[int, ...], GameRun]]:
    """Every run reachable by enumerating the builder's choices."""
    out: list[tuple[tuple[int, ...], GameRun]] = []

    def extend(script: list[int]) -> None:
        try:
            if game == "erase":
                run = play_erase_game_scripted(alphabet_size, budget, ben, script)
            else:
                run = simulate_nonrep_search_scripted(alphabet_size, budget, ben, script)
        except ChoicesExhausted as stop:
            options = stop.candidates
            if restrict is not None:
                options = [c for c in options if c in restrict]
            for choice in options:
                extend(script + [choice])
            return
        out.append((tuple(script), run))

    extend([])
    return out


@_timed
def check_injectivity_exhaustive() -> CheckResult:
    """Distinct builder choice sequences give distinct logs, exhaustively, at
    tiny budgets: every choice stream decodes back from its own log alone."""
    per_case: dict = {}
    passed = True
    for ben in BEN_STRATEGIES:
        for m in (1, 2, 3, 4):
            runs = _enumerate_runs("erase", 8, 2 * m, ben, restrict={0, 1, 2, 3})
            logs = {}
            collisions = 0
            decode_failures = 0
            for choices, run in runs:
                log = encode_erase_log(run)
                key = (tuple(log.differences), tuple(log.final.symbols))
                if key in logs and logs[key] != choices:
                    collisions += 1
                logs[key] = choices
                if decode_erase_log(log, ben) != list(choices):
                    decode_failures += 1
            ok = collisions == 0 and decode_failures == 0 and len(logs) == len(runs)
            passed = passed and ok
            per_case[f"erase/{ben}/M={m}"] = {
                "sequences": len(runs),
                "distinct_logs": len(logs),
                "collisions": collisions,
                "decode_failures": decode_failures,
            }
        for m in (1, 2, 3):
            runs = _enumerate_runs("nonrep", 6, m, ben, restrict=None)
            logs = {}
            collisions = 0
            decode_failures = 0
            for choices, run in runs:
                log = encode_search_log(run)
                key = (
                    tuple(log.differences),
                    tuple(sorted(log.types.items())),
                    tuple(log.final.symbols),
                )
                if key in logs and logs[key] != choices:
                    collisions += 1
                logs[key] = choices
                if decode_search_log(log, ben) != list(choices):
                    decode_failures += 1
            ok = collisions == 0 and decode_failures == 0 and len(logs) == len(runs)
            passed = passed and ok
            per_case[f"nonrep/{ben}/M={m}"] = {
                "sequences": len(runs),
                "distinct_logs": len(logs),
                "collisions": collisions,
                "decode_failures": decode_failures,
            }
    return CheckResult("codec_injectivity_exhaustive", passed, per_case)


@_timed
def check_census(
    brute_max: int = 16, recurrence_max: int = 60, growth_order: int = 400
) -> CheckResult:
    """Brute force, dynamic program, series coefficients and the
    decomposition recurrence all agree; growth estimates sit within 2% of the
    reciprocal discriminant roots."""
    details: dict = {}
    passed = True
    for spec, equation, spots, target in (
        (ERASE_WALKS, "erase", {5: 1, 6: 1}, ERASE_GROWTH_TARGET),
        (SEARCH_WALKS, "search", {3: 1, 4: 4}, SEARCH_GROWTH_TARGET),
    ):
        table = count_walks_dp(spec, growth_order)
        series = gf.solve_series(equation, brute_max)
        brute = [count_walks_bruteforce(spec, m) for m in range(1, brute_max + 1)]
        agree = (
            brute == table.counts[:brute_max]
            and brute == series.counts()[:brute_max]
        )
        recurrence_ok = (
            count_walks_recurrence(spec, recurrence_max) == table.counts[:recurrence_max]
        )
        spots_ok = all(brute[m - 1] == v for m, v in spots.items())
        estimate = float(gf.growth_rate_estimate(table.counts))
        growth_ok = abs(estimate - target) / target <= GROWTH_RTOL
        ok = agree and recurrence_ok and spots_ok and growth_ok
        passed = passed and ok
        details[spec.name] = {
            "triple_agreement_to": brute_max if agree else 0,
            "recurrence_agreement_to": recurrence_max if recurrence_ok else 0,
            "spot_values": {str(m): brute[m - 1] for m in spots},
            "growth_estimate": round(estimate, 4),
            "growth_target": round(target, 4),
        }
    return CheckResult("walk_census", passed, details)


@_timed
def check_gf() -> CheckResult:
    """Discriminants match the expected polynomials up to a rational scalar,
    have a unique positive root in (0, 1] at the published location, satisfy
    the strict bounds, and annihilate the series through order 40."""
    details: dict = {}
    passed = True
    for equation, expected, literal, bound in (
        ("erase", ERASE_DISCRIMINANT, ERASE_ROOT_LITERAL, "gt_inv_sqrt5"),
        ("search", SEARCH_DISCRIMINANT, SEARCH_ROOT_LITERAL, "gt_quarter"),
    ):
        poly = gf.defining_polynomial(equation)
        disc = gf.discriminant_wrt_t(poly)
        scalar = gf.proportionality_scalar(disc, expected)
        roots = gf.isolate_positive_roots(disc, (Fraction(0), Fraction(1)), eps=1e-9)
        root_ok = len(roots) == 1 and abs(roots[0].value - literal) <= ROOT_TOLERANCE
        certified = gf.certify_bound(disc, bound)
        series = gf.solve_series(equation, 40)
        residue = gf.apply_to_series(poly, series)
        annihilates = all(c == 0 for c in residue)
        ok = scalar is not None and root_ok and certified and annihilates
        passed = passed and ok
        details[equation] = {
            "discriminant": gf.poly_text(disc),
            "scalar_vs_expected": str(scalar),
            "roots_in_unit_interval": len(roots),
            "root": roots[0].value if roots else None,
            "bound": bound,
            "bound_certified": certified,
            "series_annihilated_to": 40 if annihilates else 0,
        }
    return CheckResult("generating_functions", passed, details)


@_timed
def check_growth_of_play(
    runs: int = 100,
    erase_moves: int = 2000,
    search_budget: int = 1000,
    master_seed: int = MASTER_SEED,
    workers: int | None = None,
) -> CheckResult:
    """Mean final word lengths clear the loose floors: a tenth of the move
    budget for the erase game, one hundred symbols for the search."""
    details: dict = {}
    passed = True
    for game, alphabet_size, budget, floor in (
        ("erase", 8, erase_moves, 0.1 * erase_moves),
        ("nonrep", 6, search_budget, 100.0),
    ):
        for offset, ben in enumerate(BEN_STRATEGIES):
            seed = derive_seed(master_seed, 3000 + offset)
            summaries = run_batch(game, alphabet_size, budget, ben, seed, runs, workers)
            mean = aggregate(summaries)["mean_final_length"]
            ok = mean > floor
            passed = passed and ok
            details[f"{game}/{ben}"] = {"mean_final_length": round(mean, 2), "floor": floor}
    return CheckResult("growth_of_play", passed, details)


CHECK_GROUPS = {
    "roundtrip": ("codec_roundtrip", "codec_injectivity_exhaustive"),
    "invariants": (
        "strategy_soundness_erase",
        "strategy_soundness_search",
        "growth_of_play",
    ),
    "census": ("walk_census",),
    "gf": ("generating_functions",),
}


def run_checks(
    which: str = "all",
    runs_per_ben: int | None = None,
    workers: int | None = None,
    master_seed: int = MASTER_SEED,
) -> list[CheckResult]:
    """Run a named group of checks (or all of them) and return the verdicts."""
    if which != "all" and which not in CHECK_GROUPS:
        raise ValueError(
            f"unknown check group {which!r}; expected all or one of {sorted(CHECK_GROUPS)}"
        )
    wanted = (
        [name for group in CHECK_GROUPS.values() for name in group]
        if which == "all"
        else list(CHECK_GROUPS[which])
    )
    results = []
    for name in wanted:
        if name == "codec_roundtrip":
            kwargs = {"master_seed": master_seed}
            if runs_per_ben is not None:
                kwargs["runs_per_case"] = runs_per_ben
            results.append(check_roundtrip(**kwargs))
        elif name == "codec_injectivity_exhaustive":
            results.append(check_injectivity_exhaustive())
        elif name == "strategy_soundness_erase":
            kwargs = {"master_seed": master_seed, "workers": workers}
            if runs_per_ben is not None:
                kwargs["runs_per_ben"] = runs_per_ben
            results.append(check_strategy_soundness_erase(**kwargs))
        elif name == "strategy_soundness_search":
            kwargs = {"master_seed": master_seed, "workers": workers}
            if runs_per_ben is not None:
                kwargs["runs_per_ben"] = runs_per_ben
            results.append(check_strategy_soundness_search(**kwargs))
        elif name == "growth_of_play":
            results.append(check_growth_of_play(master_seed=master_seed, workers=workers))
        elif name == "walk_census":
            results.append(check_census())
        elif name == "generating_functions":
            results.append(check_gf())
    return results
