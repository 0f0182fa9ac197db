"""Batch simulation: seeded run fan-out, per-run summaries, invariant scans.

Each run of a batch gets an independent seed derived from (master seed, run
index), so results are identical whether the batch executes serially or on a
process pool, and are merged in run-index order either way.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .engines import ANN, BEN, GameRun, play_erase_game, simulate_nonrep_search
from .logs import classify_search_transitions
from .strategies import derive_seed


@dataclass
class RunSummary:
    run_index: int
    seed: int
    final_length: int
    total_moves: int
    ann_moves: int
    repetition_histogram: dict[int, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "run_index": self.run_index,
            "seed": self.seed,
            "final_length": self.final_length,
            "total_moves": self.total_moves,
            "ann_moves": self.ann_moves,
            "repetition_histogram": {str(k): v for k, v in sorted(self.repetition_histogram.items())},
            "violations": list(self.violations),
        }


def scan_run(run: GameRun) -> list[str]:
    """All invariant violations of a finished run; empty for a sound strategy."""
    problems: list[str] = []
    prev_height = 0
    for m in run.moves:
        expected = prev_height + 1 - m.repetition_size
        if m.height_after != expected:
            problems.append(
                f"move {m.move_index}: height {m.height_after}, expected {expected}"
            )
        prev_height = m.height_after

    if run.config.game == "erase":
        for m in run.moves:
            if m.repetition_size in (2, 3):
                problems.append(
                    f"move {m.move_index}: repetition of size {m.repetition_size}"
                )
            expected_mover = ANN if m.move_index % 2 == 1 else BEN
            if m.mover != expected_mover:
                problems.append(f"move {m.move_index}: mover {m.mover} out of turn")
            d = 1 - m.repetition_size
            if d != 1 and d != 0 and d > -3:
                problems.append(f"move {m.move_index}: difference {d} outside the step set")
        if len(run.ann_choices) != sum(1 for m in run.moves if m.mover == ANN):
            problems.append("builder choice list does not match her move count")
    else:
        length_before = 0
        ben_streak = 0
        for m in run.moves:
            if m.repetition_size in (2, 3, 4):
                problems.append(
                    f"move {m.move_index}: repetition of size {m.repetition_size}"
                )
            if m.repetition_size == 1:
                problems.append(f"move {m.move_index}: size-1 repetition erased")
            expected_mover = ANN if length_before % 2 == 0 else BEN
            if m.mover != expected_mover:
                problems.append(f"move {m.move_index}: mover {m.mover} out of turn")
            if m.mover == BEN:
                ben_streak += 1
                if ben_streak >= 3:
                    problems.append(
                        f"move {m.move_index}: adversary moved three times in a row"
                    )
            else:
                ben_streak = 0
            length_before = m.height_after
        _, shape_problems = classify_search_transitions(run)
        problems.extend(shape_problems)
    return problems


def summarize_run(run: GameRun, run_index: int) -> RunSummary:
    histogram: dict[int, int] = {}
    for m in run.moves:
        if m.repetition_size:
            histogram[m.repetition_size] = histogram.get(m.repetition_size, 0) + 1
    return RunSummary(
        run_index=run_index,
        seed=run.config.seed,
        final_length=len(run.final),
        total_moves=len(run.moves),
        ann_moves=len(run.ann_choices),
        repetition_histogram=histogram,
        violations=scan_run(run),
    )


def simulate_one(
    game: str, alphabet_size: int, budget: int, ben: str, seed: int, engine: str = "auto"
) -> GameRun:
    """One seeded run; ``engine`` picks the JIT lane ('fast'), the reference
    engine ('pure'), or the JIT lane when available ('auto').  Both lanes
    produce the identical run for a given seed."""
    if engine not in ("auto", "pure", "fast"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine != "pure":
        from . import fastlane

        if fastlane.HAVE_FASTLANE:
            return fastlane.fast_simulate(game, alphabet_size, budget, ben, seed)
        if engine == "fast":
            raise RuntimeError("the fast engine needs numba")
    if game == "erase":
        return play_erase_game(alphabet_size, budget, ben, seed)
    if game == "nonrep":
        return simulate_nonrep_search(alphabet_size, budget, ben, seed)
    raise ValueError(f"unknown game {game!r}")


def _run_chunk(args: tuple) -> list[RunSummary]:
    game, alphabet_size, budget, ben, master_seed, start, stop, engine = args
    out = []
    for index in range(start, stop):
        run = simulate_one(
            game, alphabet_size, budget, ben, derive_seed(master_seed, index), engine
        )
        out.append(summarize_run(run, index))
    return out


def run_batch(
    game: str,
    alphabet_size: int,
    budget: int,
    ben: str,
    master_seed: int,
    runs: int,
    workers: int | None = None,
    engine: str = "auto",
) -> list[RunSummary]:
    """Simulate ``runs`` independent seeded games and summarize each.

    ``budget`` is the total move count for the erase game and the builder's
    draw budget for the search.  ``workers`` > 1 fans runs out to a process
    pool; the summaries are identical either way.
    """
    if runs < 0:
        raise ValueError("runs must be nonnegative")
    if runs == 0:
        return []
    if workers is None:
        workers = default_workers()
    if workers <= 1 or runs == 1:
        return _run_chunk((game, alphabet_size, budget, ben, master_seed, 0, runs, engine))
    chunk = max(1, (runs + workers * 4 - 1) // (workers * 4))
    jobs = [
        (game, alphabet_size, budget, ben, master_seed, start, min(start + chunk, runs), engine)
        for start in range(0, runs, chunk)
    ]
    summaries: list[RunSummary] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, jobs):
            summaries.extend(part)
    summaries.sort(key=lambda s: s.run_index)
    return summaries


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def aggregate(summaries: list[RunSummary]) -> dict:
    """Batch-level report: merged histogram, violation count, mean final length."""
    histogram: dict[int, int] = {}
    violations = 0
    total_final = 0
    for s in summaries:
        for size, count in s.repetition_histogram.items():
            histogram[size] = histogram.get(size, 0) + count
        violations += len(s.violations)
        total_final += s.final_length
    return {
        "runs": len(summaries),
        "violations": violations,
        "mean_final_length": total_final / len(summaries) if summaries else 0.0,
        "repetition_histogram": {str(k): v for k, v in sorted(histogram.items())},
    }
