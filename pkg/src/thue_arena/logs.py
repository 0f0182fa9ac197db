"""Compressed encodings of game runs and their exact decoders.

An erase-game run compresses to its height-difference sequence with the zero
entries (the adversary's size-1 moves) dropped, plus the final word.  A
search run compresses to the halved height differences between consecutive
builder moves, a type annotation for each steep drop, plus the final word.
Both encodings are injective for a fixed deterministic adversary: the decoder
reconstructs every random choice the builder made, exactly.

Decoding works in two passes.  A backward pass re-grows the word from the
final state: an up-step pops the introduced symbol, a drop of known size
restores the erased half of the repeated block by copying its surviving
twin.  A forward pass then replays the game move by move, filling in the
adversary's deterministic moves and checking that everything it cannot
control (erasure sizes, turn order, exclusion rules) agrees with the log;
any disagreement rejects the log as unrealizable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .engines import ANN, BEN, GameRun, WordState, difference_sequence
from .sequences import GameSequence
from .strategies import _nonrep_exclusions, ben_function


@dataclass(frozen=True)
class LogViolation:
    condition: str
    index: int | None
    message: str


class LogValidationError(ValueError):
    def __init__(self, violations: list[LogViolation]):
        super().__init__("; ".join(v.message for v in violations))
        self.violations = violations


class DecodeError(ValueError):
    """A log that no play against the given adversary could have produced."""

    def __init__(self, move_index: int | None, message: str):
        where = f" (move {move_index})" if move_index is not None else ""
        super().__init__(message + where)
        self.move_index = move_index


@dataclass
class ReducedGameLog:
    """Erase-game record: nonzero height differences plus the final word."""

    differences: list[int]
    final: GameSequence

    def to_json(self) -> dict:
        return {"d": list(self.differences), "final": list(self.final.symbols)}

    @classmethod
    def from_json(cls, data: dict, alphabet_size: int) -> "ReducedGameLog":
        return cls(list(data["d"]), GameSequence(alphabet_size, list(data["final"])))


@dataclass
class TypedSearchLog:
    """Search record: halved builder-to-builder height differences, the type of
    each drop of -2 or steeper (keyed by 1-based difference index), final word."""

    differences: list[int]
    types: dict[int, int] = field(default_factory=dict)
    final: GameSequence = field(default_factory=lambda: GameSequence(1))

    def to_json(self) -> dict:
        return {
            "d": list(self.differences),
            "types": {str(j): t for j, t in sorted(self.types.items())},
            "final": list(self.final.symbols),
        }

    @classmethod
    def from_json(cls, data: dict, alphabet_size: int) -> "TypedSearchLog":
        return cls(
            list(data["d"]),
            {int(j): t for j, t in data.get("types", {}).items()},
            GameSequence(alphabet_size, list(data["final"])),
        )


# --- validation --------------------------------------------------------------


def validate_log(
    log: ReducedGameLog | TypedSearchLog, budget: int | None = None
) -> list[LogViolation]:
    """All invariant violations of a log; empty iff the log is well formed.

    ``budget`` optionally bounds the difference-sequence length (the move or
    draw budget of the run the log claims to describe).
    """
    if isinstance(log, ReducedGameLog):
        return _validate_erase(log, budget)
    if isinstance(log, TypedSearchLog):
        return _validate_search(log, budget)
    raise TypeError(f"not a log: {log!r}")


def _validate_erase(log: ReducedGameLog, budget: int | None) -> list[LogViolation]:
    out: list[LogViolation] = []
    d = log.differences
    if budget is not None and len(d) > budget:
        out.append(
            LogViolation(
                "length-budget", None, f"{len(d)} entries exceed the budget {budget}"
            )
        )
    total = 0
    for j, step in enumerate(d, start=1):
        if step != 1 and step > -3:
            out.append(
                LogViolation(
                    "step-set", j, f"entry {step} at index {j} not in {{1, -3, -4, ...}}"
                )
            )
        total += step
        if total < 1:
            out.append(
                LogViolation(
                    "prefix-floor", j, f"prefix sum {total} at index {j} drops below 1"
                )
            )
    if sum(d) != len(log.final):
        out.append(
            LogViolation(
                "difference-sum",
                None,
                f"differences sum to {sum(d)} but the final word has length {len(log.final)}",
            )
        )
    return out


def _validate_search(log: TypedSearchLog, budget: int | None) -> list[LogViolation]:
    out: list[LogViolation] = []
    d = log.differences
    if budget is not None and len(d) > budget:
        out.append(
            LogViolation(
                "length-budget", None, f"{len(d)} entries exceed the budget {budget}"
            )
        )
    total = 0
    for j, step in enumerate(d, start=1):
        if step > 1 or step == 0:
            out.append(
                LogViolation(
                    "step-set", j, f"entry {step} at index {j} not in {{1, -1, -2, ...}}"
                )
            )
        total += step
        if total < 1:
            out.append(
                LogViolation(
                    "prefix-floor", j, f"prefix sum {total} at index {j} drops below 1"
                )
            )
    for j, t in log.types.items():
        if t not in (1, 2, 3, 4):
            out.append(LogViolation("type-domain", j, f"type {t} at index {j} unknown"))
        if not 1 <= j <= len(d):
            out.append(LogViolation("type-domain", j, f"type index {j} out of range"))
        elif d[j - 1] > -2:
            out.append(
                LogViolation(
                    "type-domain",
                    j,
                    f"type recorded at index {j} where the difference is {d[j - 1]} > -2",
                )
            )
    for j, step in enumerate(d, start=1):
        if step <= -2 and j not in log.types:
            out.append(
                LogViolation(
                    "type-domain", j, f"difference {step} at index {j} has no type"
                )
            )
    if d:
        # Height before the final builder move, from the prefix sums.
        h_last = 2 * (sum(d) - 1)
        delta = len(log.final) - h_last
        if delta != 1 and delta > -1:
            out.append(
                LogViolation(
                    "final-length",
                    None,
                    f"final length {len(log.final)} is incompatible with last height {h_last}",
                )
            )
    elif len(log.final) != 0:
        out.append(
            LogViolation("final-length", None, "empty log with a nonempty final word")
        )
    return out


def _require_valid(log, budget=None) -> None:
    violations = validate_log(log, budget)
    if violations:
        raise LogValidationError(violations)


# --- erase game codec ---------------------------------------------------------


def encode_erase_log(run: GameRun) -> ReducedGameLog:
    """Difference sequence with zeros dropped, paired with the final word."""
    if run.config.game != "erase":
        raise ValueError(f"not an erase-game run: {run.config.game!r}")
    diffs = difference_sequence(run)
    reduced = [d for d in diffs if d != 0]
    bad_moves = sum(
        1 for m in run.moves if m.mover == BEN and m.repetition_size == 1
    )
    assert len(diffs) - len(reduced) == bad_moves
    log = ReducedGameLog(reduced, GameSequence(run.final.alphabet_size, list(run.final.symbols)))
    assert not validate_log(log, budget=len(run.moves))
    return log


def decode_erase_log(log: ReducedGameLog, ben: str) -> list[int]:
    """Recover the builder's random choices from a reduced log.

    Walks the differences backwards to rebuild every good symbol, then replays
    the game forwards, inserting the adversary's size-1 moves from its
    strategy.  Raises DecodeError if no play against ``ben`` produces the log.
    """
    _require_valid(log)
    alphabet_size = log.final.alphabet_size
    ben_fn = ben_function(ben, "erase")
    d = log.differences
    m = len(d)

    # Backward pass: undo good moves, last first.
    w = list(log.final.symbols)
    goods: list[int] = [0] * m
    for j in range(m - 1, -1, -1):
        if not w:
            raise DecodeError(j + 1, "ran out of symbols while rewinding")
        if d[j] == 1:
            goods[j] = w.pop()
        else:
            h = 1 - d[j]
            l = len(w)
            if l < h:
                raise DecodeError(
                    j + 1, f"cannot restore an erased block of size {h} from {l} symbols"
                )
            goods[j] = w[-1]
            w.extend(w[l - h : l - 1])
    if w:
        raise DecodeError(None, "differences do not rewind to the empty word")

    # Forward pass: replay with strict alternation, Ann on odd moves.
    state = WordState(alphabet_size)
    w = state.w
    ann_choices: list[int] = []
    ptr = 0
    i = 0
    while ptr < m:
        i += 1
        if i & 1:
            x = goods[ptr]
            if x in w[-3:]:
                raise DecodeError(i, f"builder symbol {x} is among the last three")
            h = state.apply(x, 1)
            if (1 if h == 0 else 1 - h) != d[ptr]:
                raise DecodeError(i, "erasure size disagrees with the log")
            ann_choices.append(x)
            ptr += 1
        else:
            b = ben_fn(w, i - 1, alphabet_size)
            if not 0 <= b < alphabet_size:
                raise DecodeError(i, f"adversary produced an illegal symbol {b}")
            h = state.apply(b, 1)
            if h == 1:
                continue  # bad move: dropped from the log, word unchanged
            if b != goods[ptr]:
                raise DecodeError(
                    i, f"adversary strategy plays {b}, log requires {goods[ptr]}"
                )
            if (1 if h == 0 else 1 - h) != d[ptr]:
                raise DecodeError(i, "erasure size disagrees with the log")
            ptr += 1
    if w != log.final.symbols:
        raise DecodeError(None, "replay does not reproduce the final word")
    return ann_choices


# --- search codec --------------------------------------------------------------


class Transition(NamedTuple):
    """Height evolution between two consecutive builder moves."""

    index: int  # 1-based index of the corresponding difference entry
    d: int
    type_code: int  # 0..4


def classify_search_transitions(run: GameRun) -> tuple[list[Transition], list[str]]:
    """Classify every builder-to-builder height transition of a search run.

    Returns the transitions and a list of shape problems (empty for any run
    the engine can produce).
    """
    moves = run.moves
    ann_at = [k for k, mv in enumerate(moves) if mv.mover == ANN]
    transitions: list[Transition] = []
    problems: list[str] = []
    for t_idx, (a, b) in enumerate(zip(ann_at, ann_at[1:]), start=2):
        h_cur = moves[a - 1].height_after if a > 0 else 0
        h_next = moves[b - 1].height_after
        if h_cur % 2 or h_next % 2:
            problems.append(f"odd height before a builder move near move {a + 1}")
        d = (h_next - h_cur) // 2
        gap = b - a - 1
        ann_rep = moves[a].repetition_size
        mids = moves[a + 1 : b]
        if any(mv.mover != BEN for mv in mids):
            problems.append(f"non-adversary move between builder moves at {a + 1}")
        code = -1
        if gap == 0:
            if ann_rep >= 5 and ann_rep % 2 == 1:
                code = 1
        elif gap == 1:
            mid_rep = mids[0].repetition_size
            if ann_rep == 0 and mid_rep == 0:
                code = 0
            elif ann_rep >= 6 and ann_rep % 2 == 0 and mid_rep == 0:
                code = 2
            elif ann_rep == 0 and mid_rep >= 6 and mid_rep % 2 == 0:
                code = 3
        elif gap == 2:
            r1, r2 = mids[0].repetition_size, mids[1].repetition_size
            if ann_rep == 0 and r1 >= 5 and r1 % 2 == 1 and r2 == 0:
                code = 4
        if code == -1:
            problems.append(
                f"transition after move {a + 1} matches no known shape "
                f"(gap {gap}, sizes {[ann_rep] + [mv.repetition_size for mv in mids]})"
            )
        elif (code == 0) != (d == 1) or (code in (1, 2, 3) and d > -2) or (
            code == 4 and d > -1
        ):
            problems.append(
                f"transition after move {a + 1}: shape {code} inconsistent with d={d}"
            )
        transitions.append(Transition(t_idx, d, code))
    return transitions, problems


def encode_search_log(run: GameRun) -> TypedSearchLog:
    """Halved differences of builder-move heights, types for drops of -2 or
    steeper, and the final word."""
    if run.config.game != "nonrep":
        raise ValueError(f"not a search run: {run.config.game!r}")
    transitions, problems = classify_search_transitions(run)
    if problems:
        raise ValueError("run violates the search shape: " + "; ".join(problems))
    if not run.ann_choices:
        return TypedSearchLog([], {}, GameSequence(run.final.alphabet_size, []))
    differences = [1] + [t.d for t in transitions]
    types = {t.index: t.type_code for t in transitions if t.d <= -2}
    log = TypedSearchLog(
        differences,
        types,
        GameSequence(run.final.alphabet_size, list(run.final.symbols)),
    )
    assert not validate_log(log, budget=len(run.ann_choices))
    return log


def _expand_search_heights(log: TypedSearchLog) -> list[int]:
    """Heights before every simulation step, plus the final length as sentinel.

    Each difference entry expands to the unique intermediate heights its
    transition type dictates.
    """
    d = log.differences
    m = len(d)
    ann_heights = [0] * m
    for j in range(1, m):
        ann_heights[j] = ann_heights[j - 1] + 2 * d[j]
    heights: list[int] = []
    for j in range(m - 1):
        h_cur, h_next = ann_heights[j], ann_heights[j + 1]
        heights.append(h_cur)
        step = d[j + 1]
        if step == 1:
            heights.append(h_cur + 1)
        elif step == -1:
            heights.extend((h_cur + 1, h_cur - 3))
        else:
            code = log.types[j + 2]
            if code == 1:
                pass
            elif code == 2:
                heights.append(h_next - 1)
            elif code == 3:
                heights.append(h_cur + 1)
            else:  # code == 4
                heights.extend((h_cur + 1, h_next - 1))
    heights.append(ann_heights[-1])
    heights.append(len(log.final))
    if any(h < 0 for h in heights):
        raise DecodeError(None, "heights drop below zero while expanding the log")
    return heights


def decode_search_log(log: TypedSearchLog, ben: str) -> list[int]:
    """Recover the builder's draws from a typed search log.

    Expands the differences into the full height sequence, rebuilds every
    introduced symbol backwards, then replays forwards with the mover decided
    by word-length parity.  Raises DecodeError on any unrealizable log.
    """
    _require_valid(log)
    if not log.differences:
        if len(log.final):
            raise DecodeError(None, "empty log with a nonempty final word")
        return []
    alphabet_size = log.final.alphabet_size
    ben_fn = ben_function(ben, "nonrep")
    heights = _expand_search_heights(log)
    m = len(heights) - 1

    # Backward pass over all simulation steps.
    w = list(log.final.symbols)
    symbols: list[int] = [0] * m
    for i in range(m - 1, -1, -1):
        delta = heights[i + 1] - heights[i]
        if not w:
            raise DecodeError(i + 1, "ran out of symbols while rewinding")
        if delta == 1:
            symbols[i] = w.pop()
        elif delta <= -1:
            h = 1 - delta
            l = len(w)
            if l < h:
                raise DecodeError(
                    i + 1,
                    f"cannot restore an erased block of size {h} from {l} symbols",
                )
            symbols[i] = w[-1]
            w.extend(w[l - h : l - 1])
        else:
            raise DecodeError(i + 1, f"impossible height step {delta}")
    if w:
        raise DecodeError(None, "heights do not rewind to the empty word")

    # Forward pass: parity decides the mover.
    state = WordState(alphabet_size)
    w = state.w
    ann_choices: list[int] = []
    for i, x in enumerate(symbols, start=1):
        if len(w) % 2 == 0:
            if x in _nonrep_exclusions(w):
                raise DecodeError(i, f"builder symbol {x} is excluded by her rules")
            ann_choices.append(x)
        else:
            b = ben_fn(w, len(w), alphabet_size)
            if b != x:
                raise DecodeError(
                    i, f"adversary strategy plays {b}, log requires {x}"
                )
        h = state.apply(x, 2)
        if len(w) != heights[i]:
            raise DecodeError(i, "erasure size disagrees with the log heights")
    if w != log.final.symbols:
        raise DecodeError(None, "replay does not reproduce the final word")
    if len(ann_choices) != len(log.differences):
        raise DecodeError(
            None,
            f"replay yields {len(ann_choices)} builder draws, log has "
            f"{len(log.differences)} entries",
        )
    return ann_choices
