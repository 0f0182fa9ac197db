"""Instrumented simulation of the erase-repetition game and of the
backtracking search for the nonrepetitive game.

Erase game: players strictly alternate by move index (Ann odd, Ben even) and
every repetition, of any size, is erased the moment it appears.

Nonrepetitive search: the mover is Ann exactly when the word length is even;
size-1 repetitions stand, while any repetition of size >= 2 rewinds the word
(the repeated block is removed) and play resumes from the rewound state.  The
simulation stops once Ann has spent her budget of draws.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .sequences import GameSequence
from .strategies import (
    ConfigurationError,
    RandomSource,
    _nonrep_exclusions,
    ben_function,
)

ANN = "A"
BEN = "B"


class MoveRecord(NamedTuple):
    move_index: int
    mover: str
    symbol: int
    repetition_size: int
    height_after: int


@dataclass(frozen=True)
class GameConfig:
    game: str
    alphabet_size: int
    ben: str
    seed: int
    total_moves: int | None = None
    ann_budget: int | None = None

    def to_json(self) -> dict:
        data: dict = {
            "game": self.game,
            "symbols": self.alphabet_size,
            "ben": self.ben,
            "seed": self.seed,
        }
        if self.total_moves is not None:
            data["moves"] = self.total_moves
        if self.ann_budget is not None:
            data["ann_budget"] = self.ann_budget
        return data

    @classmethod
    def from_json(cls, data: dict) -> "GameConfig":
        return cls(
            game=data["game"],
            alphabet_size=data["symbols"],
            ben=data["ben"],
            seed=data["seed"],
            total_moves=data.get("moves"),
            ann_budget=data.get("ann_budget"),
        )


@dataclass
class GameRun:
    """Full record of one simulated play."""

    config: GameConfig
    moves: list[MoveRecord]
    ann_choices: list[int]
    final: GameSequence

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "moves": [
                {"i": m.move_index, "mover": m.mover, "sym": m.symbol,
                 "rep": m.repetition_size, "h": m.height_after}
                for m in self.moves
            ],
            "ann_choices": list(self.ann_choices),
            "final": list(self.final.symbols),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GameRun":
        config = GameConfig.from_json(data["config"])
        moves = [
            MoveRecord(m["i"], m["mover"], m["sym"], m["rep"], m["h"])
            for m in data["moves"]
        ]
        return cls(
            config=config,
            moves=moves,
            ann_choices=list(data["ann_choices"]),
            final=GameSequence(config.alphabet_size, list(data["final"])),
        )


class ChoicesExhausted(Exception):
    """Raised by a scripted chooser when it runs out of prescribed symbols;
    carries the candidate set Ann was facing."""

    def __init__(self, candidates: list[int]):
        super().__init__("scripted choices exhausted")
        self.candidates = candidates


class ScriptedPick:
    """Chooser that replays a fixed list of Ann symbols."""

    def __init__(self, symbols: Sequence[int]):
        self._symbols = list(symbols)
        self._next = 0

    def __call__(self, candidates: list[int]) -> int:
        if self._next >= len(self._symbols):
            raise ChoicesExhausted(candidates)
        s = self._symbols[self._next]
        self._next += 1
        if s not in candidates:
            raise ValueError(f"scripted symbol {s} not among candidates {candidates}")
        return s


class WordState:
    """Mutable word with a per-symbol position index for fast suffix-repetition
    detection.  Semantically identical to sequences.append_and_reduce."""

    __slots__ = ("w", "pos")

    def __init__(self, alphabet_size: int):
        self.w: list[int] = []
        self.pos: list[list[int]] = [[] for _ in range(alphabet_size)]

    def repetition_after(self, symbol: int, min_size: int) -> int:
        w = self.w
        m = len(w)
        limit = (m + 1) // 2
        for p in reversed(self.pos[symbol]):
            h = m - p
            if h > limit:
                break
            if h < min_size:
                continue
            if h == 1:
                return 1
            if (
                w[m + 1 - 2 * h] == w[m + 1 - h]
                and w[m + 1 - 2 * h : m - h] == w[m + 1 - h : m]
            ):
                return h
        return 0

    def apply(self, symbol: int, min_size: int) -> int:
        """Append a symbol, erase the smallest created repetition, return its size."""
        h = self.repetition_after(symbol, min_size)
        w = self.w
        if h == 0:
            self.pos[symbol].append(len(w))
            w.append(symbol)
        elif h > 1:
            # Append-then-erase collapses to dropping h - 1 trailing symbols.
            n = len(w)
            pos = self.pos
            for p in range(n - 1, n - h, -1):
                pos[w[p]].pop()
            del w[n - h + 1 :]
        return h


PickFn = Callable[[list[int]], int]


def _erase_candidates(w: list[int], alphabet_size: int) -> list[int]:
    recent = w[-3:]
    return [a for a in range(alphabet_size) if a not in recent]


def _run_erase(
    alphabet_size: int,
    total_moves: int,
    ben: str,
    seed: int,
    pick: PickFn,
) -> GameRun:
    ben_fn = ben_function(ben, "erase")
    state = WordState(alphabet_size)
    w = state.w
    moves: list[MoveRecord] = []
    ann_choices: list[int] = []
    floor = alphabet_size - 3
    for i in range(1, total_moves + 1):
        if i & 1:
            candidates = _erase_candidates(w, alphabet_size)
            assert len(candidates) >= floor
            if not candidates:
                raise ConfigurationError("erase game needs alphabet size >= 4")
            s = pick(candidates)
            ann_choices.append(s)
            mover = ANN
        else:
            s = ben_fn(w, i - 1, alphabet_size)
            mover = BEN
        h = state.apply(s, 1)
        moves.append(MoveRecord(i, mover, s, h, len(w)))
    config = GameConfig("erase", alphabet_size, ben, seed, total_moves=total_moves)
    return GameRun(config, moves, ann_choices, GameSequence(alphabet_size, list(w)))


def _run_search(
    alphabet_size: int,
    ann_budget: int,
    ben: str,
    seed: int,
    pick: PickFn,
) -> GameRun:
    ben_fn = ben_function(ben, "nonrep")
    state = WordState(alphabet_size)
    w = state.w
    moves: list[MoveRecord] = []
    ann_choices: list[int] = []
    floor = alphabet_size - 2
    i = 0
    while len(ann_choices) < ann_budget:
        i += 1
        if len(w) % 2 == 0:
            excl = _nonrep_exclusions(w)
            candidates = [a for a in range(alphabet_size) if a not in excl]
            assert len(candidates) >= floor
            if not candidates:
                raise ConfigurationError("nonrepetitive game needs alphabet size >= 3")
            s = pick(candidates)
            ann_choices.append(s)
            mover = ANN
        else:
            # Ben sees the rewound game: one history record per surviving symbol.
            s = ben_fn(w, len(w), alphabet_size)
            mover = BEN
        h = state.apply(s, 2)
        moves.append(MoveRecord(i, mover, s, h, len(w)))
    config = GameConfig("nonrep", alphabet_size, ben, seed, ann_budget=ann_budget)
    return GameRun(config, moves, ann_choices, GameSequence(alphabet_size, list(w)))


def _check_common(alphabet_size: int, ben: str) -> None:
    if alphabet_size > 255:
        raise ConfigurationError("alphabet sizes above 255 are not supported")
    ben_function(ben, "erase")  # validates the strategy name


def play_erase_game(
    alphabet_size: int, total_moves: int, ben: str, seed: int
) -> GameRun:
    """Simulate ``total_moves`` strictly alternating moves of the erase game.

    Ann (odd moves) draws uniformly outside the last three symbols; every
    repetition is erased on the spot and recorded on the move that caused it.
    """
    _check_common(alphabet_size, ben)
    if alphabet_size < 4:
        raise ConfigurationError("erase game needs alphabet size >= 4")
    if total_moves < 0 or total_moves % 2 != 0:
        raise ValueError("total_moves must be a nonnegative even number")
    rng = RandomSource(seed)
    return _run_erase(alphabet_size, total_moves, ben, seed, rng.uniform_pick)


def play_erase_game_scripted(
    alphabet_size: int, total_moves: int, ben: str, ann_symbols: Sequence[int]
) -> GameRun:
    """Erase game with Ann's draws replaced by a fixed script (seed recorded as -1)."""
    _check_common(alphabet_size, ben)
    return _run_erase(alphabet_size, total_moves, ben, -1, ScriptedPick(ann_symbols))


def simulate_nonrep_search(
    alphabet_size: int, ann_budget: int, ben: str, seed: int
) -> GameRun:
    """Run the backtracking simulation of the nonrepetitive game until Ann has
    made exactly ``ann_budget`` draws.

    The mover is Ann exactly when the word length is even.  Moves reduce with
    threshold 2, so size-1 repetitions stand and larger ones rewind the word.
    The run ends with Ann's last draw; no trailing Ben move is simulated.
    """
    _check_common(alphabet_size, ben)
    if alphabet_size < 3:
        raise ConfigurationError("nonrepetitive game needs alphabet size >= 3")
    if ann_budget < 0:
        raise ValueError("ann_budget must be nonnegative")
    rng = RandomSource(seed)
    return _run_search(alphabet_size, ann_budget, ben, seed, rng.uniform_pick)


def simulate_nonrep_search_scripted(
    alphabet_size: int, ann_budget: int, ben: str, ann_symbols: Sequence[int]
) -> GameRun:
    _check_common(alphabet_size, ben)
    return _run_search(alphabet_size, ann_budget, ben, -1, ScriptedPick(ann_symbols))


def extract_heights(run: GameRun) -> list[int]:
    """Word length after each move, including that move's own erasure."""
    return [m.height_after for m in run.moves]


def difference_sequence(run: GameRun) -> list[int]:
    """Height differences with the empty word as height 0, so the first entry is 1."""
    diffs: list[int] = []
    prev = 0
    for m in run.moves:
        diffs.append(m.height_after - prev)
        prev = m.height_after
    return diffs
