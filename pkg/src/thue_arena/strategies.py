"""Ann's randomized strategies, the deterministic Ben adversary suite, and
the seeded randomness contract.

Ann in the erase game avoids the last three symbols of the current word.  Ann
in the nonrepetitive game excludes symbols by three positional rules that keep
at least C - 2 candidates available.  Every Ben strategy is a deterministic
function of the visible game history and current word, which is what makes
game logs decodable.
"""

from __future__ import annotations

import hashlib
import random
from typing import Callable, Sequence

from .sequences import GameSequence

BEN_STRATEGIES = ("mimic", "cyclic", "greedy_repeater", "anti_ann", "hash_det")

GAME_KINDS = ("erase", "nonrep")

_SEED_MASK = 0xFFFFFFFFFFFFFFFF


class ConfigurationError(ValueError):
    """Raised when a game configuration leaves a player without a legal move."""


class TurnOrderError(ValueError):
    """Raised when a strategy is consulted out of turn."""


def derive_seed(master_seed: int, index: int) -> int:
    """Stable child seed for run ``index`` of a batch, identical across processes."""
    payload = (master_seed & _SEED_MASK).to_bytes(8, "little") + (
        index & _SEED_MASK
    ).to_bytes(8, "little")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


class RandomSource:
    """Deterministic choice stream: same seed, same picks, bit for bit.

    ``uniform_pick`` counts as one draw of the stream and returns each of the
    k candidates with probability exactly 1/k (rejection sampling on top of
    the generator's bit stream, so there is no modulo bias).
    """

    def __init__(self, seed: int):
        self.seed = seed & _SEED_MASK
        self._bits = random.Random(self.seed).getrandbits

    def uniform_pick(self, candidates: Sequence[int]) -> int:
        k = len(candidates)
        if k == 0:
            raise ConfigurationError("uniform_pick over an empty candidate set")
        if k == 1:
            return candidates[0]
        nbits = (k - 1).bit_length()
        bits = self._bits
        while True:
            r = bits(nbits)
            if r < k:
                return candidates[r]

    def spawn(self, index: int) -> "RandomSource":
        """Independent source for parallel run ``index`` of a batch."""
        return RandomSource(derive_seed(self.seed, index))


# --- Ann -------------------------------------------------------------------


def ann_erase_candidates(seq: GameSequence) -> list[int]:
    """Alphabet minus the set of the last three symbols (fewer when they repeat)."""
    recent = seq.symbols[-3:]
    return [a for a in range(seq.alphabet_size) if a not in recent]


def ann_erase_choice(seq: GameSequence, rng: RandomSource) -> int:
    """Uniform pick avoiding the last three symbols; needs alphabet size >= 4."""
    candidates = ann_erase_candidates(seq)
    if not candidates:
        raise ConfigurationError(
            "no candidate symbols left; the erase game needs alphabet size >= 4"
        )
    return rng.uniform_pick(candidates)


def _nonrep_exclusions(w: list[int]) -> set[int]:
    """Exclusion rules for the next position, on a raw symbol list.

    With m - 1 symbols placed: (i) exclude the symbol two back; (ii) if the
    last symbol equals the one four back, exclude the one three back;
    (iii) if (i) + (ii) excluded exactly one symbol, exclude the one four
    back.  Rules that reach before the start of the word are skipped.
    """
    n = len(w)
    excl: set[int] = set()
    if n >= 2:
        excl.add(w[-2])
    if n >= 4 and w[-1] == w[-4]:
        excl.add(w[-3])
    if len(excl) == 1 and n >= 4:
        excl.add(w[-4])
    return excl


def ann_nonrep_exclusions(seq: GameSequence) -> set[int]:
    """Excluded symbols for Ann's next move in the nonrepetitive game.

    Only defined on Ann's turn, i.e. when the word has even length.
    """
    if len(seq) % 2 != 0:
        raise TurnOrderError(
            f"exclusion rules apply on Ann's turn (even length), got length {len(seq)}"
        )
    return _nonrep_exclusions(seq.symbols)


def ann_nonrep_candidates(seq: GameSequence) -> list[int]:
    excl = ann_nonrep_exclusions(seq)
    return [a for a in range(seq.alphabet_size) if a not in excl]


def ann_nonrep_choice(seq: GameSequence, rng: RandomSource) -> int:
    """Uniform pick outside the exclusion rules; needs alphabet size >= 3."""
    candidates = ann_nonrep_candidates(seq)
    if not candidates:
        raise ConfigurationError(
            "no candidate symbols left; the nonrepetitive game needs alphabet size >= 3"
        )
    return rng.uniform_pick(candidates)


# --- Ben -------------------------------------------------------------------
#
# Each strategy is a function of (word, moves played so far, alphabet size,
# erase threshold).  In the erase game the move count is the full history
# length; in the nonrepetitive game Ben sees the rewound game, where the
# history is exactly one record per surviving symbol.


def _ben_mimic(w: list[int], n_moves: int, alphabet_size: int, min_size: int) -> int:
    return w[-1] if w else 0


def _ben_cyclic(w: list[int], n_moves: int, alphabet_size: int, min_size: int) -> int:
    return n_moves % alphabet_size


def _ben_greedy_repeater(
    w: list[int], n_moves: int, alphabet_size: int, min_size: int
) -> int:
    # Smallest symbol whose append would make the engine erase the largest
    # block; the erased block for a symbol s is its *smallest* created size.
    m = len(w)
    best_sym = 0
    best_size = 0
    decided: set[int] = set()
    for h in range(min_size, (m + 1) // 2 + 1):
        s = w[m - h]
        if s in decided:
            continue
        if h == 1 or (
            w[m + 1 - 2 * h] == w[m + 1 - h]
            and w[m + 1 - 2 * h : m - h] == w[m + 1 - h : m]
        ):
            decided.add(s)
            if h > best_size or (h == best_size and s < best_sym):
                best_size, best_sym = h, s
    return best_sym if best_size else 0


def _ben_anti_ann(w: list[int], n_moves: int, alphabet_size: int, min_size: int) -> int:
    if min_size == 1:
        excl = set(w[-3:])
    else:
        excl = _nonrep_exclusions(w)
    for a in range(alphabet_size):
        if a not in excl:
            return a
    return 0


FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def _ben_hash_det(w: list[int], n_moves: int, alphabet_size: int, min_size: int) -> int:
    # FNV-1a style mix over (moves played, word length, word content):
    # stable across runs, platforms and processes.
    state = FNV_OFFSET
    state = ((state ^ n_moves) * FNV_PRIME) & _U64
    state = ((state ^ len(w)) * FNV_PRIME) & _U64
    for s in w:
        state = ((state ^ (s + 1)) * FNV_PRIME) & _U64
    return state % alphabet_size


_BEN_FNS: dict[str, Callable[[list[int], int, int, int], int]] = {
    "mimic": _ben_mimic,
    "cyclic": _ben_cyclic,
    "greedy_repeater": _ben_greedy_repeater,
    "anti_ann": _ben_anti_ann,
    "hash_det": _ben_hash_det,
}


def ben_function(strategy: str, game: str) -> Callable[[list[int], int, int], int]:
    """Bind a Ben strategy to a game kind; the result maps
    (word, moves played, alphabet size) to a symbol."""
    if game not in GAME_KINDS:
        raise ValueError(f"unknown game kind {game!r}")
    try:
        fn = _BEN_FNS[strategy]
    except KeyError:
        raise ValueError(
            f"unknown Ben strategy {strategy!r}; known: {', '.join(BEN_STRATEGIES)}"
        ) from None
    min_size = 1 if game == "erase" else 2
    return lambda w, n_moves, alphabet_size: fn(w, n_moves, alphabet_size, min_size)


def ben_choose(
    strategy: str, history: Sequence, seq: GameSequence, game: str = "erase"
) -> int:
    """Deterministic adversary move for the given visible history and word."""
    symbol = ben_function(strategy, game)(seq.symbols, len(history), seq.alphabet_size)
    seq.check_symbol(symbol)
    return symbol
