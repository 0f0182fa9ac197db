"""Words over a finite alphabet, suffix-repetition detection, and erase semantics.

A repetition of size h is a factor of the form x1..xh x1..xh.  Appending one
symbol to a word that previously had no repetition (above a size threshold)
can only create repetitions that end at the last position, so detection is
restricted to suffixes.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RepetitionReport:
    """A repeated block xx of half-length ``size`` ending at the last position."""

    size: int
    start_index: int


@dataclass
class GameSequence:
    """A word over the alphabet {0, ..., alphabet_size - 1}."""

    alphabet_size: int
    symbols: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError(f"alphabet_size must be >= 1, got {self.alphabet_size}")
        for s in self.symbols:
            self.check_symbol(s)

    def check_symbol(self, symbol: int) -> None:
        if not isinstance(symbol, int) or not 0 <= symbol < self.alphabet_size:
            raise ValueError(
                f"symbol {symbol!r} outside alphabet [0, {self.alphabet_size})"
            )

    def __len__(self) -> int:
        return len(self.symbols)

    def to_json(self) -> dict:
        return {"alphabet_size": self.alphabet_size, "symbols": list(self.symbols)}

    @classmethod
    def from_json(cls, data: dict) -> "GameSequence":
        return cls(data["alphabet_size"], list(data["symbols"]))


def find_suffix_repetition(
    seq: GameSequence, min_size: int = 1
) -> RepetitionReport | None:
    """Smallest repetition of size >= min_size ending at the last position.

    Returns None when no suffix of length 2h (min_size <= h <= len/2) splits
    into two equal halves.
    """
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    w = seq.symbols
    n = len(w)
    for h in range(min_size, n // 2 + 1):
        if w[n - 2 * h : n - h] == w[n - h :]:
            return RepetitionReport(size=h, start_index=n - 2 * h)
    return None


def suffix_repetition_after_append(w: list[int], symbol: int, min_size: int) -> int:
    """Size of the smallest suffix repetition that appending ``symbol`` would
    create, or 0.  Operates on a raw symbol list without building the grown word."""
    m = len(w)
    limit = (m + 1) // 2
    for h in range(min_size, limit + 1):
        if w[m - h] != symbol:
            continue
        if h == 1:
            return 1
        # Halves minus the final position are blocks of the existing word.
        if w[m + 1 - 2 * h] == w[m + 1 - h] and w[m + 1 - 2 * h : m - h] == w[m + 1 - h : m]:
            return h
    return 0


def append_and_reduce(
    seq: GameSequence, symbol: int, min_size: int = 1
) -> tuple[GameSequence, int]:
    """Append ``symbol``; if that creates a suffix repetition of size
    h >= min_size, erase the repeated block (the last h symbols).

    Returns the new word and the erased size (0 when nothing was erased).
    """
    seq.check_symbol(symbol)
    grown = GameSequence(seq.alphabet_size, seq.symbols + [symbol])
    rep = find_suffix_repetition(grown, min_size)
    if rep is None:
        return grown, 0
    del grown.symbols[len(grown.symbols) - rep.size :]
    # The survivor is a prefix of the pre-append word, so no second erasure
    # can be pending when the input satisfied its own invariant.
    assert find_suffix_repetition(grown, min_size) is None
    return grown, rep.size


def is_valid(seq: GameSequence, min_size: int = 1) -> bool:
    """True iff no contiguous factor of the word is a repetition of size >= min_size."""
    w = seq.symbols
    n = len(w)
    for h in range(min_size, n // 2 + 1):
        for i in range(n - 2 * h + 1):
            if w[i : i + h] == w[i + h : i + 2 * h]:
                return False
    return True
