"""JIT-compiled simulation kernels for large verification batches.

The kernels replay the exact generator word stream that RandomSource consumes
(CPython's Mersenne Twister emits one 32-bit word per bounded draw), so a
fast-lane run is bit-for-bit identical to the reference engine's run for the
same seed.  That equality is asserted by tests and sampled inside the big
verification batches; when numba is unavailable everything falls back to the
pure engine.
"""

from __future__ import annotations

import random

import numpy as np

from .engines import ANN, BEN, GameConfig, GameRun, MoveRecord
from .sequences import GameSequence
from .strategies import _SEED_MASK, BEN_STRATEGIES, FNV_OFFSET, FNV_PRIME

try:  # pragma: no cover - absence is environment-specific
    from numba import njit

    HAVE_FASTLANE = True
except ImportError:  # pragma: no cover
    HAVE_FASTLANE = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


_BEN_CODES = {name: i for i, name in enumerate(BEN_STRATEGIES)}

_STATUS_OK = 0
_STATUS_WORDS_EXHAUSTED = 1
_STATUS_BUFFER_FULL = 2


@njit(cache=True, inline="always")
def _detect(w, m, s, min_size):
    limit = (m + 1) // 2
    for h in range(min_size, limit + 1):
        if w[m - h] != s:
            continue
        if h == 1:
            return 1
        base1 = m + 1 - 2 * h
        base2 = m + 1 - h
        match = True
        for j in range(h - 1):
            if w[base1 + j] != w[base2 + j]:
                match = False
                break
        if match:
            return h
    return 0


@njit(cache=True, inline="always")
def _greedy(w, m, alphabet_size, min_size, decided):
    for a in range(alphabet_size):
        decided[a] = 0
    best_sym = 0
    best_size = 0
    limit = (m + 1) // 2
    for h in range(min_size, limit + 1):
        s = w[m - h]
        if decided[s]:
            continue
        if h == 1:
            match = True
        else:
            base1 = m + 1 - 2 * h
            base2 = m + 1 - h
            match = True
            for j in range(h - 1):
                if w[base1 + j] != w[base2 + j]:
                    match = False
                    break
        if match:
            decided[s] = 1
            if h > best_size or (h == best_size and s < best_sym):
                best_size = h
                best_sym = s
    if best_size:
        return best_sym
    return 0


@njit(cache=True, inline="always")
def _hash_det(w, m, n_moves, alphabet_size):
    state = np.uint64(FNV_OFFSET)
    prime = np.uint64(FNV_PRIME)
    state = (state ^ np.uint64(n_moves)) * prime
    state = (state ^ np.uint64(m)) * prime
    for j in range(m):
        state = (state ^ np.uint64(w[j] + 1)) * prime
    return int(state % np.uint64(alphabet_size))


@njit(cache=True, inline="always")
def _ben_symbol(code, w, m, n_moves, alphabet_size, min_size, scratch):
    if code == 0:  # mimic
        if m:
            return w[m - 1]
        return 0
    if code == 1:  # cyclic
        return n_moves % alphabet_size
    if code == 2:  # greedy_repeater
        return _greedy(w, m, alphabet_size, min_size, scratch)
    if code == 3:  # anti_ann
        for a in range(alphabet_size):
            scratch[a] = 0
        if min_size == 1:
            lo = m - 3
            if lo < 0:
                lo = 0
            for j in range(lo, m):
                scratch[w[j]] = 1
        else:
            count = 0
            if m >= 2 and not scratch[w[m - 2]]:
                scratch[w[m - 2]] = 1
                count += 1
            if m >= 4 and w[m - 1] == w[m - 4] and not scratch[w[m - 3]]:
                scratch[w[m - 3]] = 1
                count += 1
            if count == 1 and m >= 4:
                scratch[w[m - 4]] = 1
        for a in range(alphabet_size):
            if not scratch[a]:
                return a
        return 0
    return _hash_det(w, m, n_moves, alphabet_size)


@njit(cache=True, inline="always")
def _pick(words, wi, cands, k):
    """Uniform choice among cands[:k]; returns (symbol, next word index)."""
    if k == 1:
        return cands[0], wi
    nbits = 0
    x = k - 1
    while x:
        nbits += 1
        x >>= 1
    shift = 32 - nbits
    n_words = words.shape[0]
    while True:
        if wi >= n_words:
            return -1, wi
        r = words[wi] >> shift
        wi += 1
        if r < k:
            return cands[r], wi


@njit(cache=True)
def _erase_kernel(alphabet_size, total_moves, ben_code, words, w, movers, symbols, reps, heights):
    scratch = np.zeros(alphabet_size, dtype=np.uint8)
    cands = np.zeros(alphabet_size, dtype=np.int64)
    m = 0
    wi = 0
    for i in range(1, total_moves + 1):
        if i & 1:
            for a in range(alphabet_size):
                scratch[a] = 0
            lo = m - 3
            if lo < 0:
                lo = 0
            for j in range(lo, m):
                scratch[w[j]] = 1
            k = 0
            for a in range(alphabet_size):
                if not scratch[a]:
                    cands[k] = a
                    k += 1
            s, wi = _pick(words, wi, cands, k)
            if s < 0:
                return _STATUS_WORDS_EXHAUSTED, i - 1
            mover = 0
        else:
            s = _ben_symbol(ben_code, w, m, i - 1, alphabet_size, 1, scratch)
            mover = 1
        h = _detect(w, m, s, 1)
        if h == 0:
            w[m] = s
            m += 1
        elif h > 1:
            m -= h - 1
        movers[i - 1] = mover
        symbols[i - 1] = s
        reps[i - 1] = h
        heights[i - 1] = m
    return _STATUS_OK, total_moves


@njit(cache=True)
def _search_kernel(alphabet_size, ann_budget, ben_code, words, w, movers, symbols, reps, heights):
    scratch = np.zeros(alphabet_size, dtype=np.uint8)
    cands = np.zeros(alphabet_size, dtype=np.int64)
    cap = movers.shape[0]
    m = 0
    wi = 0
    i = 0
    drawn = 0
    while drawn < ann_budget:
        if i >= cap:
            return _STATUS_BUFFER_FULL, i
        if m % 2 == 0:
            for a in range(alphabet_size):
                scratch[a] = 0
            count = 0
            if m >= 2 and not scratch[w[m - 2]]:
                scratch[w[m - 2]] = 1
                count += 1
            if m >= 4 and w[m - 1] == w[m - 4] and not scratch[w[m - 3]]:
                scratch[w[m - 3]] = 1
                count += 1
            if count == 1 and m >= 4:
                scratch[w[m - 4]] = 1
            k = 0
            for a in range(alphabet_size):
                if not scratch[a]:
                    cands[k] = a
                    k += 1
            s, wi = _pick(words, wi, cands, k)
            if s < 0:
                return _STATUS_WORDS_EXHAUSTED, i
            drawn += 1
            mover = 0
        else:
            s = _ben_symbol(ben_code, w, m, m, alphabet_size, 2, scratch)
            mover = 1
        h = _detect(w, m, s, 2)
        if h == 0:
            w[m] = s
            m += 1
        elif h > 1:
            m -= h - 1
        movers[i] = mover
        symbols[i] = s
        reps[i] = h
        heights[i] = m
        i += 1
    return _STATUS_OK, i


def _mt_words(seed: int, count: int) -> np.ndarray:
    """The first ``count`` 32-bit generator words for a seed, in draw order."""
    big = random.Random(seed & _SEED_MASK).getrandbits(32 * count)
    return np.frombuffer(big.to_bytes(4 * count, "little"), dtype=np.uint32)


def fast_simulate(game: str, alphabet_size: int, budget: int, ben: str, seed: int) -> GameRun:
    """Drop-in replacement for the pure engines, producing the identical run."""
    if not HAVE_FASTLANE:
        raise RuntimeError("numba is not available; use the pure engines")
    ben_code = _BEN_CODES[ben]
    if game == "erase":
        if alphabet_size < 4:
            raise ValueError("erase game needs alphabet size >= 4")
        if budget < 0 or budget % 2:
            raise ValueError("total_moves must be a nonnegative even number")
        cap = budget
        picks = budget // 2 + 1
    elif game == "nonrep":
        if alphabet_size < 3:
            raise ValueError("nonrepetitive game needs alphabet size >= 3")
        cap = 3 * budget + 8
        picks = budget + 1
    else:
        raise ValueError(f"unknown game {game!r}")

    w = np.zeros(cap + 2, dtype=np.int64)
    movers = np.zeros(cap, dtype=np.uint8)
    symbols = np.zeros(cap, dtype=np.int64)
    reps = np.zeros(cap, dtype=np.int64)
    heights = np.zeros(cap, dtype=np.int64)

    n_words = max(64, 2 * picks)
    while True:
        words = _mt_words(seed, n_words)
        if game == "erase":
            status, n_moves = _erase_kernel(
                alphabet_size, budget, ben_code, words, w, movers, symbols, reps, heights
            )
        else:
            status, n_moves = _search_kernel(
                alphabet_size, budget, ben_code, words, w, movers, symbols, reps, heights
            )
        if status == _STATUS_OK:
            break
        if status == _STATUS_WORDS_EXHAUSTED:
            # The generator word stream is prefix-stable, so retrying with a
            # longer buffer replays the same run.
            n_words *= 4
            continue
        raise RuntimeError("search step buffer overflow; adversary broke the shape")

    moves = []
    ann_choices = []
    for j in range(n_moves):
        mover = ANN if movers[j] == 0 else BEN
        sym = int(symbols[j])
        moves.append(MoveRecord(j + 1, mover, sym, int(reps[j]), int(heights[j])))
        if movers[j] == 0:
            ann_choices.append(sym)
    final_len = int(heights[n_moves - 1]) if n_moves else 0
    final = GameSequence(alphabet_size, [int(x) for x in w[:final_len]])
    if game == "erase":
        config = GameConfig("erase", alphabet_size, ben, seed, total_moves=budget)
    else:
        config = GameConfig("nonrep", alphabet_size, ben, seed, ann_budget=budget)
    return GameRun(config, moves, ann_choices, final)
