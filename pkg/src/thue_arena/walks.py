"""Exact counting of the two weighted walk families behind the game analysis.

A walk is a sequence of integer steps whose prefix sums never drop below 1
and whose total is a fixed target (1 unless stated otherwise).  Step 0 is
never allowed.  The erase family uses steps {1, -3, -4, ...}, all weight 1.
The search family uses steps {1, -1} with weight 1 and steps {-2, -3, ...}
with weight 4, one for each transition type a steep drop can have.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

BRUTE_FORCE_LIMIT = 18


@dataclass(frozen=True)
class WalkSpec:
    """Weighted step set with a prefix-sum floor of 1.

    Steps of +1 have weight ``up_weight``; selected negative steps carry the
    weights in ``specials``; every step at or below ``tail_start`` carries
    ``tail_weight``.  All other steps are forbidden.
    """

    name: str
    up_weight: int = 1
    specials: dict[int, int] = field(default_factory=dict)
    tail_start: int = -3
    tail_weight: int = 1
    target_sum: int = 1

    def weight(self, step: int) -> int:
        if step == 1:
            return self.up_weight
        if step in self.specials:
            return self.specials[step]
        if step <= self.tail_start:
            return self.tail_weight
        return 0


ERASE_WALKS = WalkSpec(name="erase", tail_start=-3, tail_weight=1)
SEARCH_WALKS = WalkSpec(name="search", specials={-1: 1}, tail_start=-2, tail_weight=4)


def spec_for_game(game: str) -> WalkSpec:
    if game == "erase":
        return ERASE_WALKS
    if game == "nonrep" or game == "search":
        return SEARCH_WALKS
    raise ValueError(f"unknown walk family {game!r}")


@dataclass
class CensusTable:
    """Counts T_1, ..., T_m of walks by length, exact integers."""

    spec: WalkSpec
    counts: list[int]

    def __len__(self) -> int:
        return len(self.counts)

    def count(self, m: int) -> int:
        return self.counts[m - 1]

    def rows(self) -> list[tuple[int, int, float]]:
        """(m, T_m, T_m^(1/m)) rows for export."""
        out = []
        for m, t in enumerate(self.counts, start=1):
            root = math.exp(math.log(t) / m) if t > 0 else 0.0
            out.append((m, t, root))
        return out

    def to_csv(self) -> str:
        lines = ["m,T_m,T_m^(1/m)"]
        lines += [f"{m},{t},{r:.6f}" for m, t, r in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            [{"m": m, "T_m": str(t), "root": r} for m, t, r in self.rows()]
        )


def count_walks_bruteforce(spec: WalkSpec, m: int, target: int | None = None) -> int:
    """Exhaustive enumeration of all step sequences of length ``m``.

    Exact but exponential; refuses lengths above the guard so callers reach
    for the dynamic program instead.
    """
    if m < 0:
        raise ValueError("length must be nonnegative")
    if m > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"length {m} exceeds the enumeration guard {BRUTE_FORCE_LIMIT}; "
            "use count_walks_dp"
        )
    goal = spec.target_sum if target is None else target
    weight = spec.weight

    def rec(left: int, height: int) -> int:
        if left == 0:
            return 1 if height == goal else 0
        if height + left < goal:
            return 0  # even all-up steps cannot reach the target
        total = spec.up_weight * rec(left - 1, height + 1)
        step = -1
        while height + step >= 1:
            w = weight(step)
            if w:
                total += w * rec(left - 1, height + step)
            step -= 1
        return total

    return rec(m, 0)


def _dp_rows(spec: WalkSpec, m_max: int) -> list[list[int]]:
    """row[j][u] = weighted count of length-j prefixes ending at height u
    with every prefix sum >= 1.  Heights are bounded by j since steps are <= +1."""
    rows: list[list[int]] = [[0] * (m_max + 2)]
    row = [0] * (m_max + 2)
    if m_max >= 1:
        row[1] = spec.up_weight
    rows.append(list(row))
    prev = row
    for j in range(2, m_max + 1):
        # Suffix sums of the previous row power the constant-weight tail.
        suffix = [0] * (m_max + 3)
        for u in range(m_max + 1, 0, -1):
            suffix[u] = suffix[u + 1] + prev[u]
        cur = [0] * (m_max + 2)
        for u in range(1, j + 1):
            acc = spec.up_weight * prev[u - 1] if u >= 2 else 0
            for step, w in spec.specials.items():
                v = u - step
                if v <= m_max:
                    acc += w * prev[v]
            v = u - spec.tail_start
            if v <= m_max + 1:
                acc += spec.tail_weight * suffix[v]
            cur[u] = acc
        rows.append(cur)
        prev = cur
    return rows


def count_walks_dp(spec: WalkSpec, m_max: int) -> CensusTable:
    """Exact census of walk counts for every length up to ``m_max``."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    rows = _dp_rows(spec, m_max)
    target = spec.target_sum
    counts = [rows[m][target] if target <= m_max + 1 else 0 for m in range(1, m_max + 1)]
    return CensusTable(spec, counts)


def count_walks_with_sum(spec: WalkSpec, m: int, k: int) -> int:
    """Walks of length ``m`` with total sum ``k`` instead of the default target."""
    if k < 1:
        raise ValueError("the floor forces totals >= 1")
    if m < 1:
        return 0
    if k > m:
        return 0
    rows = _dp_rows(spec, m)
    return rows[m][k]


def count_walks_recurrence(spec: WalkSpec, m_max: int) -> list[int]:
    """Independent cross-check of the census via the last-step decomposition.

    A walk of length m >= 2 ends with a negative step d and splits uniquely
    into |d| + 1 consecutive walks of total length m - 1 (by last visits of
    the intermediate heights), weighted by the step weight.  So T_m is a sum
    of convolution powers of the shorter counts.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    t = [0] * (m_max + 1)  # t[m] = T_m
    t[1] = spec.up_weight
    for m in range(2, m_max + 1):
        total = 0
        # power[i] = coefficient of length i in the r-fold convolution of t
        power = t[: m]
        for r in range(2, m + 1):
            nxt = [0] * m
            for i in range(r - 1, m):
                acc = 0
                for i1 in range(1, i - r + 2):
                    if t[i1]:
                        acc += t[i1] * power[i - i1]
                nxt[i] = acc
            power = nxt
            step = -(r - 1)  # a final drop of r - 1 splits into r components
            w = spec.weight(step)
            if w:
                total += w * power[m - 1]
        t[m] = total
    return t[1:]
