"""Exhaustive block edit distance for tiny inputs (test ground truth)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from .aligner import NArray
from .editdp import edit_distance
from .wtable import INF, AlignParams, WTable

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    """The configuration space is larger than the allowed budget."""


@dataclass
class OracleResult:
    optimum: int
    witness: NArray
    configurations: int


def count_configurations(m: int, w: WTable) -> int:
    """Number of shadow-free configurations (before the target-overlap filter)."""
    lmin, lmax = w.params.len_min, w.params.len_max

    @lru_cache(maxsize=None)
    def f(p):
        # configurations of cells 0..p
        if p < lmin - 1:
            return 1
        total = f(p - 1)
        for j in range(lmin, min(lmax, p + 1) + 1):
            branches = 1 + int(w.is_finite(p - j + 1, j))
            total += branches * f(p - j)
        return total

    total = 1
    for p in range(m):
        total = f(p)
    return total


def exhaustive_bed(s: str, t: str, w: WTable, params: Optional[AlignParams] = None,
                   budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Minimum total over every shadow-free, target-disjoint configuration.

    Configurations differing only in shadowed cells are the same op set, so
    only canonical ones (no skipped-over non-zero cells) are enumerated.
    Branches whose block cost already exceeds the incumbent are cut; among
    equal totals the lexicographically smallest cell vector is returned.
    """
    params = params or w.params
    m = len(s)
    lmin, lmax = params.len_min, params.len_max
    count = count_configurations(m, w)
    if count > budget:
        raise BudgetExceeded(f"{count} configurations exceed the budget of {budget}")

    moves: Dict[tuple, tuple] = {}
    for i in range(m):
        for j in range(lmin, lmax + 1):
            e = w.entry(i, j)
            if e is not None:
                mask = ((1 << e.target_len) - 1) << e.target_start
                moves[i, j] = (params.cost_move + e.distance, mask)

    t_cache: Dict[int, str] = {0: t}

    def residual_t(occ):
        r = t_cache.get(occ)
        if r is None:
            r = "".join(ch for k, ch in enumerate(t) if not occ >> k & 1)
            t_cache[occ] = r
        return r

    best = [edit_distance(s, t), (0,) * m]
    chosen: List[tuple] = []

    def leaf(p, tail, occ, cost):
        total = cost + edit_distance(s[:p + 1] + tail, residual_t(occ))
        if total > best[0]:
            return
        cells = [0] * m
        for end, v in chosen:
            cells[end] = v
        key = tuple(cells)
        if total < best[0] or key < best[1]:
            best[0], best[1] = total, key

    def rec(p, tail, occ, cost):
        # ops may end at any q <= p; kept characters after them form ``tail``
        if cost > best[0]:
            return
        leaf(p, tail, occ, cost)
        for q in range(p, lmin - 2, -1):
            kept = s[q + 1:p + 1] + tail
            for j in range(lmin, min(lmax, q + 1) + 1):
                start = q - j + 1
                chosen.append((q, -j))
                rec(start - 1, kept, occ, cost + params.cost_remove)
                chosen.pop()
                mv = moves.get((start, j))
                if mv is not None and not occ & mv[1]:
                    chosen.append((q, j))
                    rec(start - 1, kept, occ | mv[1], cost + mv[0])
                    chosen.pop()

    rec(m - 1, "", 0, 0)
    witness = NArray(m, lmin, best[1])
    return OracleResult(best[0], witness, int(count))
