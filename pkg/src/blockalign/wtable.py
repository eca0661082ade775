"""Best target match for every admissible source block (the W table)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from .editdp import edit_distance, infix_table
from .seqcore import reverse_complement

FORWARD = "forward"
REVERSE = "reverse_complement"
INF = np.iinfo(np.int64).max


@dataclass(frozen=True)
class AlignParams:
    """Block-size window, match threshold and operation costs."""

    len_min: int = 20
    len_max: int = 40
    error_rate: float = 0.10
    cost_reversal: int = 1
    cost_move: int = 1
    cost_remove: int = 1
    max_iterations: int = 5

    def __post_init__(self):
        if int(self.len_min) != self.len_min or self.len_min < 1:
            raise ValueError(f"len_min must be an integer >= 1, got {self.len_min!r}")
        if int(self.len_max) != self.len_max or self.len_max < self.len_min:
            raise ValueError(f"len_max must be an integer >= len_min, got {self.len_max!r}")
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError(f"error_rate must lie in [0, 1], got {self.error_rate!r}")
        for name in ("cost_reversal", "cost_move", "cost_remove"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    @property
    def len_range(self) -> int:
        return self.len_max - self.len_min + 1


def dist_br(x: str, y: str, c_br: int) -> Tuple[int, str]:
    """``min(ed(x, y), ed(x, rc(y)) + c_br)`` and the orientation achieving it.

    Forward wins ties.
    """
    fwd = edit_distance(x, y)
    rev = edit_distance(x, reverse_complement(y)) + c_br
    return (fwd, FORWARD) if fwd <= rev else (rev, REVERSE)


def satisfies_c(match_dist: int, l1: int, l2: int, error_rate: float) -> bool:
    """Admit a match iff ``match_dist <= ceil(error_rate * (l1 + l2) / 2)``."""
    # round away float noise such as 0.1 * 50 = 5.000000000000001 before ceil
    limit = math.ceil(round(error_rate * (l1 + l2) / 2, 9))
    return match_dist <= limit


@dataclass(frozen=True)
class WEntry:
    distance: int
    target_start: int
    target_len: int
    orientation: str


class WTable:
    """Dense ``(m, len_range)`` table of best matches.

    Entry ``(i, j - len_min)`` describes source block ``S[i:i+j]``; overrunning
    or rejected blocks hold ``INF`` in :attr:`distance`.
    """

    def __init__(self, distance, target_start, target_len, reverse, params: AlignParams):
        self.distance = distance
        self.target_start = target_start
        self.target_len = target_len
        self.reverse = reverse
        self.params = params

    @property
    def shape(self) -> Tuple[int, int]:
        return self.distance.shape

    def is_finite(self, i: int, j: int) -> bool:
        o = j - self.params.len_min
        return (0 <= i < self.shape[0] and 0 <= o < self.shape[1]
                and self.distance[i, o] != INF)

    def entry(self, i: int, j: int) -> Optional[WEntry]:
        """Match for ``S[i:i+j]`` or ``None`` when the entry is infinite."""
        if not self.is_finite(i, j):
            return None
        o = j - self.params.len_min
        return WEntry(int(self.distance[i, o]), int(self.target_start[i, o]),
                      int(self.target_len[i, o]),
                      REVERSE if self.reverse[i, o] else FORWARD)

    def __iter__(self) -> Iterator[Tuple[int, int, Optional[WEntry]]]:
        m, width = self.shape
        for i in range(m):
            for o in range(width):
                j = o + self.params.len_min
                yield i, j, self.entry(i, j)

    def to_tsv(self) -> str:
        """Debug dump; infinite entries are written as ``INF``."""
        lines = ["i\tblock_len\tdistance\ttarget_start\ttarget_len\torientation"]
        for i, j, e in self:
            if e is None:
                lines.append(f"{i}\t{j}\tINF\t\t\t")
            else:
                tag = "R" if e.orientation == REVERSE else "F"
                lines.append(f"{i}\t{j}\t{e.distance}\t{e.target_start}\t{e.target_len}\t{tag}")
        return "\n".join(lines) + "\n"


def compute_w(s: str, t: str, params: AlignParams) -> WTable:
    """Fill the W table with one forward and one reverse-complement pass.

    The reverse pass searches each source block against ``rc(t)``; a hit at
    ``[p, p + l)`` there is the reverse complement of ``t[n-p-l : n-p]``.
    """
    m, n = len(s), len(t)
    if m < params.len_min:
        raise ValueError(f"source length {m} is shorter than len_min={params.len_min}")
    starts = np.arange(m)
    lo, hi = params.len_min, params.len_max
    fd, fs, fl = infix_table(starts, s, t, lo, hi)
    rd, rs, rl = infix_table(starts, s, reverse_complement(t), lo, hi)

    valid = fd >= 0
    rd_total = np.where(valid, rd + params.cost_reversal, -1)
    use_rev = valid & (rd_total < fd)
    dist = np.where(use_rev, rd_total, fd)
    tlen = np.where(use_rev, rl, fl)
    tstart = np.where(use_rev, n - rs - rl, fs)

    block_len = np.arange(lo, hi + 1)[None, :]
    limit = np.ceil(np.round(params.error_rate * (block_len + tlen) / 2, 9))
    keep = valid & (dist <= limit)
    dist = np.where(keep, dist, INF)
    tstart = np.where(keep, tstart, -1)
    tlen = np.where(keep, tlen, -1)
    return WTable(dist, tstart, tlen, keep & use_rev, params)
