"""Unit-cost edit distance and a multi-length semi-global (infix) engine.

:func:`edit_distance` is the hot path of the aligner and is delegated to
rapidfuzz's bit-parallel Levenshtein.  :func:`edit_distance_dp` is the plain
quadratic recurrence, kept as an independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Sequence as Seq, Tuple

import numpy as np
from rapidfuzz.distance import Levenshtein

_CODES = np.full(256, 4, dtype=np.uint8)
for _k, _ch in enumerate("ACGT"):
    _CODES[ord(_ch)] = _k
_PAD = 255


def encode(s: str) -> np.ndarray:
    """Map a DNA string to uint8 codes 0..3."""
    return _CODES[np.frombuffer(s.encode("ascii"), dtype=np.uint8)]


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit substitution/insertion/deletion costs."""
    return Levenshtein.distance(a, b)


def edit_distance_dp(a: str, b: str) -> int:
    """Reference Wagner-Fischer implementation, O(|a|*|b|)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


class EditOp(NamedTuple):
    """One character edit; ``tag`` is substitute, insert or delete."""

    tag: str
    a_pos: int
    b_pos: int


_TAGS = {"replace": "substitute", "insert": "insert", "delete": "delete"}


def edit_script(a: str, b: str) -> List[EditOp]:
    """Minimal edit script turning ``a`` into ``b``.

    Positions follow the usual convention: ``a_pos`` indexes ``a`` for
    substitutions and deletions, ``b_pos`` indexes ``b`` for substitutions
    and insertions.
    """
    return [EditOp(_TAGS[op.tag], op.src_pos, op.dest_pos) for op in Levenshtein.editops(a, b)]


@dataclass(frozen=True)
class InfixHit:
    distance: int
    target_start: int
    target_len: int


def infix_table(starts: Seq[int], source: str, text: str, len_min: int, len_max: int
                ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched semi-global search of ``source[i:i+len_max]`` against ``text``.

    One DP table per start index ``i`` is filled row by row; row ``r`` holds
    the alignments of the prefix of length ``r``.  Free end gaps in ``text``
    make row 0 all zeros.  Each cell carries the smallest text start among
    its optimal paths, packed with the cost into one integer key, so the
    witness of every row is available without a separate traceback matrix.

    Returns three ``(len(starts), len_max - len_min + 1)`` int64 arrays:
    distance, witness start and witness length.  Rows for prefixes that run
    past the end of ``source`` hold ``-1``.  Witnesses are non-empty; among
    optimal ones the smallest start wins, then the shortest.
    """
    starts = np.asarray(starts, dtype=np.int64)
    k = len(starts)
    n = len(text)
    width = len_max - len_min + 1
    out_d = np.full((k, width), -1, dtype=np.int64)
    out_s = np.full((k, width), -1, dtype=np.int64)
    out_l = np.full((k, width), -1, dtype=np.int64)
    if k == 0 or n == 0:
        return out_d, out_s, out_l

    src = np.concatenate([encode(source), np.full(len_max, _PAD, dtype=np.uint8)])
    tcodes = encode(text)
    base = n + 1
    cols = np.arange(n + 1, dtype=np.int64)
    col_shift = cols * base
    remaining = len(source) - starts

    prev = np.broadcast_to(cols, (k, n + 1)).copy()
    for r in range(1, len_max + 1):
        sub = src[starts + r - 1][:, None] != tcodes[None, :]
        best = prev + base
        np.minimum(best[:, 1:], prev[:, :-1] + sub * base, out=best[:, 1:])
        best -= col_shift
        np.minimum.accumulate(best, axis=1, out=best)
        best += col_shift
        prev = best
        if r < len_min:
            continue
        cost, first = np.divmod(best, base)
        order = (cost * base + first) * base + cols
        order[first >= cols] = np.iinfo(np.int64).max
        pick = np.argmin(order, axis=1)
        rows = np.arange(k)
        valid = remaining >= r
        c = pick[valid]
        out_d[valid, r - len_min] = cost[rows[valid], c]
        out_s[valid, r - len_min] = first[rows[valid], c]
        out_l[valid, r - len_min] = c - first[rows[valid], c]
    return out_d, out_s, out_l


def infix_best_matches(pattern: str, text: str, len_min: int, len_max: int
                       ) -> List[Tuple[int, InfixHit]]:
    """Best infix hit in ``text`` for every prefix of ``pattern``.

    Returns ``(prefix_len, hit)`` for each prefix length in
    ``[len_min, min(len_max, len(pattern))]``.  Empty when ``len_min``
    exceeds the pattern length.

    >>> infix_best_matches("ACG", "TTACGTT", 3, 3)
    [(3, InfixHit(distance=0, target_start=2, target_len=3))]
    """
    if len_min < 1 or len_max < len_min:
        raise ValueError("need 1 <= len_min <= len_max")
    top = min(len_max, len(pattern))
    if len_min > top or not text:
        return []
    d, s, l = infix_table([0], pattern[:top], text, len_min, top)
    return [
        (len_min + o, InfixHit(int(d[0, o]), int(s[0, o]), int(l[0, o])))
        for o in range(top - len_min + 1)
    ]
