"""Hill-climbing search over block-operation configurations.

A configuration (:class:`NArray`) assigns each source index one of: skip,
``move(j)`` or ``remove(j)``, where a non-skip value at index ``i`` names the
block ``S[i-j+1 : i+1]`` ending there.  Configurations are scored by
:func:`block_edit_distance` and improved one cell at a time by
:func:`compute_n`.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence as Seq, Tuple

from rapidfuzz.distance import Levenshtein

from .editdp import EditOp, edit_distance, edit_script
from .wtable import INF, REVERSE, AlignParams, WTable, compute_w

MOVE = "move"
INVERTED_MOVE = "inverted_move"
REMOVE = "remove"


class ContractViolation(RuntimeError):
    """A configuration references a block match that W rejected."""


class DisjointnessError(ValueError):
    """Two block moves claim overlapping target intervals."""


class NArray:
    """Per-index operation codes: ``0`` skip, ``+j`` move, ``-j`` remove."""

    __slots__ = ("m", "len_min", "_cells")

    def __init__(self, m: int, len_min: int, cells: Optional[Iterable[int]] = None):
        self.m = m
        self.len_min = len_min
        self._cells: Dict[int, int] = {}
        if cells is not None:
            cells = list(cells)
            if len(cells) != m:
                raise ValueError(f"expected {m} cells, got {len(cells)}")
            for i, v in enumerate(cells):
                if v:
                    self[i] = v

    def __getitem__(self, i: int) -> int:
        return self._cells.get(i, 0)

    def __setitem__(self, i: int, value: int) -> None:
        if not 0 <= i < self.m:
            raise IndexError(i)
        value = int(value)
        if value == 0:
            self._cells.pop(i, None)
            return
        j = abs(value)
        if j < self.len_min:
            raise ValueError(f"block length {j} below len_min={self.len_min}")
        if i - j + 1 < 0:
            raise ValueError(f"block of length {j} ending at {i} starts before 0")
        self._cells[i] = value

    def __len__(self) -> int:
        return self.m

    def __eq__(self, other) -> bool:
        return (isinstance(other, NArray) and self.m == other.m
                and self._cells == other._cells)

    def __repr__(self) -> str:
        return f"NArray(m={self.m}, cells={dict(sorted(self._cells.items()))})"

    def tolist(self) -> List[int]:
        return [self._cells.get(i, 0) for i in range(self.m)]

    def nonzero(self) -> Dict[int, int]:
        return dict(self._cells)

    def copy(self) -> "NArray":
        out = NArray(self.m, self.len_min)
        out._cells = dict(self._cells)
        return out


@dataclass(frozen=True)
class BlockOp:
    kind: str
    source_start: int
    source_len: int
    target_start: Optional[int] = None
    target_len: Optional[int] = None
    internal_dist: int = 0
    op_cost: int = 1
    in_place: bool = False

    @property
    def source_end(self) -> int:
        return self.source_start + self.source_len

    @property
    def target_end(self) -> Optional[int]:
        if self.target_start is None:
            return None
        return self.target_start + self.target_len

    def describe(self) -> str:
        tgt = "-" if self.target_start is None else f"T[{self.target_start}..{self.target_end})"
        return (f"{self.kind} S[{self.source_start}..{self.source_end}) -> {tgt} "
                f"dist={self.internal_dist} cost={self.op_cost}")


@dataclass
class CharEdit:
    """A residual character edit in original coordinates."""

    tag: str
    s_pos: Optional[int]
    t_pos: Optional[int]

    def describe(self, s: str, t: str) -> str:
        if self.tag == "substitute":
            return f"substitute S[{self.s_pos}]={s[self.s_pos]} -> T[{self.t_pos}]={t[self.t_pos]}"
        if self.tag == "delete":
            return f"delete S[{self.s_pos}]={s[self.s_pos]}"
        return f"insert T[{self.t_pos}]={t[self.t_pos]}"


@dataclass
class AlignmentReport:
    ops: List[BlockOp]
    residual_s: str
    residual_t: str
    char_cost: int
    total: int
    char_edits: List[CharEdit] = field(default_factory=list)
    iterations_used: int = 0
    converged: bool = False
    history: List[int] = field(default_factory=list)

    @property
    def block_cost(self) -> int:
        return sum(op.op_cost for op in self.ops)

    @property
    def cbed(self) -> int:
        return self.total


def _effective(cells: Dict[int, int]) -> List[Tuple[int, int, int]]:
    """Backward scan of the non-skip cells; ``(start, length, value)`` ascending."""
    ops = []
    nxt = None
    for i in sorted(cells, reverse=True):
        if nxt is not None and i > nxt:
            continue
        v = cells[i]
        j = v if v > 0 else -v
        ops.append((i - j + 1, j, v))
        nxt = i - j
    ops.reverse()
    return ops


def _target_of(w: WTable, start: int, j: int) -> Tuple[int, int, int, bool]:
    o = j - w.params.len_min
    d = w.distance[start, o]
    if d == INF:
        raise ContractViolation(f"move of S[{start}..{start + j}) has no admissible match in W")
    return int(d), int(w.target_start[start, o]), int(w.target_len[start, o]), bool(w.reverse[start, o])


def reconstruct(n: NArray, w: Optional[WTable] = None,
                params: Optional[AlignParams] = None) -> List[BlockOp]:
    """Effective block operations of ``n``, ordered by source start.

    Cells are read from the last index down; a non-skip cell emits its block
    and the scan resumes just below the block, so cells inside it are
    shadowed.  Without ``w`` moves carry no target interval.
    """
    params = params or (w.params if w is not None else AlignParams(len_min=n.len_min, len_max=max(n.len_min, 1)))
    out = []
    for start, j, v in _effective(n.nonzero()):
        if v < 0:
            out.append(BlockOp(REMOVE, start, j, op_cost=params.cost_remove))
        elif w is None:
            out.append(BlockOp(MOVE, start, j, op_cost=params.cost_move))
        else:
            d, ts, tl, rev = _target_of(w, start, j)
            internal = d - params.cost_reversal if rev else d
            out.append(BlockOp(INVERTED_MOVE if rev else MOVE, start, j, ts, tl,
                               internal_dist=internal, op_cost=params.cost_move + d))
    return out


def _overlapping(intervals: List[Tuple[int, int]]) -> bool:
    intervals = sorted(intervals)
    return any(a[1] > b[0] for a, b in zip(intervals, intervals[1:]))


def violates_disjointness(candidate: Tuple[int, int], n: NArray, w: WTable) -> bool:
    """Whether half-open ``candidate`` meets a move target of ``reconstruct(n)``."""
    lo, hi = candidate
    for op in reconstruct(n, w):
        if op.target_start is not None and op.target_start < hi and lo < op.target_end:
            return True
    return False


def prune_removals(score_j0: int, best_score: int, j0: int) -> int:
    """Length bound ``j0 - (score_j0 - best_score - 1)`` for removal pruning.

    Removal lengths within ``j0 - bound`` of ``j0`` differ from the evaluated
    one by fewer characters than the score gap, so they cannot beat
    ``best_score`` (when both leave the rest of the scan unchanged).
    """
    return j0 - (score_j0 - best_score - 1)


class _Scorer:
    """Scores configurations from their effective op lists."""

    def __init__(self, s: str, t: str, w: WTable, params: AlignParams):
        self.s, self.t = s, t
        self.lmin = params.len_min
        self.cost_move = params.cost_move
        self.cost_remove = params.cost_remove
        self.dist = w.distance.tolist()
        self.tstart = w.target_start.tolist()
        self.tlen = w.target_len.tolist()

    def __call__(self, ops: Seq[Tuple[int, int, int]]) -> Optional[int]:
        s, t = self.s, self.t
        block = 0
        tints = []
        s_parts = []
        pos = 0
        for start, j, v in ops:
            s_parts.append(s[pos:start])
            pos = start + j
            if v < 0:
                block += self.cost_remove
            else:
                o = j - self.lmin
                d = self.dist[start][o]
                if d == INF:
                    raise ContractViolation(f"move of S[{start}..{start + j}) has no admissible match in W")
                block += self.cost_move + d
                ts = self.tstart[start][o]
                tints.append((ts, ts + self.tlen[start][o]))
        s_parts.append(s[pos:])
        if tints:
            tints.sort()
            t_parts = []
            pos = 0
            for lo, hi in tints:
                if lo < pos:
                    return None
                t_parts.append(t[pos:lo])
                pos = hi
            t_parts.append(t[pos:])
            new_t = "".join(t_parts)
        else:
            new_t = t
        return block + Levenshtein.distance("".join(s_parts), new_t)


def _residual(seq: str, intervals: Iterable[Tuple[int, int]]) -> Tuple[str, List[int]]:
    covered = bytearray(len(seq))
    for lo, hi in intervals:
        covered[lo:hi] = b"\x01" * (hi - lo)
    keep = [k for k in range(len(seq)) if not covered[k]]
    return "".join(seq[k] for k in keep), keep


def _gap_targets(new_s: str, new_t: str):
    """For each gap in ``new_s``, the range of aligned gaps in ``new_t``."""
    spans: Dict[int, Tuple[int, int]] = {}

    def add(g, lo, hi):
        a, b = spans.get(g, (lo, hi))
        spans[g] = (min(a, lo), max(b, hi))

    for tag, i1, i2, j1, j2 in Levenshtein.opcodes(new_s, new_t):
        if tag in ("equal", "replace"):
            for g in range(i1, i2 + 1):
                add(g, j1 + g - i1, j1 + g - i1)
        elif tag == "delete":
            for g in range(i1, i2 + 1):
                add(g, j1, j1)
        else:
            add(i1, j1, j2)
    if not spans:
        spans[0] = (0, len(new_t))
    return spans


def block_edit_distance(s: str, t: str, n: NArray, w: WTable,
                        params: Optional[AlignParams] = None) -> Tuple[int, AlignmentReport]:
    """Total cost of configuration ``n`` and its full report.

    Characters covered by a block operation are dropped from ``s`` (all ops)
    and from ``t`` (move targets); the leftovers are aligned with unit-cost
    edit distance and added to the summed block costs.
    """
    params = params or w.params
    ops = reconstruct(n, w, params)
    tints = [(op.target_start, op.target_end) for op in ops if op.target_start is not None]
    if _overlapping(tints):
        raise DisjointnessError("block moves overlap in the target")
    new_s, s_keep = _residual(s, [(op.source_start, op.source_end) for op in ops])
    new_t, t_keep = _residual(t, tints)
    char_cost = edit_distance(new_s, new_t)

    edits = []
    for e in edit_script(new_s, new_t):
        s_pos = s_keep[e.a_pos] if e.tag != "insert" else None
        t_pos = t_keep[e.b_pos] if e.tag != "delete" else None
        edits.append(CharEdit(e.tag, s_pos, t_pos))

    if any(op.kind == INVERTED_MOVE for op in ops):
        gaps = _gap_targets(new_s, new_t)
        marked = []
        for op in ops:
            if op.kind == INVERTED_MOVE:
                rank_s = bisect.bisect_left(s_keep, op.source_start)
                rank_t = bisect.bisect_left(t_keep, op.target_start)
                lo, hi = gaps.get(rank_s, (-1, -1))
                if lo <= rank_t <= hi:
                    op = BlockOp(op.kind, op.source_start, op.source_len, op.target_start,
                                 op.target_len, op.internal_dist, op.op_cost, in_place=True)
            marked.append(op)
        ops = marked

    total = char_cost + sum(op.op_cost for op in ops)
    return total, AlignmentReport(ops, new_s, new_t, char_cost, total, edits)


def compute_n(s: str, t: str, w: WTable, params: Optional[AlignParams] = None,
              prune: bool = True) -> Tuple[NArray, AlignmentReport]:
    """Hill-climb the configuration one index at a time.

    Every pass visits each index at which a block can end.  Candidates are
    evaluated in the order skip, then ``remove(j)`` and ``move(j)`` for
    ascending ``j``; a cell changes only on strict improvement over the
    current total.  Passes repeat until one changes nothing or
    ``params.max_iterations`` is reached.
    """
    params = params or w.params
    m = len(s)
    lmin, lmax = params.len_min, params.len_max
    if m < lmin:
        raise ValueError(f"source length {m} is shorter than len_min={lmin}")
    score = _Scorer(s, t, w, params)
    finite = [[d != INF for d in row] for row in score.dist]
    cells: Dict[int, int] = {}
    keys: List[int] = []

    def evaluate(i, v):
        old = cells.get(i)
        if v:
            cells[i] = v
        else:
            cells.pop(i, None)
        try:
            return score(_effective(cells))
        finally:
            if old is None:
                cells.pop(i, None)
            else:
                cells[i] = old

    total = score([])
    history = [total]
    converged = False
    iterations = 0
    for iterations in range(1, params.max_iterations + 1):
        changed = False
        for i in range(lmin - 1, m):
            incumbent = cells.get(i, 0)
            best_score, best_v = total, incumbent
            if incumbent:
                cand = evaluate(i, 0)
                if cand is not None and cand < best_score:
                    best_score, best_v = cand, 0
            skip_removals_to = 0
            for j in range(lmin, lmax + 1):
                start = i - j + 1
                if start < 0:
                    break
                if -j != incumbent and j > skip_removals_to:
                    cand = evaluate(i, -j)
                    if cand is not None and cand < best_score:
                        best_score, best_v = cand, -j
                    elif prune and cand is not None and cand > best_score:
                        bound = prune_removals(cand, best_score, j)
                        reach = 2 * j - bound
                        k = bisect.bisect_right(keys, i - j) - 1
                        if k >= 0 and keys[k] == i:
                            k -= 1
                        if k >= 0:
                            reach = min(reach, i - keys[k])
                        skip_removals_to = reach
                if j != incumbent and finite[start][j - lmin]:
                    cand = evaluate(i, j)
                    if cand is not None and cand < best_score:
                        best_score, best_v = cand, j
            if best_v != incumbent:
                changed = True
                total = best_score
                if best_v:
                    # drop cells the new block shadows; the effective ops are unchanged
                    j = best_v if best_v > 0 else -best_v
                    lo = bisect.bisect_left(keys, i - j + 1)
                    hi = bisect.bisect_left(keys, i)
                    for k in keys[lo:hi]:
                        del cells[k]
                    del keys[lo:hi]
                    cells[i] = best_v
                    if not incumbent:
                        bisect.insort(keys, i)
                else:
                    del cells[i]
                    keys.remove(i)
        history.append(total)
        if not changed:
            converged = True
            break

    n = NArray(m, lmin)
    for i, v in cells.items():
        n[i] = v
    final, report = block_edit_distance(s, t, n, w, params)
    if final != total:
        raise ContractViolation(f"incremental total {total} disagrees with rescoring {final}")
    report.iterations_used = iterations
    report.converged = converged
    report.history = history
    return n, report


def align(s: str, t: str, params: Optional[AlignParams] = None,
          prune: bool = True) -> AlignmentReport:
    """Compute W and hill-climb N for one pair; returns the final report."""
    params = params or AlignParams()
    w = compute_w(s, t, params)
    return compute_n(s, t, w, params, prune=prune)[1]
