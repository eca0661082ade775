"""Random sequence pairs with planted block operations and character noise."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .seqcore import Sequence, reverse_complement

MOVE = "move"
INVERTED_MOVE = "inverted_move"
REVERSAL = "reversal"
DELETE = "delete"
KINDS = (MOVE, INVERTED_MOVE, REVERSAL, DELETE)

# provenance codes for characters of T
_FREE, _BLOCK, _EDIT = 0, 1, 2


class SimulationError(ValueError):
    """Raised when the requested operations cannot be placed."""


@dataclass
class SimConfig:
    seq_len_min: int = 800
    seq_len_max: int = 1200
    block_len_min: int = 20
    block_len_max: int = 40
    divergence: float = 0.10
    char_edits: Optional[int] = None
    n_ops: Optional[int] = None
    op_mix: Dict[str, float] = field(default_factory=lambda: {k: 1.0 for k in KINDS})
    rng_seed: int = 0
    min_move_distance: Optional[int] = None
    margin: int = 1
    cost_move: int = 1
    cost_reversal: int = 1
    cost_remove: int = 1

    def __post_init__(self):
        if not 1 <= self.seq_len_min <= self.seq_len_max:
            raise ValueError("need 1 <= seq_len_min <= seq_len_max")
        if not 1 <= self.block_len_min <= self.block_len_max <= self.seq_len_min:
            raise ValueError("need 1 <= block_len_min <= block_len_max <= seq_len_min")
        if not 0.0 <= self.divergence <= 1.0:
            raise ValueError("divergence must lie in [0, 1]")
        unknown = set(self.op_mix) - set(KINDS)
        if unknown:
            raise ValueError(f"unknown op kinds {sorted(unknown)}")
        if sum(self.op_mix.values()) <= 0 or min(self.op_mix.values()) < 0:
            raise ValueError("op_mix weights must be non-negative with a positive sum")
        if self.char_edits is not None and self.char_edits < 0:
            raise ValueError("char_edits must be >= 0")
        if self.n_ops is not None and self.n_ops < 0:
            raise ValueError("n_ops must be >= 0")
        if self.margin < 1:
            raise ValueError("margin must be >= 1")

    def op_cost(self, kind: str) -> int:
        if kind == MOVE:
            return self.cost_move
        if kind in (INVERTED_MOVE, REVERSAL):
            return self.cost_move + self.cost_reversal
        return self.cost_remove


@dataclass
class PlantedOp:
    kind: str
    source_start: int
    source_len: int
    target_start: Optional[int] = None
    target_len: Optional[int] = None

    def to_json(self) -> dict:
        tgt = None if self.target_start is None else [self.target_start, self.target_len]
        return {"kind": self.kind, "src": [self.source_start, self.source_len], "tgt": tgt}


@dataclass
class GroundTruth:
    seed: int
    ops: List[PlantedOp]
    char_edits: int
    sbed: int
    b_max: int
    divergence: float

    def to_json(self, s: str, t: str) -> dict:
        return {
            "seed": self.seed,
            "s": str(s),
            "t": str(t),
            "ops": [op.to_json() for op in self.ops],
            "char_edits": self.char_edits,
            "sbed": self.sbed,
            "b_max": self.b_max,
            "divergence": self.divergence,
        }


def dumps_truth(s: str, t: str, truth: GroundTruth) -> str:
    return json.dumps(truth.to_json(s, t), indent=2, sort_keys=True) + "\n"


def loads_truth(text: str) -> Tuple[Sequence, Sequence, GroundTruth]:
    d = json.loads(text)
    ops = [PlantedOp(o["kind"], o["src"][0], o["src"][1],
                     *(o["tgt"] if o["tgt"] is not None else (None, None)))
           for o in d["ops"]]
    truth = GroundTruth(d["seed"], ops, d["char_edits"], d["sbed"], d["b_max"], d["divergence"])
    return Sequence(d["s"]), Sequence(d["t"]), truth


def _composition(rng, total: int, parts: int) -> np.ndarray:
    """Uniform random split of ``total`` into ``parts`` non-negative integers."""
    cuts = np.sort(rng.integers(0, total + 1, size=parts - 1))
    return np.diff(np.concatenate([[0], cuts, [total]]))


MAX_DRAWS = 100


def simulate_pair(config: SimConfig) -> Tuple[Sequence, Sequence, GroundTruth]:
    """Plant ``round(divergence * b_max)`` block operations into a random S.

    Blocks are disjoint and separated from each other, from move insertion
    points and from character edits by at least ``config.margin`` untouched
    characters.  Each planted op is reported in its leftmost equivalent
    position.  A draw that leaves no room for some feature is discarded and
    redrawn from the same generator, up to ``MAX_DRAWS`` times.
    """
    rng = np.random.default_rng(config.rng_seed)
    for _ in range(MAX_DRAWS - 1):
        try:
            return _draw(config, rng)
        except SimulationError:
            pass
    return _draw(config, rng)


def _draw(config: SimConfig, rng) -> Tuple[Sequence, Sequence, GroundTruth]:
    m = int(rng.integers(config.seq_len_min, config.seq_len_max + 1))
    s = "".join(np.array(list("ACGT"))[rng.integers(0, 4, size=m)])
    b_max = m // config.block_len_max
    b = int(round(config.divergence * b_max)) if config.n_ops is None else config.n_ops
    margin = config.margin
    min_move = config.min_move_distance
    if min_move is None:
        min_move = config.block_len_max

    lengths = rng.integers(config.block_len_min, config.block_len_max + 1, size=b)
    free = m - int(lengths.sum()) - max(b - 1, 0) * margin
    if free < 0:
        raise SimulationError(f"cannot place {b} disjoint blocks in a sequence of length {m}")
    starts = []
    if b:
        gaps = _composition(rng, free, b + 1)
        pos = int(gaps[0])
        for k in range(b):
            starts.append(pos)
            pos += int(lengths[k]) + margin + int(gaps[k + 1])

    kinds_all = [k for k in KINDS if config.op_mix.get(k, 0) > 0]
    weights = np.array([config.op_mix[k] for k in kinds_all], dtype=float)
    kinds = [kinds_all[k] for k in rng.choice(len(kinds_all), size=b, p=weights / weights.sum())]

    for k, kind in enumerate(kinds):
        if kind == REVERSAL:
            left = starts[k - 1] + int(lengths[k - 1]) if k else 0
            right = starts[k + 1] if k + 1 < b else m
            s = _identifiable_reversal(rng, s, starts[k], int(lengths[k]), left, right)

    in_block = np.zeros(m, dtype=bool)
    for a, l in zip(starts, lengths):
        in_block[a:a + int(l)] = True
    backbone = np.flatnonzero(~in_block)
    # rank r = insertion slot before the r-th backbone character
    rank_of_start = [int(np.searchsorted(backbone, a)) for a in starts]
    forbidden = np.zeros(len(backbone) + 1, dtype=bool)

    def block_out(r):
        lo, hi = max(r - margin, 0), min(r + margin, len(backbone))
        forbidden[lo:hi + 1] = True

    for r in rank_of_start:
        block_out(r)

    insert_at: Dict[int, List[int]] = {}
    for k, kind in enumerate(kinds):
        if kind not in (MOVE, INVERTED_MOVE):
            continue
        src = rank_of_start[k]
        slots = np.flatnonzero(~forbidden)
        slots = slots[np.abs(slots - src) >= min_move]
        if not len(slots):
            raise SimulationError("no admissible insertion point for a block move")
        r = int(rng.choice(slots))
        insert_at.setdefault(r, []).append(k)
        block_out(r)

    n_edits = config.char_edits if config.char_edits is not None else math.ceil(0.5 * b)
    edit_at: Dict[int, str] = {}
    for _ in range(n_edits):
        # an edit at backbone char r must keep both slots around it clear
        ok = np.flatnonzero(~forbidden[:-1] & ~forbidden[1:])
        ok = ok[(ok > 0) & (ok < len(backbone) - 1)] if len(ok) else ok
        if not len(ok):
            raise SimulationError("no room left for character edits")
        r = int(rng.choice(ok))
        edit_at[r] = ("substitute", "insert", "delete")[int(rng.integers(0, 3))]
        block_out(r)
        block_out(r + 1)

    window = 2 * config.block_len_max + margin
    deletes = [int(backbone[r]) for r, e in edit_at.items() if e == "delete"]
    near_deleted = {
        r: "".join(s[d] for d in deletes if abs(d - int(backbone[r])) <= window)
        for r, e in edit_at.items() if e == "insert"
    }

    # assemble T, recording provenance and planted target coordinates
    t_chars: List[str] = []
    t_prov: List[int] = []
    targets: Dict[int, Tuple[int, int]] = {}

    def emit(text, prov):
        t_chars.extend(text)
        t_prov.extend([prov] * len(text))

    def emit_moves(r):
        for k in insert_at.get(r, ()):
            a, l = starts[k], int(lengths[k])
            blk = s[a:a + l]
            if kinds[k] == INVERTED_MOVE:
                blk = reverse_complement(blk)
            targets[k] = (len(t_chars), l)
            emit(blk, _BLOCK)

    block_at = {a: k for k, a in enumerate(starts)}
    r = 0
    i = 0
    while i < m:
        if i in block_at:
            k = block_at[i]
            l = int(lengths[k])
            if kinds[k] == REVERSAL:
                targets[k] = (len(t_chars), l)
                emit(reverse_complement(s[i:i + l]), _BLOCK)
            i += l
            continue
        emit_moves(r)
        edit = edit_at.get(r)
        ch = s[i]
        if edit == "substitute":
            emit("ACGT".replace(ch, "")[int(rng.integers(0, 3))], _EDIT)
        elif edit == "insert":
            y = "ACGT"[int(rng.integers(0, 4))]
            if y in near_deleted.get(r, ""):
                # inserting the base a nearby delete removed is a shift of the
                # segment between them, which one block move explains more cheaply
                allowed = [c for c in "ACGT" if c not in near_deleted[r]]
                if not allowed:
                    raise SimulationError("no safe base for an insertion")
                y = allowed[int(rng.integers(0, len(allowed)))]
            emit(y, _EDIT)
            emit(ch, _EDIT)
        elif edit == "delete":
            pass
        else:
            emit(ch, _FREE)
        r += 1
        i += 1
    emit_moves(r)
    t = "".join(t_chars)

    s_free = np.ones(m, dtype=bool)
    s_free[in_block] = False
    for r_edit in edit_at:
        s_free[backbone[r_edit]] = False
    t_free = np.array(t_prov, dtype=np.int8) == _FREE

    ops = []
    for k in sorted(range(b), key=lambda k: starts[k]):
        a, l = starts[k], int(lengths[k])
        c = targets.get(k, (None, None))[0]
        a, c = _normalize(kinds[k], s, t, s_free, t_free, a, l, c)
        ops.append(PlantedOp(kinds[k], a, l, c, l if c is not None else None))

    sbed = sum(config.op_cost(op.kind) for op in ops) + n_edits
    divergence = b / b_max if b_max else 0.0
    truth = GroundTruth(config.rng_seed, ops, n_edits, sbed, b_max, divergence)
    return Sequence(s), Sequence(t), truth


def _reversal_ambiguous(s: str, a: int, l: int, slack: int = 4) -> bool:
    """Whether another exact inverted window near ``[a, a+l)`` yields the same T."""
    lo = max(a - 3 * slack, 0)
    hi = min(a + l + 3 * slack, len(s))
    src = s[lo:hi]
    a0, e0 = a - lo, a + l - lo
    tgt = src[:a0] + reverse_complement(src[a0:e0]) + src[e0:]
    for a2 in range(max(a0 - slack, 0), a0 + slack + 1):
        for e2 in range(max(e0 - slack, a2 + 1), min(e0 + slack, len(src)) + 1):
            if (a2, e2) == (a0, e0):
                continue
            blk = reverse_complement(src[a2:e2])
            rest = src[:a2] + src[e2:]
            width = e2 - a2
            for c2 in range(max(a2 - 2 * slack, 0), min(a2 + 2 * slack, len(tgt) - width) + 1):
                if tgt[c2:c2 + width] == blk and tgt[:c2] + tgt[c2 + width:] == rest:
                    return True
    return False


def _identifiable_reversal(rng, s: str, a: int, l: int, left: int, right: int,
                           slack: int = 6, attempts: int = 200) -> str:
    """Redraw the block and its free flanks until no equal-cost alternative exists."""
    lo, hi = max(a - slack, left), min(a + l + slack, right)
    for _ in range(attempts):
        if not _reversal_ambiguous(s, a, l, slack):
            return s
        fresh = "".join(np.array(list("ACGT"))[rng.integers(0, 4, size=hi - lo)])
        s = s[:lo] + fresh + s[hi:]
    raise SimulationError(f"could not draw an identifiable reversal at {a}")


def _normalize(kind, s, t, s_free, t_free, a, l, c):
    """Shift a planted op to its leftmost source position with identical effect."""
    n = len(t)
    while a > 0 and s_free[a - 1] and s[a - 1] == s[a + l - 1]:
        if kind == DELETE:
            pass
        elif kind == MOVE:
            if not (c > 0 and t_free[c - 1] and t[c - 1] == s[a + l - 1]):
                break
            c -= 1
        else:
            if not (c + l < n and t_free[c + l] and t[c + l] == t[c]):
                break
            c += 1
        a -= 1
    return a, c
