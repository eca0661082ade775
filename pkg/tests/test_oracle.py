import pytest

from blockalign.aligner import compute_n
from blockalign.oracle import BudgetExceeded, count_configurations, exhaustive_bed
from blockalign.wtable import AlignParams, compute_w

from conftest import random_dna


def _run(s, t, p, **kw):
    return exhaustive_bed(s, t, compute_w(s, t, p), p, **kw)


def test_identity_optimum_zero():
    p = AlignParams(2, 3, error_rate=0.0)
    res = _run("ACGTTA", "ACGTTA", p)
    assert res.optimum == 0 and res.witness.nonzero() == {}


def test_exact_block_move():
    res = _run("AAACC", "CCAAA", AlignParams(2, 3, error_rate=0.0))
    assert res.optimum == 1
    assert sum(1 for v in res.witness.nonzero().values() if v > 0) == 1


def test_inverted_move_costs_move_plus_reversal():
    # the block move is charged on top of C_BR, so it only ties plain ED here
    for er in (0.0, 0.5):
        assert _run("AA", "TT", AlignParams(2, 2, error_rate=er, cost_reversal=1)).optimum == 2


def test_budget_refusal():
    p = AlignParams(2, 3, error_rate=0.5)
    s = t = "ACGT" * 3
    w = compute_w(s, t, p)
    count = count_configurations(len(s), w)
    with pytest.raises(BudgetExceeded):
        exhaustive_bed(s, t, w, p, budget=count - 1)
    assert exhaustive_bed(s, t, w, p, budget=count).configurations == count


def test_configuration_count_without_moves():
    # every admissible cell is a removal only; count shadow-free removal sets of length 2
    p = AlignParams(2, 2, error_rate=0.0)
    s, t = "AAAA", "CCCC"
    w = compute_w(s, t, p)
    # tilings of 4 cells by skips and 2-removals: 1 + 3 + 1
    assert count_configurations(4, w) == 5


def test_never_above_heuristic(rng):
    for _ in range(25):
        m = int(rng.integers(8, 11))
        s, t = random_dna(rng, m), random_dna(rng, int(rng.integers(8, 11)))
        p = AlignParams(2, 3, error_rate=0.2)
        w = compute_w(s, t, p)
        assert exhaustive_bed(s, t, w, p).optimum <= compute_n(s, t, w, p)[1].total
