import pytest

from blockalign.editdp import edit_distance
from blockalign.simulator import (DELETE, KINDS, SimConfig, SimulationError, dumps_truth, loads_truth,
                                  simulate_pair)

SMALL = dict(seq_len_min=300, seq_len_max=500, block_len_min=10, block_len_max=20)


def test_zero_ops_gives_identical_pair():
    s, t, truth = simulate_pair(SimConfig(**SMALL, n_ops=0, char_edits=0, rng_seed=4))
    assert s == t and truth.sbed == 0 and truth.ops == []


def test_b_max_from_length():
    _, _, truth = simulate_pair(SimConfig(seq_len_min=1200, seq_len_max=1200, block_len_max=40))
    assert truth.b_max == 30


def test_pure_delete():
    cfg = SimConfig(seq_len_min=400, seq_len_max=400, block_len_min=30, block_len_max=30,
                    n_ops=1, char_edits=0, op_mix={DELETE: 1.0}, rng_seed=2)
    s, t, truth = simulate_pair(cfg)
    assert truth.sbed == 1 and edit_distance(s, t) == 30 and len(t) == 370


def test_deterministic_per_seed():
    cfg = SimConfig(**SMALL, divergence=0.4, rng_seed=9)
    assert simulate_pair(cfg) == simulate_pair(cfg)
    other = simulate_pair(SimConfig(**SMALL, divergence=0.4, rng_seed=10))
    assert other[0] != simulate_pair(cfg)[0]


@pytest.mark.parametrize("seed", range(12))
def test_ground_truth_properties(seed):
    cfg = SimConfig(**SMALL, divergence=0.1 + 0.08 * seed, rng_seed=seed)
    s, t, truth = simulate_pair(cfg)
    assert truth.sbed <= edit_distance(s, t)
    assert truth.sbed == sum(cfg.op_cost(op.kind) for op in truth.ops) + truth.char_edits
    src = sorted((op.source_start, op.source_start + op.source_len) for op in truth.ops)
    assert all(a[1] <= b[0] for a, b in zip(src, src[1:]))
    tgt = sorted((op.target_start, op.target_start + op.target_len)
                 for op in truth.ops if op.target_start is not None)
    assert all(a[1] <= b[0] for a, b in zip(tgt, tgt[1:]))
    for op in truth.ops:
        assert op.kind in KINDS
        assert cfg.block_len_min <= op.source_len <= cfg.block_len_max


def test_truth_json_round_trip():
    s, t, truth = simulate_pair(SimConfig(**SMALL, divergence=0.5, rng_seed=3))
    s2, t2, truth2 = loads_truth(dumps_truth(s, t, truth))
    assert (s2, t2, truth2) == (s, t, truth)


def test_invalid_config():
    with pytest.raises(ValueError):
        SimConfig(block_len_min=30, block_len_max=20)


def test_too_many_ops_rejected():
    with pytest.raises(SimulationError):
        simulate_pair(SimConfig(seq_len_min=100, seq_len_max=100, block_len_min=20,
                                block_len_max=20, n_ops=10))


def test_planted_script_not_beaten_by_shifted_segment():
    # this seed once paired a delete and an insert of the same base around a 23 bp segment
    from blockalign.aligner import align
    from blockalign.wtable import AlignParams
    s, t, truth = simulate_pair(SimConfig(divergence=0.46, rng_seed=184))
    assert align(s, t, AlignParams()).total >= truth.sbed
