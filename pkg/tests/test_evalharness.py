import pytest

from blockalign.evalharness import (TSV_COLUMNS, band_of, divergence_steps, records_to_tsv, run_sweep,
                                    score_instance, summary_from_tsv)
from blockalign.simulator import SimConfig
from blockalign.wtable import AlignParams

SIM = SimConfig(seq_len_min=200, seq_len_max=260, block_len_min=10, block_len_max=20)
PARAMS = AlignParams(10, 20, max_iterations=3)


@pytest.mark.parametrize("ed, cbed, sbed, acc", [(10, 2, 2, 1.0), (10, 10, 2, 0.0), (10, 4, 2, 0.75)])
def test_score_examples(ed, cbed, sbed, acc):
    sc = score_instance(ed, cbed, sbed)
    assert sc["accuracy"] == pytest.approx(acc)
    assert sc["edit_error"] == pytest.approx(1 - acc)
    assert sc["anomaly"] == ""


def test_score_undefined_and_anomalies():
    assert score_instance(3, 3, 3)["accuracy"] is None
    assert score_instance(10, 12, 2)["anomaly"] == "cbed>ed"
    assert score_instance(10, 1, 2)["anomaly"] == "cbed<sbed"


def test_bands_half_open():
    assert band_of(0.10) == "low" and band_of(0.29) == "low"
    assert band_of(0.30) == "medium" and band_of(0.70) == "high" and band_of(0.97) == "high"
    assert band_of(0.05) is None


def test_divergence_steps():
    assert divergence_steps(0.10, 0.97, 0.09)[-1] == pytest.approx(0.91)
    assert len(divergence_steps(0.10, 0.97, 0.03)) == 30
    with pytest.raises(ValueError):
        divergence_steps(0.5, 0.1, 0.1)


def test_zero_divergence_smoke():
    records, summary = run_sweep(0.0, 0.0, 0.1, 3, SIM, PARAMS)
    assert all(r.accuracy in (None, 1.0) for r in records)
    assert all(r.sbed <= r.cbed <= r.ed for r in records)


def test_totals_reproducible_from_tsv():
    records, summary = run_sweep(0.1, 0.5, 0.2, 2, SIM, PARAMS)
    text = records_to_tsv(records)
    assert text.splitlines()[0].split("\t") == list(TSV_COLUMNS)
    again = summary_from_tsv(text)
    assert again.total_error == summary.total_error
    assert again.total_range == summary.total_range
    assert again.overall == summary.overall
    assert summary.overall == sum(r.cbed - r.sbed for r in records) / sum(r.ed - r.sbed for r in records)
    assert [r.seed for r in records] == list(range(6))


def test_jobs_do_not_change_output():
    a, _ = run_sweep(0.2, 0.6, 0.4, 2, SIM, PARAMS, jobs=1)
    b, _ = run_sweep(0.2, 0.6, 0.4, 2, SIM, PARAMS, jobs=2)
    assert records_to_tsv(a) == records_to_tsv(b)
