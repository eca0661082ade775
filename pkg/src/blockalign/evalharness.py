"""Accuracy of computed block edit distance against simulated ground truth."""

from __future__ import annotations

import dataclasses
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence as Seq, Tuple

from .aligner import align
from .editdp import edit_distance
from .simulator import SimConfig, simulate_pair
from .wtable import AlignParams

BANDS = (("low", 0.10, 0.30), ("medium", 0.30, 0.70), ("high", 0.70, math.inf))

TSV_COLUMNS = ("seed", "divergence", "m", "n", "ED", "CBED", "SBED",
               "accuracy", "edit_error", "runtime_s", "anomaly_flag")


def score_instance(ed: int, cbed: int, sbed: int) -> Dict[str, object]:
    """Per-instance accuracy and edit error.

    ``accuracy = (ed - cbed) / (ed - sbed)`` so that recovering every planted
    operation scores 1; ``edit_error`` is its complement.  Both are ``None``
    when ``ed == sbed``.  Results outside ``sbed <= cbed <= ed`` are flagged.
    """
    flags = []
    if cbed > ed:
        flags.append("cbed>ed")
    if cbed < sbed:
        flags.append("cbed<sbed")
    if ed < sbed:
        flags.append("ed<sbed")
    if ed == sbed:
        acc = err = None
    else:
        acc = (ed - cbed) / (ed - sbed)
        err = (cbed - sbed) / (ed - sbed)
    return {"accuracy": acc, "edit_error": err, "anomaly": ",".join(flags)}


@dataclass
class EvalRecord:
    seed: int
    divergence: float
    m: int
    n: int
    ed: int
    cbed: int
    sbed: int
    accuracy: Optional[float]
    edit_error: Optional[float]
    runtime_seconds: Optional[float]
    anomaly: str = ""
    divergence_actual: float = 0.0

    def tsv_row(self) -> str:
        def num(x):
            return "NA" if x is None else f"{x:.6f}"
        return "\t".join([
            str(self.seed), f"{self.divergence:.4f}", str(self.m), str(self.n),
            str(self.ed), str(self.cbed), str(self.sbed), num(self.accuracy),
            num(self.edit_error), num(self.runtime_seconds), self.anomaly or "-",
        ])


@dataclass
class SweepSummary:
    band_means: Dict[str, Optional[float]]
    band_counts: Dict[str, int]
    total_error: int
    total_range: int
    instances: int
    anomalies: int

    @property
    def overall(self) -> Optional[float]:
        """Aggregate edit error, ``total_error / total_range``."""
        return self.total_error / self.total_range if self.total_range else None

    @property
    def overall_accuracy(self) -> Optional[float]:
        return None if self.overall is None else 1.0 - self.overall

    def to_tsv(self) -> str:
        lines = ["metric\tvalue"]
        for name, _, _ in BANDS:
            v = self.band_means[name]
            lines.append(f"mean_accuracy_{name}\t{'NA' if v is None else f'{v:.6f}'}")
            lines.append(f"instances_{name}\t{self.band_counts[name]}")
        lines += [
            f"total_error\t{self.total_error}",
            f"total_range\t{self.total_range}",
            f"overall_edit_error\t{'NA' if self.overall is None else f'{self.overall:.6f}'}",
            f"overall_accuracy\t{'NA' if self.overall is None else f'{self.overall_accuracy:.6f}'}",
            f"instances\t{self.instances}",
            f"anomalies\t{self.anomalies}",
        ]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        def pct(v):
            return "n/a" if v is None else f"{100 * v:.2f}%"
        lines = [f"instances: {self.instances} (anomalies: {self.anomalies})"]
        for name, lo, hi in BANDS:
            rng = f"{lo:.0%}-{hi:.0%}" if hi != math.inf else f">={lo:.0%}"
            lines.append(f"{name:>6} ({rng}): {pct(self.band_means[name])} "
                         f"over {self.band_counts[name]} instances")
        lines.append(f"overall accuracy: {pct(self.overall_accuracy)} "
                     f"(total_error={self.total_error}, total_range={self.total_range})")
        return "\n".join(lines) + "\n"


def band_of(divergence: float) -> Optional[str]:
    for name, lo, hi in BANDS:
        if lo - 1e-9 <= divergence < hi - 1e-9:
            return name
    return None


def summarize(records: Seq[EvalRecord]) -> SweepSummary:
    """Fold records in order; band means use per-instance accuracy, totals are summed."""
    per_band: Dict[str, List[float]] = {name: [] for name, _, _ in BANDS}
    for r in records:
        band = band_of(r.divergence)
        if band is not None and r.accuracy is not None:
            per_band[band].append(r.accuracy)
    means = {k: (sum(v) / len(v) if v else None) for k, v in per_band.items()}
    return SweepSummary(
        band_means=means,
        band_counts={k: len(v) for k, v in per_band.items()},
        total_error=sum(r.cbed - r.sbed for r in records),
        total_range=sum(r.ed - r.sbed for r in records),
        instances=len(records),
        anomalies=sum(bool(r.anomaly) for r in records),
    )


def run_instance(sim_config: SimConfig, params: AlignParams, timing: bool = False) -> EvalRecord:
    """Simulate one pair, align it and score the result."""
    s, t, truth = simulate_pair(sim_config)
    t0 = time.perf_counter()
    report = align(s, t, params)
    elapsed = time.perf_counter() - t0
    ed = edit_distance(s, t)
    sc = score_instance(ed, report.total, truth.sbed)
    return EvalRecord(
        seed=sim_config.rng_seed, divergence=sim_config.divergence, m=len(s), n=len(t),
        ed=ed, cbed=report.total, sbed=truth.sbed, accuracy=sc["accuracy"],
        edit_error=sc["edit_error"], runtime_seconds=elapsed if timing else None,
        anomaly=sc["anomaly"], divergence_actual=truth.divergence,
    )


def divergence_steps(start: float, end: float, step: float) -> List[float]:
    if step <= 0 or end < start:
        raise ValueError("need step > 0 and end >= start")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + k * step, 10) for k in range(count)]


def _run_job(args: Tuple[SimConfig, AlignParams, bool]) -> EvalRecord:
    return run_instance(*args)


def run_sweep(divergence_start: float, divergence_end: float, step: float,
              instances_per_step: int, sim_config: SimConfig, align_params: AlignParams,
              jobs: int = 1, timing: bool = False) -> Tuple[List[EvalRecord], SweepSummary]:
    """Simulate, align and score ``instances_per_step`` pairs per divergence step.

    Instance ``k`` (counting across the whole sweep) uses seed
    ``sim_config.rng_seed + k``; output order never depends on ``jobs``.
    """
    tasks = []
    k = 0
    for div in divergence_steps(divergence_start, divergence_end, step):
        for _ in range(instances_per_step):
            cfg = dataclasses.replace(sim_config, divergence=div, rng_seed=sim_config.rng_seed + k)
            tasks.append((cfg, align_params, timing))
            k += 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_job, tasks))
    else:
        records = [_run_job(task) for task in tasks]
    return records, summarize(records)


def records_to_tsv(records: Seq[EvalRecord]) -> str:
    return "\t".join(TSV_COLUMNS) + "\n" + "".join(r.tsv_row() + "\n" for r in records)


def summary_from_tsv(text: str) -> SweepSummary:
    """Recompute the summary from a per-instance TSV."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split("\t")
    col = {name: header.index(name) for name in TSV_COLUMNS}
    records = []
    for ln in lines[1:]:
        f = ln.split("\t")
        ed, cbed, sbed = int(f[col["ED"]]), int(f[col["CBED"]]), int(f[col["SBED"]])
        sc = score_instance(ed, cbed, sbed)
        records.append(EvalRecord(int(f[col["seed"]]), float(f[col["divergence"]]),
                                  int(f[col["m"]]), int(f[col["n"]]), ed, cbed, sbed,
                                  sc["accuracy"], sc["edit_error"], None, sc["anomaly"]))
    return summarize(records)
