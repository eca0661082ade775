"""Text, TSV and JSON renderings of alignment reports; atomic file output."""

from __future__ import annotations

import json
import os
import tempfile
from typing import Optional

from .aligner import AlignmentReport
from .wtable import AlignParams

FORMAT_VERSION = 1


def report_to_text(report: AlignmentReport, s: str, t: str) -> str:
    lines = [
        f"CBED: {report.total}",
        f"iterations: {report.iterations_used}",
        f"converged: {'yes' if report.converged else 'no'}",
        f"block operations: {len(report.ops)}",
    ]
    for op in report.ops:
        suffix = " (in place)" if op.in_place else ""
        lines.append("  " + op.describe() + suffix)
    lines.append(f"character edits: {report.char_cost}")
    for e in report.char_edits:
        lines.append("  " + e.describe(s, t))
    return "\n".join(lines) + "\n"


def report_to_tsv(report: AlignmentReport, s: str, t: str) -> str:
    rows = ["kind\ts_start\ts_end\tt_start\tt_end\tdist\tcost"]

    def cell(x):
        return "." if x is None else str(x)

    for op in report.ops:
        kind = "reversal" if op.in_place else op.kind
        rows.append("\t".join([kind, str(op.source_start), str(op.source_end),
                               cell(op.target_start), cell(op.target_end),
                               str(op.internal_dist), str(op.op_cost)]))
    for e in report.char_edits:
        s_end = None if e.s_pos is None else e.s_pos + 1
        t_end = None if e.t_pos is None else e.t_pos + 1
        rows.append("\t".join([e.tag, cell(e.s_pos), cell(s_end), cell(e.t_pos),
                               cell(t_end), "1", "1"]))
    rows.append(f"total\t.\t.\t.\t.\t.\t{report.total}")
    return "\n".join(rows) + "\n"


def report_to_dict(report: AlignmentReport, s: str, t: str,
                   params: Optional[AlignParams] = None) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "cbed": report.total,
        "block_cost": report.block_cost,
        "char_cost": report.char_cost,
        "iterations": report.iterations_used,
        "converged": report.converged,
        "history": list(report.history),
        "s_len": len(s),
        "t_len": len(t),
        "ops": [
            {
                "kind": op.kind,
                "in_place": op.in_place,
                "src": [op.source_start, op.source_len],
                "tgt": None if op.target_start is None else [op.target_start, op.target_len],
                "dist": op.internal_dist,
                "cost": op.op_cost,
            }
            for op in report.ops
        ],
        "char_edits": [{"tag": e.tag, "s_pos": e.s_pos, "t_pos": e.t_pos}
                       for e in report.char_edits],
    }
    if params is not None:
        out["params"] = {
            "len_min": params.len_min, "len_max": params.len_max,
            "error_rate": params.error_rate, "cost_reversal": params.cost_reversal,
            "cost_move": params.cost_move, "cost_remove": params.cost_remove,
            "max_iterations": params.max_iterations,
        }
    return out


def report_to_json(report: AlignmentReport, s: str, t: str,
                   params: Optional[AlignParams] = None) -> str:
    return json.dumps(report_to_dict(report, s, t, params), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
