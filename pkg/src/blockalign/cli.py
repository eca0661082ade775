"""Command line entry point: ``blockalign {align,simulate,sweep,oracle}``.

Every flag can also be set through an environment variable named
``BLOCKALIGN_<FLAG>`` (upper case, dashes as underscores), e.g.
``BLOCKALIGN_LMIN=10``.  Explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional, Tuple

from . import __version__
from .aligner import ContractViolation, compute_n
from .editdp import edit_distance
from .evalharness import records_to_tsv, run_sweep
from .formats import report_to_json, report_to_text, report_to_tsv, write_atomic
from .oracle import DEFAULT_BUDGET, BudgetExceeded, exhaustive_bed
from .seqcore import FastaFormatError, FastaRecord, SequenceError, format_fasta, parse_fasta
from .simulator import KINDS, SimConfig, SimulationError, dumps_truth, simulate_pair
from .validation import check_alignable, check_sequence
from .wtable import AlignParams, compute_w

ENV_PREFIX = "BLOCKALIGN_"
log = logging.getLogger("blockalign")


class UsageError(Exception):
    pass


def _env_default(dest: str, default, kind=str):
    raw = os.environ.get(ENV_PREFIX + dest.upper())
    if raw is None:
        return default
    if kind is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    try:
        return kind(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} in {ENV_PREFIX + dest.upper()}")


def _add(p, flag, dest, kind, default, help_text, **kw):
    p.add_argument(flag, dest=dest, type=kind, default=_env_default(dest, default, kind),
                   help=help_text, **kw)


def _add_align_params(p, lmin=20, lmax=40):
    g = p.add_argument_group("alignment parameters")
    _add(g, "--lmin", "lmin", int, lmin, "minimum block length")
    _add(g, "--lmax", "lmax", int, lmax, "maximum block length")
    _add(g, "--error-rate", "error_rate", float, 0.10, "tolerated edit fraction inside a block match")
    _add(g, "--cbr", "cbr", int, 1, "cost of reversing a block")
    _add(g, "--cost-move", "cost_move", int, 1, "cost of a block move")
    _add(g, "--cost-remove", "cost_remove", int, 1, "cost of a block removal")
    _add(g, "--iterations", "iterations", int, 5, "maximum hill-climbing passes")


def _add_inputs(p):
    g = p.add_argument_group("input")
    _add(g, "--s", "s", str, None, "source sequence (inline)")
    _add(g, "--t", "t", str, None, "target sequence (inline)")
    _add(g, "--fasta", "fasta", str, None, "FASTA file; its first two records are S and T")


def _add_sim_params(p, seq=(800, 1200), block=(20, 40)):
    g = p.add_argument_group("simulation parameters")
    _add(g, "--seq-len-min", "seq_len_min", int, seq[0], "minimum source length")
    _add(g, "--seq-len-max", "seq_len_max", int, seq[1], "maximum source length")
    _add(g, "--block-len-min", "block_len_min", int, block[0], "minimum planted block length")
    _add(g, "--block-len-max", "block_len_max", int, block[1], "maximum planted block length")
    _add(g, "--char-edits", "char_edits", int, None,
         "character edits per pair (default: ceil(0.5 * block ops))")
    _add(g, "--op-mix", "op_mix", str, ",".join(f"{k}=1" for k in KINDS),
         "relative weights of planted op kinds")


def _common(p):
    _add(p, "--seed", "seed", int, 0, "random seed")
    _add(p, "--output", "output", str, None, "output path (default: stdout)")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="blockalign", formatter_class=fmt,
                                     description="Block edit distance with traceback for DNA sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", formatter_class=fmt, help="align two sequences")
    _add_inputs(p)
    _add_align_params(p)
    _common(p)
    _add(p, "--format", "format", str, "text", "report format", choices=("text", "tsv", "json"))
    _add(p, "--dump-w", "dump_w", str, None, "write the W table as TSV to this path")
    p.add_argument("--no-prune", dest="prune", action="store_false", help="disable removal pruning")

    p = sub.add_parser("simulate", formatter_class=fmt, help="simulate a rearranged pair")
    _add_sim_params(p)
    _add(p, "--divergence", "divergence", float, 0.10, "planted ops as a fraction of floor(m / block_len_max)")
    _add(p, "--ops", "n_ops", int, None, "exact number of planted ops (overrides --divergence)")
    _common(p)
    _add(p, "--format", "format", str, "json", "stdout format when --output is absent",
         choices=("json", "fasta"))

    p = sub.add_parser("sweep", formatter_class=fmt, help="accuracy over a divergence sweep")
    _add(p, "--div-start", "div_start", float, 0.10, "first divergence")
    _add(p, "--div-end", "div_end", float, 0.97, "last divergence")
    _add(p, "--div-step", "div_step", float, 0.03, "divergence step")
    _add(p, "--instances", "instances", int, 15, "pairs per divergence step")
    _add_sim_params(p)
    _add_align_params(p)
    _common(p)
    _add(p, "--format", "format", str, "text", "summary format", choices=("text", "tsv"))
    _add(p, "--summary", "summary", str, None, "also write the summary to this path")
    _add(p, "--jobs", "jobs", int, 1, "worker processes")
    p.add_argument("--timing", action="store_true", default=_env_default("timing", False, bool),
                   help="record per-pair runtime (makes output non-reproducible)")

    p = sub.add_parser("oracle", formatter_class=fmt, help="exhaustive optimum for tiny inputs")
    _add_inputs(p)
    _add_align_params(p, lmin=2, lmax=3)
    _common(p)
    _add(p, "--budget", "budget", int, DEFAULT_BUDGET, "maximum configurations to enumerate")
    return parser


def _params(args) -> AlignParams:
    try:
        return AlignParams(args.lmin, args.lmax, args.error_rate, args.cbr,
                           args.cost_move, args.cost_remove, args.iterations)
    except ValueError as exc:
        raise UsageError(str(exc))


def _sim_config(args, **extra) -> SimConfig:
    mix = {}
    for part in args.op_mix.split(","):
        if not part.strip():
            continue
        name, _, weight = part.partition("=")
        try:
            mix[name.strip()] = float(weight) if weight else 1.0
        except ValueError:
            raise UsageError(f"bad --op-mix entry {part!r}")
    try:
        return SimConfig(args.seq_len_min, args.seq_len_max, args.block_len_min,
                         args.block_len_max, char_edits=args.char_edits, op_mix=mix,
                         rng_seed=args.seed, **extra)
    except ValueError as exc:
        raise UsageError(str(exc))


def _read_pair(args) -> Tuple[str, str]:
    if args.fasta:
        if args.s or args.t:
            raise UsageError("use either --fasta or --s/--t, not both")
        records = parse_fasta(args.fasta)
        if len(records) < 2:
            raise UsageError(f"{args.fasta}: need at least two records, found {len(records)}")
        return records[0].sequence, records[1].sequence
    if args.s is None or args.t is None:
        raise UsageError("provide --s and --t, or --fasta")
    return check_sequence(args.s, "--s"), check_sequence(args.t, "--t")


def _emit(args, text: str) -> None:
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_align(args) -> int:
    params = _params(args)
    s, t = _read_pair(args)
    check_alignable(s, t, params.len_min)
    w = compute_w(s, t, params)
    if args.dump_w:
        write_atomic(args.dump_w, w.to_tsv())
    _, report = compute_n(s, t, w, params, prune=args.prune)
    render = {"text": report_to_text, "tsv": report_to_tsv}.get(args.format)
    text = render(report, s, t) if render else report_to_json(report, s, t, params)
    _emit(args, text)
    return 0


def cmd_simulate(args) -> int:
    cfg = _sim_config(args, divergence=args.divergence, n_ops=args.n_ops)
    s, t, truth = simulate_pair(cfg)
    fasta = format_fasta([FastaRecord("S", s), FastaRecord("T", t)])
    truth_json = dumps_truth(s, t, truth)
    if args.output:
        write_atomic(args.output + ".fa", fasta)
        write_atomic(args.output + ".json", truth_json)
    else:
        sys.stdout.write(fasta if args.format == "fasta" else truth_json)
    return 0


def cmd_sweep(args) -> int:
    params = _params(args)
    cfg = _sim_config(args)
    if args.instances < 1 or args.jobs < 1:
        raise UsageError("--instances and --jobs must be >= 1")
    records, summary = run_sweep(args.div_start, args.div_end, args.div_step, args.instances,
                                 cfg, params, jobs=args.jobs, timing=args.timing)
    table = records_to_tsv(records)
    text = summary.to_tsv() if args.format == "tsv" else summary.to_text()
    if args.output:
        write_atomic(args.output, table)
        sys.stdout.write(text)
    else:
        sys.stdout.write(table + "\n" + text)
    if args.summary:
        write_atomic(args.summary, summary.to_tsv())
    return 0


def cmd_oracle(args) -> int:
    params = _params(args)
    s, t = _read_pair(args)
    check_alignable(s, t, params.len_min)
    w = compute_w(s, t, params)
    result = exhaustive_bed(s, t, w, params, budget=args.budget)
    _, report = compute_n(s, t, w, params)
    lines = [
        f"optimum: {result.optimum}",
        f"configurations: {result.configurations}",
        "witness: " + " ".join(str(v) for v in result.witness.tolist()),
        f"heuristic: {report.total}",
        f"edit_distance: {edit_distance(s, t)}",
        f"heuristic_optimal: {'yes' if report.total == result.optimum else 'no'}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0


COMMANDS = {"align": cmd_align, "simulate": cmd_simulate, "sweep": cmd_sweep, "oracle": cmd_oracle}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"blockalign: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SequenceError, FastaFormatError, SimulationError, BudgetExceeded,
            ValueError, OSError) as exc:
        print(f"blockalign: error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"blockalign: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
