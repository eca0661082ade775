"""Block edit distance with moves, reversals and removals for DNA sequences."""

__version__ = "0.1.0"

from .aligner import AlignmentReport, BlockOp, NArray, align, block_edit_distance, compute_n, reconstruct
from .editdp import edit_distance, edit_script, infix_best_matches
from .estimator import BlockEditAligner
from .oracle import exhaustive_bed
from .seqcore import FastaRecord, Sequence, format_fasta, parse_fasta, reverse_complement
from .simulator import SimConfig, simulate_pair
from .wtable import AlignParams, WTable, compute_w

__all__ = [
    "AlignParams", "AlignmentReport", "BlockEditAligner", "BlockOp", "FastaRecord", "NArray",
    "Sequence", "SimConfig", "WTable", "align", "block_edit_distance", "compute_n", "compute_w",
    "edit_distance", "edit_script", "exhaustive_bed", "format_fasta", "infix_best_matches",
    "parse_fasta", "reconstruct", "reverse_complement", "simulate_pair",
]
