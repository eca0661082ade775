"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .seqcore import Sequence, SequenceError


def check_sequence(x, name: str = "sequence", allow_empty: bool = True) -> Sequence:
    """Coerce ``x`` to a :class:`Sequence`; lowercase is upper-cased."""
    if isinstance(x, Sequence):
        seq = x
    elif isinstance(x, (bytes, bytearray)):
        seq = Sequence(x.decode("ascii").upper())
    elif isinstance(x, str):
        seq = Sequence(x.upper())
    else:
        raise TypeError(f"{name} must be a string, got {type(x).__name__}")
    if not allow_empty and not seq:
        raise SequenceError(f"{name} is empty")
    return seq


def check_pairs(X) -> List[Tuple[Sequence, Sequence]]:
    """Validate a collection of ``(source, target)`` pairs.

    Accepts a list of 2-tuples, an object array of shape ``(n, 2)`` or a
    two-column DataFrame.
    """
    if hasattr(X, "to_numpy"):
        X = X.to_numpy(dtype=object)
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValueError(f"expected an array of shape (n_pairs, 2), got {X.shape}")
        rows = X.tolist()
    else:
        rows = list(X)
    pairs = []
    for k, row in enumerate(rows):
        if isinstance(row, (str, bytes)) or len(row) != 2:
            raise ValueError(f"pair {k} must hold exactly two sequences")
        pairs.append((check_sequence(row[0], f"X[{k}][0]"),
                      check_sequence(row[1], f"X[{k}][1]")))
    return pairs


def check_alignable(s: Sequence, t: Sequence, len_min: int) -> None:
    if not s or not t:
        raise SequenceError("both sequences must be non-empty")
    if len(s) < len_min:
        raise ValueError(f"source length {len(s)} is shorter than len_min={len_min}")
