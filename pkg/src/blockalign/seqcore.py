"""DNA alphabet, validated sequences and FASTA I/O."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import IO, Iterable, List, Union

ALPHABET = frozenset("ACGT")
_COMPLEMENT = str.maketrans("ACGT", "TGCA")


class SequenceError(ValueError):
    """Raised when a sequence contains a symbol outside {A, C, G, T}."""


class FastaFormatError(ValueError):
    """Raised for structurally malformed FASTA input."""


class Sequence(str):
    """An immutable DNA string over ``{A, C, G, T}``.

    ``Sequence`` is a ``str`` subclass so it can be sliced, hashed and passed
    to any string routine. Construction validates the alphabet; lowercase is
    rejected here and normalized only by :func:`parse_fasta`.

    >>> Sequence("ACGT").reverse_complement()
    'ACGT'
    """

    __slots__ = ()

    def __new__(cls, bases: str = "") -> "Sequence":
        if isinstance(bases, Sequence):
            return bases
        bases = str(bases)
        bad = _first_invalid(bases)
        if bad >= 0:
            raise SequenceError(
                f"invalid symbol {bases[bad]!r} at offset {bad}; expected one of A, C, G, T"
            )
        return super().__new__(cls, bases)

    def reverse_complement(self) -> "Sequence":
        return reverse_complement(self)


def _first_invalid(bases: str) -> int:
    if not bases.strip("ACGT"):
        return -1
    for k, ch in enumerate(bases):
        if ch not in ALPHABET:
            return k
    return -1


def reverse_complement(s: str) -> Sequence:
    """Reverse ``s`` and swap A<->T, C<->G."""
    s = Sequence(s)
    return str.__new__(Sequence, s.translate(_COMPLEMENT)[::-1])


@dataclass(frozen=True)
class FastaRecord:
    id: str
    sequence: Sequence

    def __post_init__(self):
        if not self.id or self.id != self.id.strip() or self.id.startswith(">"):
            raise FastaFormatError(f"invalid record id {self.id!r}")
        if not isinstance(self.sequence, Sequence):
            object.__setattr__(self, "sequence", Sequence(self.sequence))


Source = Union[str, bytes, os.PathLike, IO]


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        return source.decode("ascii")
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="ascii", newline="") as fh:
            return fh.read()
    data = source.read()
    return data.decode("ascii") if isinstance(data, bytes) else data


def parse_fasta(source: Source) -> List[FastaRecord]:
    """Parse FASTA from a path, an open stream or raw bytes.

    Sequence lines are concatenated and lowercase ``acgt`` is upper-cased.
    Any other symbol raises :class:`SequenceError` naming the record id and the
    offset of the symbol within that record's sequence. Both ``\\n`` and
    ``\\r\\n`` line endings are accepted.
    """
    text = _read_text(source)
    records: List[FastaRecord] = []
    rid = None
    chunks: List[str] = []

    def flush():
        if rid is None:
            return
        seq = "".join(chunks)
        bad = _first_invalid(seq)
        if bad >= 0:
            raise SequenceError(
                f"record {rid!r}: invalid symbol {seq[bad]!r} at offset {bad}"
            )
        records.append(FastaRecord(rid, Sequence(seq)))

    for lineno, line in enumerate(io.StringIO(text, newline=None), start=1):
        line = line.rstrip("\r\n")
        if line.startswith(">"):
            flush()
            header = line[1:].strip()
            if not header:
                raise FastaFormatError(f"line {lineno}: empty header")
            rid = header.split()[0]
            chunks = []
        elif not line.strip():
            continue
        elif rid is None:
            raise FastaFormatError(f"line {lineno}: sequence data before first header")
        else:
            chunks.append(line.strip().upper())
    flush()
    return records


def format_fasta(records: Iterable[FastaRecord], width: int = 60) -> str:
    out = []
    for rec in records:
        out.append(f">{rec.id}\n")
        seq = str(rec.sequence)
        for k in range(0, len(seq), width):
            out.append(seq[k:k + width] + "\n")
    return "".join(out)
