import io

import pytest
from hypothesis import given, strategies as st

from blockalign.seqcore import (FastaFormatError, FastaRecord, Sequence, SequenceError,
                                format_fasta, parse_fasta, reverse_complement)

dna = st.text(alphabet="ACGT", max_size=200)


@pytest.mark.parametrize("s, expected", [("", ""), ("ACGT", "ACGT"), ("AAC", "GTT")])
def test_reverse_complement_examples(s, expected):
    assert reverse_complement(s) == expected


@given(dna)
def test_reverse_complement_involution(s):
    assert reverse_complement(reverse_complement(s)) == s


def test_sequence_validates():
    assert Sequence("ACGT") == "ACGT"
    for bad in ("ACGN", "acgt"):
        with pytest.raises(SequenceError):
            Sequence(bad)
    assert Sequence("AAC").reverse_complement() == "GTT"


def test_parse_single_record():
    assert parse_fasta(b">x\nACGT\n") == [FastaRecord("x", "ACGT")]


def test_parse_multiline_two_records():
    recs = parse_fasta(io.BytesIO(b">x\nAC\nGT\n>y\nTT\n"))
    assert [(r.id, r.sequence) for r in recs] == [("x", "ACGT"), ("y", "TT")]


def test_parse_reports_offset_of_bad_symbol():
    with pytest.raises(SequenceError) as err:
        parse_fasta(b">x\nACGN\n")
    assert "x" in str(err.value) and "3" in str(err.value)


def test_parse_crlf_and_lowercase():
    assert parse_fasta(b">r1 desc\r\nacg\r\nt\r\n")[0].sequence == "ACGT"


def test_parse_rejects_sequence_before_header():
    with pytest.raises(FastaFormatError):
        parse_fasta(b"ACGT\n")


def test_parse_path(tmp_path):
    p = tmp_path / "a.fa"
    p.write_text(">a\nAC\n>b\nGG\n")
    assert len(parse_fasta(str(p))) == 2


@given(st.lists(dna, min_size=1, max_size=5), st.integers(min_value=1, max_value=80))
def test_fasta_round_trip(seqs, width):
    recs = [FastaRecord(f"r{k}", Sequence(s)) for k, s in enumerate(seqs)]
    assert parse_fasta(format_fasta(recs, width=width).encode()) == recs
