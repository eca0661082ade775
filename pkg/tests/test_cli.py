import json

import pytest

from blockalign.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


SIM = ["--seq-len-min", "300", "--seq-len-max", "400", "--block-len-min", "10", "--block-len-max", "20"]


def test_identical_sequences(capsys):
    code, out, _ = run(capsys, "align", "--s", "ACGT" * 10, "--t", "ACGT" * 10)
    assert code == 0
    assert "CBED: 0" in out and "block operations: 0" in out


def test_planted_move_round_trip(tmp_path, capsys):
    prefix = str(tmp_path / "pair")
    assert run(capsys, "simulate", *SIM, "--ops", "1", "--char-edits", "0",
               "--op-mix", "move=1", "--seed", "5", "--output", prefix)[0] == 0
    truth = json.loads(open(prefix + ".json").read())
    [op] = truth["ops"]
    code, out, _ = run(capsys, "align", "--fasta", prefix + ".fa", "--lmin", "10", "--lmax", "20",
                       "--format", "json")
    report = json.loads(out)
    assert report["format_version"] == 1
    [got] = report["ops"]
    assert got["kind"] == "move"
    assert got["src"] == op["src"] and got["tgt"] == op["tgt"]


def test_zero_ops_simulation_gives_equal_records(capsys):
    code, out, _ = run(capsys, "simulate", *SIM, "--ops", "0", "--char-edits", "0", "--format", "fasta")
    lines = out.split(">")
    assert code == 0 and lines[1].split("\n", 1)[1] == lines[2].split("\n", 1)[1]


def test_full_scale_simulation_accepted(capsys):
    assert run(capsys, "simulate", "--divergence", "0.97", "--seed", "1")[0] == 0


@pytest.mark.parametrize("cmd", [
    ["simulate", *SIM, "--divergence", "0.5", "--seed", "3"],
    ["align", "--s", "ACGTTGCAAGGCTTACGATC" * 2, "--t", "TTACGATCACGTTGCAAGGC" * 2, "--lmin", "6",
     "--lmax", "10", "--format", "tsv"],
    ["oracle", "--s", "AAACCGT", "--t", "CCAAAGT"],
    ["sweep", *SIM, "--lmin", "10", "--lmax", "20", "--div-start", "0.1", "--div-end", "0.5",
     "--div-step", "0.4", "--instances", "1", "--seed", "2"],
])
def test_deterministic(capsys, cmd):
    first = run(capsys, *cmd)
    assert first[0] == 0
    assert run(capsys, *cmd) == first


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "align", "--s", "ACGX", "--t", "ACGT")[0] == 2
    assert run(capsys, "align", "--s", "ACGT")[0] == 2
    assert run(capsys, "align", "--s", "ACGT", "--t", "ACGT", "--lmin", "5", "--lmax", "6")[0] == 2
    assert run(capsys, "align", "--s", "ACGT", "--t", "ACGT", "--lmin", "9", "--lmax", "3")[0] == 2
    assert run(capsys, "align", "--fasta", str(tmp_path / "missing.fa"))[0] == 2
    code, _, err = run(capsys, "oracle", "--s", "ACGTACGTACGT", "--t", "ACGTACGTACGT", "--budget", "3")
    assert code == 2 and "budget" in err.lower()


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("BLOCKALIGN_LMIN", "4")
    monkeypatch.setenv("BLOCKALIGN_LMAX", "6")
    code, out, _ = run(capsys, "align", "--s", "AAAACCCCGG", "--t", "CCCCAAAAGG", "--format", "json")
    assert code == 0 and json.loads(out)["params"]["len_min"] == 4
    code, out, _ = run(capsys, "align", "--s", "AAAACCCCGG", "--t", "CCCCAAAAGG", "--format", "json",
                       "--lmin", "5")
    assert json.loads(out)["params"]["len_min"] == 5


@pytest.mark.parametrize("sub", ["align", "sweep"])
def test_help_documents_defaults(capsys, sub):
    with pytest.raises(SystemExit):
        main([sub, "--help"])
    out = capsys.readouterr().out
    for text in ("minimum block length (default: 20)", "maximum block length (default: 40)",
                 "(default: 0.1)", "reversing a block (default: 1)", "passes (default: 5)"):
        assert text in " ".join(out.split())


def test_output_file_written(tmp_path, capsys):
    path = tmp_path / "r.txt"
    wpath = tmp_path / "w.tsv"
    code, out, _ = run(capsys, "align", "--s", "ACGT" * 6, "--t", "ACGT" * 6, "--lmin", "4", "--lmax", "6",
                       "--output", str(path), "--dump-w", str(wpath))
    assert code == 0 and out == "" and path.read_text().startswith("CBED: 0")
    assert wpath.read_text().startswith("i\tblock_len")
