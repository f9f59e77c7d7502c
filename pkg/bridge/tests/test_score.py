"""End-to-end checks of the score subcommand through main()."""

import pytest

from scorer_bridge.cli import main

from conftest import cleaned_lines


def run_score(in_path, out_path, *extra):
    return main(["score", "--input", str(in_path), "--output", str(out_path), *extra])


def test_stub_scores_every_row_in_order(write_cleaned, tmp_path, capsys):
    texts = ["今天抄底了", "割肉离场", "x" * 300]
    out = tmp_path / "scored.tsv"
    assert run_score(write_cleaned(texts), out, "--model", "stub") == 0

    lines = out.read_text("utf-8").splitlines()
    assert lines[0] == "date\ttext\tsentiment\tpositive_pro\tnegative_pro"
    assert len(lines) == 4
    for text, line in zip(texts, lines[1:]):
        date, got_text, label, p_pos, p_neg = line.split("\t")
        assert got_text == text
        assert (label, p_pos, p_neg) == ("1", "0.2", "0.2")
    assert "scored 3 rows" in capsys.readouterr().out


def test_long_text_is_not_truncated(write_cleaned, tmp_path):
    long = "涨" * 4096
    out = tmp_path / "scored.tsv"
    assert run_score(write_cleaned([long]), out, "--model", "stub") == 0
    assert long in out.read_text("utf-8")


def test_empty_input_yields_header_only(write_cleaned, tmp_path):
    out = tmp_path / "scored.tsv"
    assert run_score(write_cleaned([]), out, "--model", "stub") == 0
    assert out.read_text("utf-8") == "date\ttext\tsentiment\tpositive_pro\tnegative_pro\n"


def test_stub_rerun_is_byte_identical(write_cleaned, tmp_path):
    src = write_cleaned(["甲", "乙", "丙"])
    first = tmp_path / "a.tsv"
    second = tmp_path / "b.tsv"
    assert run_score(src, first, "--model", "stub") == 0
    assert run_score(src, second, "--model", "stub") == 0
    assert first.read_bytes() == second.read_bytes()


def test_missing_input_exits_2(tmp_path, capsys):
    assert run_score(tmp_path / "absent.tsv", tmp_path / "o.tsv") == 2
    assert "error:" in capsys.readouterr().err


def test_wrong_header_exits_3(tmp_path, capsys):
    src = tmp_path / "cleaned.tsv"
    src.write_text("text\tdate\n甲\t2020-06-09\n", "utf-8")
    assert run_score(src, tmp_path / "o.tsv", "--model", "stub") == 3
    assert "header" in capsys.readouterr().err


def test_malformed_row_exits_3(tmp_path, capsys):
    src = tmp_path / "cleaned.tsv"
    src.write_text(cleaned_lines(["甲"]) + "oops\t乙\t1\t1\t0\tguba\n", "utf-8")
    assert run_score(src, tmp_path / "o.tsv", "--model", "stub") == 3
    assert "line 3" in capsys.readouterr().err


def test_unknown_model_exits_5(write_cleaned, tmp_path, capsys):
    assert run_score(write_cleaned(["甲"]), tmp_path / "o.tsv") == 5
    err = capsys.readouterr().err
    assert "chinese-bert-wwm" in err


def test_garbage_checkpoint_exits_5(write_cleaned, tmp_path):
    ckpt = tmp_path / "junk.pt"
    ckpt.write_bytes(b"not a checkpoint")
    assert run_score(write_cleaned(["甲"]), tmp_path / "o.tsv", "--model", str(ckpt)) == 5


def test_tiny_without_checkpoint_exits_5(write_cleaned, tmp_path, capsys):
    assert run_score(write_cleaned(["甲"]), tmp_path / "o.tsv", "--model", "tiny") == 5
    assert "finetune" in capsys.readouterr().err


@pytest.mark.parametrize("flag, value", [("--batch-size", "0"), ("--max-seq-length", "4")])
def test_bad_config_exits_2(write_cleaned, tmp_path, flag, value):
    src = write_cleaned(["甲"])
    assert run_score(src, tmp_path / "o.tsv", "--model", "stub", flag, value) == 2
