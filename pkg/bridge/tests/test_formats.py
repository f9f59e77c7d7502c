import datetime as dt
import io

import pytest

from scorer_bridge import (
    LabeledComment,
    SchemaError,
    ScoredRow,
    read_cleaned,
    read_labeled,
    write_scored,
)

from conftest import cleaned_lines


def test_read_cleaned_keeps_rows_in_file_order():
    rows = read_cleaned(io.StringIO(cleaned_lines(["甲", "乙", "丙"])))
    assert [r.text for r in rows] == ["甲", "乙", "丙"]
    assert rows[0].date == dt.date(2020, 6, 9)
    assert rows[2].date == dt.date(2020, 6, 11)


def test_read_cleaned_accepts_unpadded_dates():
    body = "date\ttext\tchar_len\treads\tcomments\tsource\n2020-6-9\tok\t2\t1\t0\tguba\n"
    rows = read_cleaned(io.StringIO(body))
    assert rows[0].date == dt.date(2020, 6, 9)


def test_read_cleaned_skips_blank_lines():
    header, row_a, row_b, _ = cleaned_lines(["甲", "乙"]).split("\n")
    body = f"{header}\n{row_a}\n\n{row_b}\n\n"
    rows = read_cleaned(io.StringIO(body))
    assert [r.text for r in rows] == ["甲", "乙"]


def test_read_cleaned_rejects_wrong_header():
    body = "text\tdate\n甲\t2020-06-09\n"
    with pytest.raises(SchemaError, match="header"):
        read_cleaned(io.StringIO(body))


def test_read_cleaned_rejects_empty_stream():
    with pytest.raises(SchemaError):
        read_cleaned(io.StringIO(""))


@pytest.mark.parametrize(
    "bad_row",
    [
        "2020-06-09\t甲\t1\t10\t0",
        "not-a-date\t甲\t1\t10\t0\tguba",
        "2020-06-09\t\t0\t10\t0\tguba",
        "2020-06-09\t甲\tone\t10\t0\tguba",
        "2020-06-09\t甲\t1\tmany\t0\tguba",
        "2020-06-09\t甲\t1\t10\tx\tguba",
    ],
)
def test_read_cleaned_rejects_malformed_rows_with_line_number(bad_row):
    body = cleaned_lines(["甲"]) + bad_row + "\n"
    with pytest.raises(SchemaError, match="line 3"):
        read_cleaned(io.StringIO(body))


def test_write_scored_exact_bytes():
    out = io.StringIO()
    row = ScoredRow(dt.date(2020, 6, 9), "今天抄底了", 1, 0.2, 0.2)
    write_scored(out, [row])
    assert out.getvalue() == (
        "date\ttext\tsentiment\tpositive_pro\tnegative_pro\n"
        "2020-06-09\t今天抄底了\t1\t0.2\t0.2\n"
    )


def test_write_scored_empty_is_header_only():
    out = io.StringIO()
    write_scored(out, [])
    assert out.getvalue() == "date\ttext\tsentiment\tpositive_pro\tnegative_pro\n"


def test_scored_row_rejects_bad_label():
    with pytest.raises(ValueError):
        ScoredRow(dt.date(2020, 6, 9), "x", 3, 0.2, 0.2)


@pytest.mark.parametrize("p_pos, p_neg", [(1.2, 0.0), (-0.1, 0.0), (0.7, 0.7)])
def test_scored_row_rejects_bad_probabilities(p_pos, p_neg):
    with pytest.raises(ValueError):
        ScoredRow(dt.date(2020, 6, 9), "x", 1, p_pos, p_neg)


def test_scored_row_allows_probabilities_summing_to_one():
    row = ScoredRow(dt.date(2020, 6, 9), "x", 2, 0.5, 0.5)
    assert row.p_pos + row.p_neg == 1.0


def test_read_labeled_happy_path():
    body = "text\tlabel\n甲\t0\n乙\t2\n"
    rows = read_labeled(io.StringIO(body))
    assert rows == [LabeledComment("甲", 0), LabeledComment("乙", 2)]


@pytest.mark.parametrize("bad_row", ["甲\t5", "甲\tpos", "\t1", "甲"])
def test_read_labeled_rejects_malformed_rows_with_line_number(bad_row):
    body = "text\tlabel\n乙\t1\n" + bad_row + "\n"
    with pytest.raises(SchemaError, match="line 3"):
        read_labeled(io.StringIO(body))


def test_labeled_comment_validation():
    with pytest.raises(ValueError):
        LabeledComment("", 1)
    with pytest.raises(ValueError):
        LabeledComment("x", 4)
