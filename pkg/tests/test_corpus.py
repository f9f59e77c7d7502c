"""Tests for comment parsing, cleaning, dedup, selection, and length stats."""

import datetime as dt
import io
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sentmic.corpus import (
    CleanComment,
    CleanedRow,
    DailyBatch,
    DropReason,
    Dropped,
    RawComment,
    by_day,
    clean,
    dedupe,
    length_stats,
    normalize_text,
    parse_comments,
    read_cleaned,
    select_top,
    write_cleaned,
)
from sentmic.errors import DataError, ParseError

D9 = dt.date(2020, 6, 9)
D10 = dt.date(2020, 6, 10)


def raw(text, date=D9, reads=0, comment_count=0, source="guba"):
    return RawComment(
        date=date,
        text=text,
        reads=reads,
        comment_count=comment_count,
        source=source,
    )


class TestNormalizeText:
    def test_strips_markup_tags(self):
        assert normalize_text("<p>不错</p>") == "不错"

    def test_strips_bracket_annotations(self):
        assert normalize_text("今天[图片]涨") == "今天涨"

    def test_strips_repeated_fragments(self):
        assert normalize_text("<a href='x'>买</a>[表情][表情]入") == "买入"

    def test_collapses_whitespace_runs(self):
        assert normalize_text("a \t\n b") == "a b"

    def test_strips_outer_whitespace(self):
        assert normalize_text("  满仓  ") == "满仓"

    def test_unclosed_angle_is_kept(self):
        # The tag pattern needs a closing ">"; a bare "<" is real text.
        assert normalize_text("<p今天") == "<p今天"

    def test_empty_result(self):
        assert normalize_text("<p> [图] </p>") == ""


class TestClean:
    def test_produces_clean_comment(self):
        out = clean(raw("<p> 满仓 干 </p>"))
        assert isinstance(out, CleanComment)
        assert out.text == "满仓 干"
        assert out.char_len == 4
        assert out.date == D9

    def test_reads_carried_over(self):
        out = clean(raw("抄底", reads=532))
        assert out.reads == 532

    def test_empty_after_cleaning_is_dropped(self):
        source = raw("[图片]")
        out = clean(source)
        assert isinstance(out, Dropped)
        assert out.reason is DropReason.EMPTY
        assert out.raw is source

    def test_whitespace_only_is_dropped(self):
        out = clean(raw("   \t "))
        assert isinstance(out, Dropped)
        assert out.reason is DropReason.EMPTY

    def test_length_boundary_149_kept(self):
        out = clean(raw("涨" * 149))
        assert isinstance(out, CleanComment)
        assert out.char_len == 149

    def test_length_boundary_150_dropped(self):
        out = clean(raw("涨" * 150))
        assert isinstance(out, Dropped)
        assert out.reason is DropReason.TOO_LONG

    def test_max_chars_override(self):
        assert isinstance(clean(raw("涨" * 9), max_chars=10), CleanComment)
        dropped = clean(raw("涨" * 10), max_chars=10)
        assert isinstance(dropped, Dropped)
        assert dropped.reason is DropReason.TOO_LONG

    def test_length_measured_after_cleaning(self):
        # Markup does not count against the length budget.
        text = "<p>" + "跌" * 149 + "</p>[图]"
        out = clean(raw(text))
        assert isinstance(out, CleanComment)
        assert out.char_len == 149

    def test_clean_comment_validates_length(self):
        with pytest.raises(ValueError):
            CleanComment(date=D9, text="涨停", char_len=3, reads=0)

    def test_clean_comment_rejects_unstripped_text(self):
        with pytest.raises(ValueError):
            CleanComment(date=D9, text=" 涨", char_len=2, reads=0)

    def test_clean_comment_rejects_empty(self):
        with pytest.raises(ValueError):
            CleanComment(date=D9, text="", char_len=0, reads=0)


COMMENT_FILE = (
    "date\ttext\treads\tcomments\tsource\n"
    "2020-6-9\t<p>今天抄底了[呲牙]</p>\t532\t12\tguba\n"
    "2020-06-09\t割肉离场，再也不玩了\t88\t3\tguba\n"
    "2020-06-10\t长期持有\t10\t0\tguba\n"
)


class TestParseComments:
    def test_parses_rows_in_order(self):
        parsed = parse_comments(io.StringIO(COMMENT_FILE))
        assert parsed.errors == []
        assert len(parsed.comments) == 3
        first = parsed.comments[0]
        assert first.date == D9
        assert first.text == "<p>今天抄底了[呲牙]</p>"
        assert first.reads == 532
        assert first.comment_count == 12
        assert first.source == "guba"

    def test_unpadded_dates_accepted(self):
        parsed = parse_comments(io.StringIO(COMMENT_FILE))
        assert parsed.comments[0].date == parsed.comments[1].date

    def test_strict_raises_on_bad_count(self):
        text = COMMENT_FILE.replace("\t88\t", "\tabc\t")
        with pytest.raises(ParseError) as exc:
            parse_comments(io.StringIO(text))
        assert exc.value.line_no == 3

    def test_negative_reads_rejected(self):
        text = COMMENT_FILE.replace("\t532\t", "\t-1\t")
        with pytest.raises(ParseError):
            parse_comments(io.StringIO(text))

    def test_wrong_field_count_rejected(self):
        text = COMMENT_FILE.replace("\t12\tguba\n", "\t12\n", 1)
        with pytest.raises(ParseError):
            parse_comments(io.StringIO(text))

    def test_lenient_collects_errors(self):
        text = COMMENT_FILE.replace("\t88\t", "\tabc\t")
        parsed = parse_comments(io.StringIO(text), strict=False)
        assert len(parsed.comments) == 2
        assert len(parsed.errors) == 1
        assert parsed.errors[0].line_no == 3

    def test_header_mismatch(self):
        with pytest.raises(DataError):
            parse_comments(io.StringIO("date\tbody\treads\tcomments\tsource\n"))

    def test_empty_input(self):
        with pytest.raises(DataError):
            parse_comments(io.StringIO(""))


class TestDedupe:
    def test_keeps_first_of_duplicate_pair(self):
        a = clean(raw("满仓", reads=5))
        b = clean(raw("满仓", reads=99))
        assert dedupe([a, b]) == [a]

    def test_same_text_on_other_day_is_kept(self):
        a = clean(raw("满仓", date=D9))
        b = clean(raw("满仓", date=D10))
        assert dedupe([a, b]) == [a, b]

    def test_preserves_order(self):
        items = [clean(raw(t)) for t in ("甲", "乙", "甲", "丙")]
        assert dedupe(items) == [items[0], items[1], items[3]]

    def test_idempotent(self):
        items = [clean(raw(t)) for t in ("甲", "乙", "甲", "乙", "甲")]
        once = dedupe(items)
        assert dedupe(once) == once


class TestSelectTop:
    def test_orders_by_reads_descending(self):
        items = [
            clean(raw("甲", reads=5)),
            clean(raw("乙", reads=9)),
            clean(raw("丙", reads=1)),
        ]
        batch = select_top(D9, items, k=2)
        assert batch.date == D9
        assert [c.reads for c in batch.comments] == [9, 5]

    def test_ties_keep_input_order(self):
        items = [
            clean(raw("甲", reads=9)),
            clean(raw("乙", reads=9)),
            clean(raw("丙", reads=5)),
        ]
        batch = select_top(D9, items, k=3)
        assert [c.text for c in batch.comments] == ["甲", "乙", "丙"]

    def test_k_larger_than_population(self):
        items = [clean(raw("甲", reads=1))]
        assert len(select_top(D9, items, k=50).comments) == 1

    def test_default_k_is_50(self):
        items = [clean(raw(str(i), reads=i)) for i in range(60)]
        batch = select_top(D9, items)
        assert len(batch.comments) == 50
        assert batch.comments[0].reads == 59

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            select_top(D9, [clean(raw("甲"))], k=0)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            select_top(D9, [], k=5)

    def test_rejects_date_mismatch(self):
        with pytest.raises(ValueError):
            select_top(D10, [clean(raw("甲", date=D9))], k=5)

    @given(
        st.lists(
            st.integers(min_value=0, max_value=50), min_size=1, max_size=40
        ),
        st.integers(min_value=1, max_value=45),
    )
    def test_selects_the_k_largest_reads(self, reads, k):
        items = [clean(raw(f"条{i}", reads=r)) for i, r in enumerate(reads)]
        picked = [c.reads for c in select_top(D9, items, k=k).comments]
        assert picked == sorted(reads, reverse=True)[: len(picked)]
        assert len(picked) == min(k, len(reads))


class TestByDay:
    def test_groups_and_sorts_days(self):
        items = [
            clean(raw("乙", date=D10)),
            clean(raw("甲", date=D9)),
            clean(raw("丙", date=D10)),
        ]
        grouped = by_day(items)
        assert list(grouped) == [D9, D10]
        assert [c.text for c in grouped[D10]] == ["乙", "丙"]

    def test_empty(self):
        assert by_day([]) == {}


class TestDailyBatch:
    def test_rejects_mixed_dates(self):
        with pytest.raises(ValueError):
            DailyBatch(
                date=D9,
                comments=(clean(raw("甲", date=D9)), clean(raw("乙", date=D10))),
            )

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DailyBatch(date=D9, comments=())


class TestLengthStats:
    def test_symmetric_sample(self):
        stats, warnings = length_stats([2, 4, 6])
        assert stats.mean == pytest.approx(4.0, abs=1e-12)
        assert stats.sd == pytest.approx(2.0, abs=1e-12)
        assert stats.skewness == pytest.approx(0.0, abs=1e-12)
        assert (stats.min_len, stats.max_len, stats.count) == (2, 6, 3)
        assert warnings == []

    def test_right_skewed_sample(self):
        # m2 = 18, m3 = 54, g1 = 1/sqrt(2), G1 = g1 * sqrt(6) = sqrt(3)
        stats, warnings = length_stats([1, 1, 10])
        assert stats.mean == pytest.approx(4.0, abs=1e-12)
        assert stats.sd == pytest.approx(math.sqrt(27.0), abs=1e-12)
        assert stats.skewness == pytest.approx(math.sqrt(3.0), abs=1e-12)
        assert warnings == []

    def test_single_value(self):
        stats, warnings = length_stats([7])
        assert stats.mean == 7.0
        assert stats.sd == 0.0
        assert stats.skewness == 0.0
        assert stats.count == 1
        assert len(warnings) >= 1

    def test_two_values_skew_undefined(self):
        stats, warnings = length_stats([3, 7])
        assert stats.sd == pytest.approx(math.sqrt(8.0), abs=1e-12)
        assert stats.skewness == 0.0
        assert len(warnings) >= 1

    def test_constant_sample(self):
        stats, warnings = length_stats([5, 5, 5])
        assert stats.sd == 0.0
        assert stats.skewness == 0.0
        assert len(warnings) >= 1

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            length_stats([])

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            length_stats([3, 0])

    @given(st.lists(st.integers(min_value=1, max_value=149), min_size=1, max_size=60))
    def test_basic_bounds(self, lens):
        stats, _ = length_stats(lens)
        assert stats.min_len <= stats.mean <= stats.max_len
        assert stats.sd >= 0.0
        assert math.isfinite(stats.skewness)


CLEANED_ROWS = [
    CleanedRow(
        date=D9, text="今天抄底了", char_len=5, reads=532, comment_count=12,
        source="guba",
    ),
    CleanedRow(
        date=D10, text="长期持有", char_len=4, reads=10, comment_count=0,
        source="guba",
    ),
]


class TestCleanedFile:
    def test_header_and_layout(self):
        buf = io.StringIO()
        write_cleaned(buf, CLEANED_ROWS)
        lines = buf.getvalue().split("\n")
        assert lines[0] == "date\ttext\tchar_len\treads\tcomments\tsource"
        assert lines[1].startswith("2020-06-09\t今天抄底了\t5\t532")

    def test_round_trip(self):
        buf = io.StringIO()
        write_cleaned(buf, CLEANED_ROWS)
        assert read_cleaned(io.StringIO(buf.getvalue())) == CLEANED_ROWS

    def test_read_rejects_length_mismatch(self):
        buf = io.StringIO()
        write_cleaned(buf, CLEANED_ROWS)
        broken = buf.getvalue().replace("\t5\t", "\t6\t", 1)
        with pytest.raises(ParseError):
            read_cleaned(io.StringIO(broken))
