"""Forum comment ingestion: parsing, cleaning, dedup, and daily selection.

Raw comment tables are tab-separated with a fixed five-column header.  A
comment survives cleaning when something is left of it after markup removal
and it stays under the length cap; the survivors are deduplicated per
(date, text) and ranked by read count within each day.
"""

from __future__ import annotations

import datetime as dt
import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from ._tables import (
    DEFAULT_DELIMITER,
    iter_rows,
    make_writer,
    parse_int,
    parse_iso_date,
)
from .errors import ParseError

DEFAULT_MAX_CHARS = 150
DEFAULT_TOP_K = 50

COMMENT_HEADER = ("date", "text", "reads", "comments", "source")
CLEANED_HEADER = ("date", "text", "char_len", "reads", "comments", "source")

TAG_RE = re.compile(r"<[^>]*>")
BRACKET_RE = re.compile(r"\[[^\]]*\]")
WS_RE = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    """Drop markup tags and bracketed annotations, then tidy whitespace."""
    text = TAG_RE.sub("", text)
    text = BRACKET_RE.sub("", text)
    return WS_RE.sub(" ", text).strip()


@dataclass(frozen=True)
class RawComment:
    date: dt.date
    text: str
    reads: int
    comment_count: int
    source: str


class DropReason(enum.Enum):
    EMPTY = "empty"
    TOO_LONG = "too_long"


@dataclass(frozen=True)
class Dropped:
    raw: RawComment
    reason: DropReason


@dataclass(frozen=True)
class CleanComment:
    """A comment that survived cleaning; text is already normalized."""

    date: dt.date
    text: str
    char_len: int
    reads: int

    def __post_init__(self):
        if not self.text or self.text != self.text.strip():
            raise ValueError("text must be non-empty and stripped")
        if self.char_len != len(self.text):
            raise ValueError(
                f"char_len {self.char_len} does not match text of {len(self.text)} chars"
            )
        if self.reads < 0:
            raise ValueError(f"reads must be non-negative, got {self.reads}")


def clean(
    raw: RawComment, *, max_chars: int = DEFAULT_MAX_CHARS
) -> Union[CleanComment, Dropped]:
    """Normalize one raw comment, or say why it was discarded.

    Comments whose cleaned text reaches ``max_chars`` characters are treated
    as too long; the cap counts cleaned characters, not raw markup.
    """
    text = normalize_text(raw.text)
    if not text:
        return Dropped(raw=raw, reason=DropReason.EMPTY)
    if len(text) >= max_chars:
        return Dropped(raw=raw, reason=DropReason.TOO_LONG)
    return CleanComment(date=raw.date, text=text, char_len=len(text), reads=raw.reads)


@dataclass
class ParsedComments:
    comments: list[RawComment]
    errors: list[ParseError]


def _parse_comment_row(line_no: int, row: Sequence[str]) -> RawComment:
    if len(row) != len(COMMENT_HEADER):
        raise ParseError(
            line_no, f"expected {len(COMMENT_HEADER)} fields, got {len(row)}"
        )
    reads = parse_int(row[2], line_no, "reads")
    count = parse_int(row[3], line_no, "comments")
    if reads < 0 or count < 0:
        raise ParseError(line_no, "reads and comments must be non-negative")
    return RawComment(
        date=parse_iso_date(row[0], line_no),
        text=row[1],
        reads=reads,
        comment_count=count,
        source=row[4],
    )


def parse_comments(
    stream, *, delimiter: str = DEFAULT_DELIMITER, strict: bool = True
) -> ParsedComments:
    """Read a raw comment table, either failing fast or collecting row errors."""
    comments: list[RawComment] = []
    errors: list[ParseError] = []
    for line_no, row in iter_rows(stream, COMMENT_HEADER, delimiter=delimiter):
        try:
            comments.append(_parse_comment_row(line_no, row))
        except ParseError as err:
            if strict:
                raise
            errors.append(err)
    return ParsedComments(comments=comments, errors=errors)


def dedupe(comments: Iterable[CleanComment]) -> list[CleanComment]:
    """Keep the first occurrence of each (date, text) pair."""
    seen: set[tuple[dt.date, str]] = set()
    kept: list[CleanComment] = []
    for comment in comments:
        key = (comment.date, comment.text)
        if key not in seen:
            seen.add(key)
            kept.append(comment)
    return kept


def by_day(comments: Iterable[CleanComment]) -> dict[dt.date, list[CleanComment]]:
    """Group comments by date; keys come back sorted, values in input order."""
    grouped: dict[dt.date, list[CleanComment]] = {}
    for comment in comments:
        grouped.setdefault(comment.date, []).append(comment)
    return {day: grouped[day] for day in sorted(grouped)}


@dataclass(frozen=True)
class DailyBatch:
    date: dt.date
    comments: tuple[CleanComment, ...]

    def __post_init__(self):
        if not self.comments:
            raise ValueError("a daily batch needs at least one comment")
        for comment in self.comments:
            if comment.date != self.date:
                raise ValueError(
                    f"comment dated {comment.date} does not belong to {self.date}"
                )


def select_top(
    day: dt.date, comments: Sequence[CleanComment], k: int = DEFAULT_TOP_K
) -> DailyBatch:
    """The k most-read comments of one day; ties keep their input order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(comments, key=lambda c: c.reads, reverse=True)
    return DailyBatch(date=day, comments=tuple(ranked[:k]))


@dataclass(frozen=True)
class LengthStats:
    mean: float
    sd: float
    skewness: float
    min_len: int
    max_len: int
    count: int


def length_stats(lengths: Iterable[int]) -> tuple[LengthStats, list[str]]:
    """Mean, sample sd, and adjusted skewness of cleaned comment lengths.

    Skewness uses the G1 form: g1 * sqrt(n(n-1)) / (n-2) with the biased
    moment ratio g1 = m3 / m2^1.5.  Where a statistic is undefined it is
    reported as 0.0 and a warning explains why.
    """
    arr = np.asarray(list(lengths), dtype=float)
    if arr.size == 0:
        raise ValueError("need at least one length")
    if np.any(arr < 1.0):
        raise ValueError("lengths must be positive")
    warnings: list[str] = []
    n = int(arr.size)
    mean = float(arr.mean())
    if n == 1:
        sd, skew = 0.0, 0.0
        warnings.append("single observation: sd and skewness reported as 0")
    else:
        sd = float(arr.std(ddof=1))
        dev = arr - mean
        m2 = float(np.mean(dev * dev))
        if n < 3:
            skew = 0.0
            warnings.append("fewer than 3 observations: skewness reported as 0")
        elif m2 == 0.0:
            skew = 0.0
            warnings.append("zero variance: skewness reported as 0")
        else:
            g1 = float(np.mean(dev**3)) / m2**1.5
            skew = g1 * math.sqrt(n * (n - 1.0)) / (n - 2.0)
    stats = LengthStats(
        mean=mean,
        sd=sd,
        skewness=skew,
        min_len=int(arr.min()),
        max_len=int(arr.max()),
        count=n,
    )
    return stats, warnings


@dataclass(frozen=True)
class CleanedRow:
    """One row of the cleaned-comment file: the input schema plus char_len."""

    date: dt.date
    text: str
    char_len: int
    reads: int
    comment_count: int
    source: str


def write_cleaned(
    stream, rows: Iterable[CleanedRow], *, delimiter: str = DEFAULT_DELIMITER
) -> None:
    writer = make_writer(stream, delimiter=delimiter)
    writer.writerow(CLEANED_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.date.isoformat(),
                row.text,
                row.char_len,
                row.reads,
                row.comment_count,
                row.source,
            )
        )


def read_cleaned(stream, *, delimiter: str = DEFAULT_DELIMITER) -> list[CleanedRow]:
    rows: list[CleanedRow] = []
    for line_no, row in iter_rows(stream, CLEANED_HEADER, delimiter=delimiter):
        if len(row) != len(CLEANED_HEADER):
            raise ParseError(
                line_no, f"expected {len(CLEANED_HEADER)} fields, got {len(row)}"
            )
        char_len = parse_int(row[2], line_no, "char_len")
        if char_len != len(row[1]):
            raise ParseError(
                line_no,
                f"char_len {char_len} does not match text of {len(row[1])} chars",
            )
        rows.append(
            CleanedRow(
                date=parse_iso_date(row[0], line_no),
                text=row[1],
                char_len=char_len,
                reads=parse_int(row[3], line_no, "reads"),
                comment_count=parse_int(row[4], line_no, "comments"),
                source=row[5],
            )
        )
    return rows
