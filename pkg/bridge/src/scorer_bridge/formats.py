"""The three table formats the bridge speaks.

Cleaned comments come in from the preprocessing side, scored comments go
back out to it, and labeled comments feed fine-tuning.  These formats are
the whole contract with the preprocessing package: there is no in-process
coupling, so the schemas are mirrored here exactly.  Tables are UTF-8,
tab-separated, one header row; floats are written with repr() so outputs
are byte-stable across runs.
"""
from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import SchemaError

DELIMITER = "\t"

CLEANED_HEADER = ("date", "text", "char_len", "reads", "comments", "source")
SCORE_HEADER = ("date", "text", "sentiment", "positive_pro", "negative_pro")
LABELED_HEADER = ("text", "label")

# class codes: 0 negative, 1 neutral, 2 positive
LABELS = (0, 1, 2)

# probabilities printed with ~6 significant digits may sum a hair over 1
PROB_SUM_TOL = 1e-9


def fmt_float(value: float) -> str:
    return repr(float(value))


@dataclass(frozen=True)
class CleanedRow:
    date: dt.date
    text: str


@dataclass(frozen=True)
class ScoredRow:
    date: dt.date
    text: str
    label: int
    p_pos: float
    p_neg: float

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label}")
        for name in ("p_pos", "p_neg"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.p_pos + self.p_neg > 1.0 + PROB_SUM_TOL:
            raise ValueError(
                f"p_pos + p_neg = {self.p_pos + self.p_neg} exceeds 1"
            )


@dataclass(frozen=True)
class LabeledComment:
    text: str
    label: int

    def __post_init__(self):
        if not self.text:
            raise ValueError("text must be non-empty")
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label}")


def _rows(stream, expected: Sequence[str]) -> Iterator[tuple[int, list[str]]]:
    reader = csv.reader(stream, delimiter=DELIMITER)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: missing header row") from None
    if [h.strip().lower() for h in header] != list(expected):
        raise SchemaError(f"bad header {header!r}, expected {list(expected)!r}")
    for row in reader:
        if not row:
            continue  # blank line
        yield reader.line_num, row


def _parse_date(token: str, line_no: int) -> dt.date:
    parts = token.strip().split("-")
    try:
        if len(parts) != 3:
            raise ValueError
        year, month, day = (int(p) for p in parts)
        return dt.date(year, month, day)
    except ValueError:
        raise SchemaError(f"line {line_no}: bad date {token!r}") from None


def read_cleaned(stream) -> list[CleanedRow]:
    """Rows of a cleaned-comment table, in file order."""
    rows: list[CleanedRow] = []
    for line_no, row in _rows(stream, CLEANED_HEADER):
        if len(row) != len(CLEANED_HEADER):
            raise SchemaError(
                f"line {line_no}: expected {len(CLEANED_HEADER)} fields, got {len(row)}"
            )
        date = _parse_date(row[0], line_no)
        if not row[1]:
            raise SchemaError(f"line {line_no}: empty text")
        for idx, name in ((2, "char_len"), (3, "reads"), (4, "comments")):
            try:
                int(row[idx])
            except ValueError:
                raise SchemaError(
                    f"line {line_no}: bad {name} {row[idx]!r}"
                ) from None
        rows.append(CleanedRow(date=date, text=row[1]))
    return rows


def read_labeled(stream) -> list[LabeledComment]:
    """Rows of a labeled-comment table (text, label), in file order."""
    rows: list[LabeledComment] = []
    for line_no, row in _rows(stream, LABELED_HEADER):
        if len(row) != len(LABELED_HEADER):
            raise SchemaError(
                f"line {line_no}: expected {len(LABELED_HEADER)} fields, got {len(row)}"
            )
        try:
            label = int(row[1])
        except ValueError:
            raise SchemaError(f"line {line_no}: bad label {row[1]!r}") from None
        try:
            rows.append(LabeledComment(text=row[0], label=label))
        except ValueError as err:
            raise SchemaError(f"line {line_no}: {err}") from None
    return rows


def write_scored(stream, rows: Iterable[ScoredRow]) -> None:
    """Write the scored-comment table; the header goes out even for no rows."""
    writer = csv.writer(stream, delimiter=DELIMITER, lineterminator="\n")
    writer.writerow(SCORE_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.date.isoformat(),
                row.text,
                row.label,
                fmt_float(row.p_pos),
                fmt_float(row.p_neg),
            )
        )
