"""Small helpers for the delimited text formats used across the package.

Every artifact is UTF-8, one header row, configurable single-character
delimiter (tab unless stated otherwise).  Floats are written with repr() so
files round-trip bit-exactly and reruns stay byte-identical.
"""
from __future__ import annotations

import csv
import datetime as dt
from typing import Iterable, Iterator, Sequence

from .errors import DataError, ParseError

DEFAULT_DELIMITER = "\t"


def fmt_float(value: float) -> str:
    return repr(float(value))


def parse_iso_date(token: str, line_no: int) -> dt.date:
    """YYYY-MM-DD, also accepting unpadded month/day (e.g. 2020-9-9)."""
    parts = token.strip().split("-")
    if len(parts) != 3:
        raise ParseError(line_no, f"bad date {token!r}")
    try:
        year, month, day = (int(p) for p in parts)
        return dt.date(year, month, day)
    except ValueError:
        raise ParseError(line_no, f"bad date {token!r}") from None


def parse_compact_date(token: str, line_no: int) -> dt.date:
    """YYYYMMDD."""
    token = token.strip()
    if len(token) != 8 or not token.isdigit():
        raise ParseError(line_no, f"bad date {token!r}")
    try:
        return dt.date(int(token[:4]), int(token[4:6]), int(token[6:]))
    except ValueError:
        raise ParseError(line_no, f"bad date {token!r}") from None


def parse_float(token: str, line_no: int, name: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(line_no, f"bad {name} {token!r}") from None


def parse_int(token: str, line_no: int, name: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"bad {name} {token!r}") from None


def read_header(
    reader: Iterator[list[str]],
    expected: Sequence[str],
    *,
    allow_extra: bool = False,
) -> list[str]:
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty input: missing header row") from None
    names = [h.strip().lower() for h in header]
    want = [h.lower() for h in expected]
    if names[: len(want)] != want or (not allow_extra and len(names) != len(want)):
        raise DataError(f"bad header {header!r}, expected {list(expected)!r}")
    return names


def iter_rows(
    stream: Iterable[str],
    expected_header: Sequence[str],
    *,
    delimiter: str = DEFAULT_DELIMITER,
    allow_extra: bool = False,
) -> Iterator[tuple[int, list[str]]]:
    """Yield (1-based line number, fields) for each data row after the header."""
    reader = csv.reader(stream, delimiter=delimiter)
    read_header(reader, expected_header, allow_extra=allow_extra)
    for row in reader:
        if not row:
            continue  # blank line
        yield reader.line_num, row


def make_writer(stream, delimiter: str = DEFAULT_DELIMITER):
    return csv.writer(stream, delimiter=delimiter, lineterminator="\n")
