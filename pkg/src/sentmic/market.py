"""Daily index quotes: loading, consistency checks, and rescaling.

Quote tables use compact YYYYMMDD dates and may arrive in any row order;
they are sorted ascending on load.  Internal inconsistencies (bounds or the
stated change) are reported as warnings, not errors, since they occur in
real vendor exports.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

import math

import numpy as np

from ._tables import (
    DEFAULT_DELIMITER,
    iter_rows,
    parse_compact_date,
    parse_float,
)
from .errors import DataError, DegenerateRangeError, ParseError
from .timeseries import TimeSeries

QUOTE_HEADER = (
    "date",
    "close",
    "open",
    "high",
    "low",
    "pre_close",
    "change",
    "pct_chg",
    "vol",
    "amount",
)

# fields that make sense as a standalone series
PRICE_FIELDS = ("close", "open", "high", "low", "vol", "amount")

# a stated change further than a cent from close - pre_close gets flagged
CHANGE_TOL = 0.01


@dataclass(frozen=True)
class QuoteBar:
    date: dt.date
    close: float
    open: float
    high: float
    low: float
    pre_close: float
    change: float
    pct_chg: float
    vol: float
    amount: float

    def __post_init__(self):
        for f in fields(self):
            if f.name == "date":
                continue
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value}")


@dataclass
class LoadedQuotes:
    bars: list[QuoteBar]
    warnings: list[str]
    errors: list[ParseError]


def _parse_quote_row(line_no: int, row: Sequence[str]) -> QuoteBar:
    if len(row) != len(QUOTE_HEADER):
        raise ParseError(
            line_no, f"expected {len(QUOTE_HEADER)} fields, got {len(row)}"
        )
    date = parse_compact_date(row[0], line_no)
    values = [
        parse_float(token, line_no, name)
        for name, token in zip(QUOTE_HEADER[1:], row[1:])
    ]
    try:
        return QuoteBar(date, *values)
    except ValueError as err:
        raise ParseError(line_no, str(err)) from None


def _consistency_warnings(bar: QuoteBar) -> list[str]:
    day = bar.date.isoformat()
    warnings = []
    if not (bar.low <= min(bar.open, bar.close) <= max(bar.open, bar.close) <= bar.high):
        warnings.append(f"{day}: open or close falls outside the low/high range")
    stated, implied = bar.change, bar.close - bar.pre_close
    if abs(stated - implied) > CHANGE_TOL:
        warnings.append(
            f"{day}: stated change {stated} does not match close - pre_close = {implied}"
        )
    return warnings


def load_quotes(
    stream, *, delimiter: str = DEFAULT_DELIMITER, strict: bool = True
) -> LoadedQuotes:
    """Read a quote table, sort it by date, and flag internal inconsistencies."""
    bars: list[QuoteBar] = []
    errors: list[ParseError] = []
    for line_no, row in iter_rows(stream, QUOTE_HEADER, delimiter=delimiter):
        try:
            bars.append(_parse_quote_row(line_no, row))
        except ParseError as err:
            if strict:
                raise
            errors.append(err)
    seen: set[dt.date] = set()
    for bar in bars:
        if bar.date in seen:
            raise DataError(f"duplicate date {bar.date.isoformat()}")
        seen.add(bar.date)
    bars.sort(key=lambda b: b.date)
    warnings = [w for bar in bars for w in _consistency_warnings(bar)]
    return LoadedQuotes(bars=bars, warnings=warnings, errors=errors)


def quote_series(bars: Iterable[QuoteBar], field: str = "close") -> TimeSeries:
    """One quote field as a dated series."""
    if field not in PRICE_FIELDS:
        raise ValueError(f"field must be one of {PRICE_FIELDS}, got {field!r}")
    items = list(bars)
    if not items:
        raise DataError("no quote bars to extract from")
    return TimeSeries(
        dates=tuple(bar.date for bar in items),
        values=np.asarray([getattr(bar, field) for bar in items], dtype=float),
    )


def min_max_normalize(series: TimeSeries) -> TimeSeries:
    """Rescale to [0, 1]; the minimum maps to exactly 0 and the maximum to 1."""
    lo = float(series.values.min())
    hi = float(series.values.max())
    if hi == lo:
        raise DegenerateRangeError(
            f"cannot rescale a series whose min and max are both {lo}"
        )
    return TimeSeries(dates=series.dates, values=(series.values - lo) / (hi - lo))
