"""Dated value series: the carrier type between pipeline stages.

A TimeSeries is a strictly date-ascending sequence of finite floats.  A
PairedSeries is two series inner-joined on their dates, ready for dependence
estimation.
"""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._tables import (
    DEFAULT_DELIMITER,
    fmt_float,
    iter_rows,
    make_writer,
    parse_float,
    parse_iso_date,
)
from .errors import NoOverlapError


def _check_dates(dates: Sequence[dt.date]) -> tuple[dt.date, ...]:
    out = tuple(dates)
    if not out:
        raise ValueError("series needs at least one point")
    for a, b in zip(out, out[1:]):
        if a >= b:
            raise ValueError(f"dates must strictly increase, got {a} then {b}")
    return out


def _check_values(values, n: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or len(arr) != n:
        raise ValueError(f"{name} must be 1-d with {n} entries")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    dates: tuple[dt.date, ...]
    values: np.ndarray

    def __post_init__(self):
        dates = _check_dates(self.dates)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(
            self, "values", _check_values(self.values, len(dates), "values")
        )

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True, eq=False)
class PairedSeries:
    """Two series on a shared, strictly ascending date axis."""

    dates: tuple[dt.date, ...]
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        dates = _check_dates(self.dates)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "x", _check_values(self.x, len(dates), "x"))
        object.__setattr__(self, "y", _check_values(self.y, len(dates), "y"))

    def __len__(self) -> int:
        return len(self.dates)

    @classmethod
    def from_xy(cls, x, y) -> "PairedSeries":
        """Pair two bare value arrays on a synthetic daily date axis."""
        x = np.asarray(x, dtype=float)
        base = dt.date(2000, 1, 1)
        dates = tuple(base + dt.timedelta(days=i) for i in range(len(x)))
        return cls(dates=dates, x=x, y=np.asarray(y, dtype=float))


def rolling_mean(
    series: TimeSeries, window: int = 30, min_periods: int = 1
) -> TimeSeries:
    """Trailing index-based moving average.

    Position i averages the values at positions max(0, i-window+1)..i.  The
    window counts observations, not calendar days, so date gaps are ignored.
    Positions with fewer than min_periods observations are omitted; with the
    default min_periods=1 the output covers every input date.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not 1 <= min_periods <= window:
        raise ValueError(
            f"min_periods must be in [1, window], got {min_periods} with window {window}"
        )
    dates = []
    values = []
    for i in range(len(series)):
        lo = max(0, i - window + 1)
        if i - lo + 1 < min_periods:
            continue
        dates.append(series.dates[i])
        values.append(float(np.mean(series.values[lo : i + 1])))
    return TimeSeries(dates=tuple(dates), values=np.array(values))


def align(a: TimeSeries, b: TimeSeries) -> PairedSeries:
    """Inner join on exactly matching dates; x from a, y from b."""
    b_index = {d: i for i, d in enumerate(b.dates)}
    dates = []
    x = []
    y = []
    for i, d in enumerate(a.dates):
        j = b_index.get(d)
        if j is not None:
            dates.append(d)
            x.append(a.values[i])
            y.append(b.values[j])
    if not dates:
        raise NoOverlapError("the two series share no dates")
    return PairedSeries(dates=tuple(dates), x=np.array(x), y=np.array(y))


# ---------------------------------------------------------------------------
# serialization

SERIES_HEADER = ("date", "value")
PAIRED_HEADER = ("date", "x", "y")


def write_series(stream, series: TimeSeries, *, delimiter: str = DEFAULT_DELIMITER):
    w = make_writer(stream, delimiter)
    w.writerow(SERIES_HEADER)
    for d, v in zip(series.dates, series.values):
        w.writerow([d.isoformat(), fmt_float(v)])


def read_series(stream, *, delimiter: str = DEFAULT_DELIMITER) -> TimeSeries:
    """Read a date,value file; extra columns beyond the first two are ignored."""
    dates = []
    values = []
    for line_no, row in iter_rows(
        stream, SERIES_HEADER, delimiter=delimiter, allow_extra=True
    ):
        dates.append(parse_iso_date(row[0], line_no))
        values.append(parse_float(row[1], line_no, "value"))
    return TimeSeries(dates=tuple(dates), values=np.array(values))


def write_paired(stream, pairs: PairedSeries, *, delimiter: str = DEFAULT_DELIMITER):
    w = make_writer(stream, delimiter)
    w.writerow(PAIRED_HEADER)
    for d, xv, yv in zip(pairs.dates, pairs.x, pairs.y):
        w.writerow([d.isoformat(), fmt_float(xv), fmt_float(yv)])


def read_paired(stream, *, delimiter: str = DEFAULT_DELIMITER) -> PairedSeries:
    dates = []
    x = []
    y = []
    for line_no, row in iter_rows(stream, PAIRED_HEADER, delimiter=delimiter):
        dates.append(parse_iso_date(row[0], line_no))
        x.append(parse_float(row[1], line_no, "x"))
        y.append(parse_float(row[2], line_no, "y"))
    return PairedSeries(dates=tuple(dates), x=np.array(x), y=np.array(y))
