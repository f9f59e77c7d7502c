"""Trailing moving averages and date alignment for dated series.

The rolling mean is observation-based: it averages the last `window`
observations regardless of calendar gaps, and the early positions average
whatever is available so the output starts on the same date as the input.
Alignment inner-joins two series on exact dates.
"""
import datetime as dt

import numpy as np

from sentmic import TimeSeries, align, rolling_mean

# trading days: note the weekend hole between the 5th and the 8th
DATES = [dt.date(2020, 6, d) for d in (1, 2, 3, 4, 5, 8, 9, 10)]
values = np.array([4.0, 8.0, 6.0, 10.0, 2.0, 12.0, 6.0, 8.0])
series = TimeSeries(dates=tuple(DATES), values=values)

# 1. window=1 is the identity
same = rolling_mean(series, window=1)
print("window 1 identity:", np.array_equal(same.values, series.values))

# 2. a 3-observation window; the first two positions average shorter spans
smooth = rolling_mean(series, window=3)
for d, raw, s in zip(smooth.dates, series.values, smooth.values):
    print(f"  {d} raw={raw:5.1f} smooth={s:7.4f}")

# 3. min_periods trims the warm-up instead of shortening the window
strict = rolling_mean(series, window=3, min_periods=3)
print(f"min_periods=3 starts at {strict.dates[0]} with {len(strict)} points")

# 4. align two series that only partly overlap
other = TimeSeries(
    dates=tuple(dt.date(2020, 6, d) for d in (3, 4, 5, 8, 9, 10, 11)),
    values=np.arange(7, dtype=float),
)
pairs = align(series, other)
print(f"aligned {len(pairs)} shared dates: {pairs.dates[0]} .. {pairs.dates[-1]}")
print("  x:", pairs.x.tolist())
print("  y:", pairs.y.tolist())
