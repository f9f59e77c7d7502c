"""Regenerate the bundled test fixtures and the MIC regression anchors.

Run from the repository root after an editable install:

    python3 tools/make_fixtures.py

Everything written here is deterministic; reruns must be byte-identical.
"""

from __future__ import annotations

import datetime as dt
import pathlib

import numpy as np

from sentmic import PairedSeries, mic, min_max_normalize, rolling_mean
from sentmic.timeseries import TimeSeries

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
FIXTURES = DATA / "fixtures"

GOLDEN_RATIO_FRAC = 0.6180339887498949


def fmt(value: float) -> str:
    return repr(float(value))


def write_quotes(path: pathlib.Path, days, closes) -> None:
    lines = ["date\tclose\topen\thigh\tlow\tpre_close\tchange\tpct_chg\tvol\tamount"]
    pre = closes[0] - 1.0
    for day, close in zip(days, closes):
        opened = pre
        high = max(opened, close) + 1.0
        low = min(opened, close) - 1.0
        change = close - pre
        lines.append(
            f"{day:%Y%m%d}\t{fmt(close)}\t{fmt(opened)}\t{fmt(high)}\t{fmt(low)}"
            f"\t{fmt(pre)}\t{fmt(change)}\t0.0\t1000000.0\t100000000.0"
        )
        pre = close
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_index(path: pathlib.Path, days, values) -> None:
    lines = ["date\tvalue\tn"]
    for day, value in zip(days, values):
        lines.append(f"{day.isoformat()}\t{fmt(value)}\t1")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def days_from(start: dt.date, n: int) -> list[dt.date]:
    return [start + dt.timedelta(days=i) for i in range(n)]


def independence_regression() -> None:
    lines = ["seed\tmic"]
    for seed in range(20):
        rng = np.random.default_rng(seed)
        pairs = PairedSeries.from_xy(rng.uniform(size=200), rng.uniform(size=200))
        value = mic(pairs).mic
        assert value < 0.35, f"seed {seed} broke the independence ceiling: {value}"
        lines.append(f"{seed}\t{fmt(value)}")
    out = DATA / "mic_independence_n200.tsv"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out}")


def coupled_fixture() -> None:
    """60 days; close is a rising affine map of a non-monotone sentiment."""
    n = 60
    days = days_from(dt.date(2020, 3, 2), n)
    sentiments = [(i * GOLDEN_RATIO_FRAC) % 1.0 for i in range(n)]
    closes = [100.0 + 50.0 * s for s in sentiments]
    assert len(set(sentiments)) == n

    write_index(FIXTURES / "coupled_index.tsv", days, sentiments)
    write_quotes(FIXTURES / "coupled_quotes.tsv", days, closes)

    # verify the default pipeline treatment keeps the coupling perfect
    s = TimeSeries(dates=tuple(days), values=np.asarray(sentiments))
    p = TimeSeries(dates=tuple(days), values=np.asarray(closes))
    s_fin = rolling_mean(min_max_normalize(s), window=30, min_periods=1)
    p_fin = rolling_mean(min_max_normalize(p), window=30, min_periods=1)
    assert len(set(s_fin.values.tolist())) == n
    assert np.array_equal(np.argsort(s_fin.values), np.argsort(p_fin.values))
    result = mic(PairedSeries.from_xy(s_fin.values, p_fin.values))
    print(f"coupled fixture: smoothed mic = {result.mic} at {result.best_x}x{result.best_y}")
    assert result.mic >= 0.8


def independent_fixture() -> None:
    """200 days of independent uniforms for the sentiment and the close."""
    n = 200
    rng = np.random.default_rng(1234)
    days = days_from(dt.date(2020, 3, 2), n)
    sentiments = rng.uniform(-0.5, 0.5, size=n).tolist()
    closes = (100.0 + 20.0 * rng.uniform(size=n)).tolist()

    write_index(FIXTURES / "independent_index.tsv", days, sentiments)
    write_quotes(FIXTURES / "independent_quotes.tsv", days, closes)

    s = TimeSeries(dates=tuple(days), values=np.asarray(sentiments))
    p = TimeSeries(dates=tuple(days), values=np.asarray(closes))
    raw = mic(
        PairedSeries.from_xy(
            min_max_normalize(s).values, min_max_normalize(p).values
        )
    )
    print(f"independent fixture: unsmoothed mic = {raw.mic}")
    s30 = rolling_mean(min_max_normalize(s), window=30, min_periods=1)
    p30 = rolling_mean(min_max_normalize(p), window=30, min_periods=1)
    smooth = mic(PairedSeries.from_xy(s30.values, p30.values))
    print(f"independent fixture: window-30 mic = {smooth.mic}")
    assert raw.mic < 0.35


def pipeline_fixture() -> None:
    """12 days of comments whose lexicon hit count rises one term a day."""
    n = 12
    days = days_from(dt.date(2021, 1, 4), n)
    lines = ["date\ttext\treads\tcomments\tsource"]
    for i, day in enumerate(days):
        text = " ".join(f"up{j}" for j in range(1, i + 2))
        lines.append(f"{day.isoformat()}\t{text}\t10\t0\tguba")
    (FIXTURES / "comments.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    terms = "\n".join(f"up{j}" for j in range(1, n + 1))
    (FIXTURES / "lexicon.txt").write_text(
        f"[positive]\n{terms}\n[negative]\ndown1\n", encoding="utf-8"
    )
    write_quotes(
        FIXTURES / "quotes.tsv", days, [100.0 + 3.0 * i for i in range(n)]
    )
    print("wrote pipeline fixture (comments, lexicon, quotes)")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    independence_regression()
    coupled_fixture()
    independent_fixture()
    pipeline_fixture()


if __name__ == "__main__":
    main()
