"""Comment-level sentiment scores and the daily sentiment index.

A score is a label in {negative, neutral, positive} plus the two class
probabilities.  The per-comment value is p_pos - p_neg and a day's index is
the plain mean over its comments, neutral ones included.  Scored-comment
files are the hand-off format between the classifier and this toolkit.
"""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._tables import (
    DEFAULT_DELIMITER,
    fmt_float,
    iter_rows,
    make_writer,
    parse_float,
    parse_int,
    parse_iso_date,
)
from .errors import DataError, ParseError
from .timeseries import TimeSeries

# classifier outputs are often printed with ~6 significant digits, so a
# rounded pair can sum to just over 1; anything beyond this is a real error
PROB_SUM_TOL = 1e-6

SCORE_HEADER = ("date", "text", "sentiment", "positive_pro", "negative_pro")


class Label(enum.IntEnum):
    NEGATIVE = 0
    NEUTRAL = 1
    POSITIVE = 2


@dataclass(frozen=True)
class SentimentScore:
    label: Label
    p_pos: float
    p_neg: float

    def __post_init__(self):
        object.__setattr__(self, "label", Label(self.label))
        p_pos = float(self.p_pos)
        p_neg = float(self.p_neg)
        object.__setattr__(self, "p_pos", p_pos)
        object.__setattr__(self, "p_neg", p_neg)
        for name, p in (("positive_pro", p_pos), ("negative_pro", p_neg)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if p_pos + p_neg > 1.0 + PROB_SUM_TOL:
            raise ValueError(f"class probabilities sum to {p_pos + p_neg} > 1")
        if self.label is Label.POSITIVE and p_pos < p_neg:
            raise ValueError("positive label with p_pos < p_neg")
        if self.label is Label.NEGATIVE and p_neg < p_pos:
            raise ValueError("negative label with p_neg < p_pos")


def comment_sentiment(score: SentimentScore) -> float:
    """Signed sentiment of one comment, in [-1, 1]."""
    return score.p_pos - score.p_neg


@dataclass(frozen=True)
class ScoredComment:
    date: dt.date
    text: str
    score: SentimentScore


@dataclass(frozen=True)
class DailySentiment:
    date: dt.date
    emotions: float
    n: int


def daily_index(day: dt.date, comments: Sequence[ScoredComment]) -> DailySentiment:
    """Mean comment sentiment for one day; neutral comments count too."""
    items = list(comments)
    if not items:
        raise ValueError(f"no comments for {day}")
    for comment in items:
        if comment.date != day:
            raise ValueError(
                f"comment dated {comment.date} does not belong to {day}"
            )
    total = sum(comment_sentiment(c.score) for c in items)
    return DailySentiment(date=day, emotions=total / len(items), n=len(items))


def sentiment_series(
    batches: Iterable[tuple[dt.date, Sequence[ScoredComment]]]
) -> TimeSeries:
    """Daily index over (day, comments) batches, as a strictly dated series."""
    daily = [daily_index(day, comments) for day, comments in batches]
    return TimeSeries(
        dates=tuple(d.date for d in daily),
        values=np.asarray([d.emotions for d in daily], dtype=float),
    )


@dataclass(frozen=True)
class Lexicon:
    positive: frozenset[str]
    negative: frozenset[str]

    def __post_init__(self):
        overlap = self.positive & self.negative
        if overlap:
            raise ValueError(f"terms in both polarities: {sorted(overlap)}")
        for term in self.positive | self.negative:
            if not term or term != term.strip():
                raise ValueError(f"bad lexicon term {term!r}")


def load_lexicon(stream) -> Lexicon:
    """Read a two-section term list ([positive] / [negative], one term a line)."""
    sections: dict[str, set[str]] = {"positive": set(), "negative": set()}
    current: set[str] | None = None
    for line_no, raw_line in enumerate(stream, start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1]
            if name not in sections:
                raise DataError(f"line {line_no}: unknown section {line!r}")
            current = sections[name]
        elif current is None:
            raise DataError(f"line {line_no}: term before any section header")
        else:
            current.add(line)
    return Lexicon(
        positive=frozenset(sections["positive"]),
        negative=frozenset(sections["negative"]),
    )


def lexicon_score(text: str, lexicon: Lexicon) -> SentimentScore:
    """Score a comment by distinct term hits with add-one smoothing.

    Each lexicon term counts at most once per comment no matter how often it
    occurs.  With no hits at all the score is an uninformative neutral.
    """
    if not lexicon.positive and not lexicon.negative:
        raise ValueError("lexicon has no terms")
    n_pos = sum(1 for term in lexicon.positive if term in text)
    n_neg = sum(1 for term in lexicon.negative if term in text)
    denom = n_pos + n_neg + 2.0
    if n_pos > n_neg:
        label = Label.POSITIVE
    elif n_neg > n_pos:
        label = Label.NEGATIVE
    else:
        label = Label.NEUTRAL
    return SentimentScore(
        label=label, p_pos=(n_pos + 1.0) / denom, p_neg=(n_neg + 1.0) / denom
    )


@dataclass
class ParsedScores:
    scored: list[ScoredComment]
    errors: list[ParseError]


def _parse_score_row(line_no: int, row: Sequence[str]) -> ScoredComment:
    if len(row) != len(SCORE_HEADER):
        raise ParseError(
            line_no, f"expected {len(SCORE_HEADER)} fields, got {len(row)}"
        )
    date = parse_iso_date(row[0], line_no)
    label = parse_int(row[2], line_no, "sentiment")
    p_pos = parse_float(row[3], line_no, "positive_pro")
    p_neg = parse_float(row[4], line_no, "negative_pro")
    try:
        score = SentimentScore(label=label, p_pos=p_pos, p_neg=p_neg)
    except ValueError as err:
        raise ParseError(line_no, str(err)) from None
    return ScoredComment(date=date, text=row[1], score=score)


def load_scores(
    stream, *, delimiter: str = DEFAULT_DELIMITER, strict: bool = True
) -> ParsedScores:
    """Read a scored-comment table in file order, validating every row."""
    scored: list[ScoredComment] = []
    errors: list[ParseError] = []
    for line_no, row in iter_rows(stream, SCORE_HEADER, delimiter=delimiter):
        try:
            scored.append(_parse_score_row(line_no, row))
        except ParseError as err:
            if strict:
                raise
            errors.append(err)
    return ParsedScores(scored=scored, errors=errors)


def write_scores(
    stream, scored: Iterable[ScoredComment], *, delimiter: str = DEFAULT_DELIMITER
) -> None:
    writer = make_writer(stream, delimiter=delimiter)
    writer.writerow(SCORE_HEADER)
    for comment in scored:
        writer.writerow(
            (
                comment.date.isoformat(),
                comment.text,
                int(comment.score.label),
                fmt_float(comment.score.p_pos),
                fmt_float(comment.score.p_neg),
            )
        )
