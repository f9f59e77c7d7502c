"""Forum sentiment, market quotes, and the MIC between their daily series."""

from .corpus import (
    CleanComment,
    DailyBatch,
    LengthStats,
    RawComment,
    by_day,
    clean,
    dedupe,
    length_stats,
    normalize_text,
    parse_comments,
    select_top,
)
from .market import QuoteBar, load_quotes, min_max_normalize, quote_series
from .mic import (
    CharacteristicMatrix,
    GridPartition,
    JointHistogram,
    MicResult,
    b_of_n,
    brute_force_max_mi,
    histogram,
    max_mi_for_dims,
    mic,
    mutual_information,
    normalized_mi,
)
from .sentiment import (
    DailySentiment,
    Label,
    Lexicon,
    ScoredComment,
    SentimentScore,
    comment_sentiment,
    daily_index,
    lexicon_score,
    load_lexicon,
    load_scores,
    sentiment_series,
    write_scores,
)
from .timeseries import PairedSeries, TimeSeries, align, rolling_mean

__version__ = "0.1.0"

__all__ = [
    "CharacteristicMatrix",
    "CleanComment",
    "DailyBatch",
    "DailySentiment",
    "GridPartition",
    "JointHistogram",
    "Label",
    "LengthStats",
    "Lexicon",
    "MicResult",
    "PairedSeries",
    "QuoteBar",
    "RawComment",
    "ScoredComment",
    "SentimentScore",
    "TimeSeries",
    "align",
    "b_of_n",
    "brute_force_max_mi",
    "by_day",
    "clean",
    "comment_sentiment",
    "daily_index",
    "dedupe",
    "histogram",
    "length_stats",
    "lexicon_score",
    "load_lexicon",
    "load_quotes",
    "load_scores",
    "max_mi_for_dims",
    "mic",
    "min_max_normalize",
    "mutual_information",
    "normalize_text",
    "normalized_mi",
    "parse_comments",
    "quote_series",
    "rolling_mean",
    "select_top",
    "sentiment_series",
    "write_scores",
]
