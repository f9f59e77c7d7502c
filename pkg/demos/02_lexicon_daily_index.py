"""Score comment texts against a polarity lexicon and build the daily index.

The lexicon scorer counts distinct positive and negative substring hits,
turns them into add-one smoothed probabilities, and labels the comment by
the larger count.  Per-comment values (p_pos - p_neg) are then averaged
into one number per trading day.
"""
import datetime as dt
import io

from sentmic import (
    ScoredComment,
    comment_sentiment,
    daily_index,
    lexicon_score,
    load_lexicon,
    sentiment_series,
)

LEXICON = """\
[positive]
抄底
加仓
利好
冲

[negative]
割肉
跌
亏
"""

lexicon = load_lexicon(io.StringIO(LEXICON))
print(f"lexicon: {len(lexicon.positive)} positive, {len(lexicon.negative)} negative")

# 1. score individual texts; repeats of one term count once
TEXTS = [
    "今天抄底加仓，不怕跌",
    "割肉离场，亏到怀疑人生",
    "横盘一天，没啥可说的",
    "利好利好利好",
]
for text in TEXTS:
    score = lexicon_score(text, lexicon)
    print(
        f"  {score.label.name:<8} p_pos={score.p_pos:.4f} p_neg={score.p_neg:.4f} "
        f"value={comment_sentiment(score):+.4f}  {text}"
    )

# 2. aggregate scored comments into one value per day
day1 = dt.date(2020, 6, 9)
day2 = dt.date(2020, 6, 10)
batches = [
    (day1, [ScoredComment(date=day1, text=t, score=lexicon_score(t, lexicon))
            for t in TEXTS[:3]]),
    (day2, [ScoredComment(date=day2, text=t, score=lexicon_score(t, lexicon))
            for t in TEXTS[3:]]),
]
for day, comments in batches:
    daily = daily_index(day, comments)
    print(f"daily {daily.date}: index={daily.emotions:+.4f} over n={daily.n} comments")

# 3. the same aggregation as a dated series, ready for smoothing and pairing
series = sentiment_series(batches)
print("series:", [(d.isoformat(), round(float(v), 4)) for d, v in zip(series.dates, series.values)])
