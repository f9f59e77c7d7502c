"""Walk a handful of raw forum comments through the cleaning stages.

Shows the preprocessing chain one step at a time: parsing the raw table,
markup stripping with length filtering, duplicate removal, per-day ranking
by read count, and the summary statistics over surviving comment lengths.
"""
import io

from sentmic import by_day, clean, dedupe, length_stats, parse_comments, select_top
from sentmic.corpus import CleanComment

RAW = """\
date\ttext\treads\tcomments\tsource
2020-06-09\t<div>今天抄底了</div>\t532\t12\tguba
2020-06-09\t今天抄底了\t61\t0\tguba
2020-06-09\t[图片]\t40\t2\tguba
2020-06-10\t割肉离场，再也不玩了\t88\t3\tguba
2020-06-10\t利好 来了   冲冲冲\t120\t7\tguba
"""

# 1. parse the tab-separated table
parsed = parse_comments(io.StringIO(RAW))
print(f"parsed {len(parsed.comments)} raw rows, {len(parsed.errors)} bad rows")

# 2. normalize and filter each row; markup goes away, empty results drop out
kept = []
for raw in parsed.comments:
    result = clean(raw)
    if isinstance(result, CleanComment):
        kept.append(result)
        print(f"  kept    {result.date} {result.text!r} ({result.char_len} chars)")
    else:
        print(f"  dropped {raw.date} {raw.text!r}: {result.reason.value}")

# 3. remove exact repeats of the same text on the same day, first one wins
unique = dedupe(kept)
print(f"dedupe: {len(kept)} -> {len(unique)}")

# 4. group by day and keep the most-read comments of each day
for day, comments in by_day(unique).items():
    batch = select_top(day, comments, k=2)
    texts = [c.text for c in batch.comments]
    print(f"  {day}: top {len(batch.comments)} by reads -> {texts}")

# 5. length statistics over what survived
stats, warnings = length_stats([c.char_len for c in unique])
print(
    f"lengths: count={stats.count} mean={stats.mean:.2f} "
    f"sd={stats.sd:.2f} skewness={stats.skewness:.2f}"
)
for w in warnings:
    print(f"  warning: {w}")
