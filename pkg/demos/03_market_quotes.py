"""Load daily index quotes, surface consistency warnings, rescale to [0, 1].

Quote rows may arrive out of order and occasionally disagree with
themselves (stated change vs close - pre_close, or a close outside the
low/high band).  Loading sorts by date and reports such rows as warnings
rather than rejecting them, the way a human analyst would eyeball them.
"""
import io

from sentmic import load_quotes, min_max_normalize, quote_series

# the 20200608 row understates its change by 0.50 on purpose
QUOTES = """\
date\tclose\topen\thigh\tlow\tpre_close\tchange\tpct_chg\tvol\tamount
20200609\t2956.11\t2936.00\t2958.00\t2930.20\t2937.77\t18.34\t0.62\t2.9e8\t3.4e11
20200605\t2930.80\t2920.11\t2941.00\t2918.90\t2919.25\t11.55\t0.40\t2.4e8\t2.9e11
20200608\t2937.77\t2933.00\t2943.50\t2926.00\t2930.80\t6.47\t0.22\t2.6e8\t3.1e11
20200610\t2943.75\t2953.00\t2957.00\t2940.67\t2956.11\t-12.36\t-0.42\t2.7e8\t3.2e11
"""

loaded = load_quotes(io.StringIO(QUOTES))
print(f"loaded {len(loaded.bars)} bars, {len(loaded.warnings)} warnings")
for w in loaded.warnings:
    print(f"  warning: {w}")

# rows come back sorted ascending regardless of input order
print("dates:", [bar.date.isoformat() for bar in loaded.bars])

# 1. pull one field out as a dated series (close is the default)
closes = quote_series(loaded.bars)
print("closes:", closes.values.tolist())

# 2. rescale into [0, 1]; the min maps to exactly 0.0 and the max to 1.0
scaled = min_max_normalize(closes)
for d, v in zip(scaled.dates, scaled.values):
    print(f"  {d} {v:.6f}")
