"""Command-line orchestration: comments and quotes in, MIC report out.

Every subcommand writes its artifacts plus a run_report.json whose stage
counts reconcile exactly, and reruns on identical inputs produce
byte-identical files.  Exit codes are a stable contract: 0 success, 2 usage
or missing input, 3 data error, 4 analysis error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import corpus, market
from . import sentiment as senti
from . import timeseries
from .mic import MicResult, mic as compute_mic
from ._tables import fmt_float, make_writer
from .errors import AnalysisError, DataError

ENV_CONFIG = "SENTMIC_CONFIG"
LOCK_NAME = ".sentmic.lock"

INT_KEYS = ("top_k", "max_chars", "window", "min_periods")
BOOL_KEYS = ("normalize_before_smoothing", "inclusive_b", "strict")
PATH_KEYS = ("comments", "lexicon", "scores", "quotes", "out_dir")
STR_KEYS = ("field",)
CONFIG_KEYS = INT_KEYS + BOOL_KEYS + PATH_KEYS + STR_KEYS


class UsageError(Exception):
    """Bad invocation: unknown keys, missing inputs, held locks."""


@dataclass
class PipelineConfig:
    comments: str | None = None
    lexicon: str | None = None
    scores: str | None = None
    quotes: str | None = None
    cleaned: str | None = None
    index: str | None = None
    out_dir: str | None = None
    field: str = "close"
    top_k: int = corpus.DEFAULT_TOP_K
    max_chars: int = corpus.DEFAULT_MAX_CHARS
    window: int = 30
    min_periods: int = 1
    normalize_before_smoothing: bool = True
    inclusive_b: bool = False
    strict: bool = True


def _read_config_file(path: str) -> dict[str, str]:
    if not os.path.isfile(path):
        raise UsageError(f"config file not found: {path}")
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise UsageError(f"{path}:{line_no}: expected key=value")
            key, _, value = text.partition("=")
            entries[key.strip()] = value.strip()
    return entries


def _coerce(key: str, value: str):
    if key in INT_KEYS:
        try:
            return int(value)
        except ValueError:
            raise UsageError(f"config key {key} needs an integer, got {value!r}") from None
    if key in BOOL_KEYS:
        lowered = value.lower()
        if lowered in ("true", "false"):
            return lowered == "true"
        raise UsageError(f"config key {key} needs true/false, got {value!r}")
    return value


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig()
    config_path = getattr(args, "config", None) or os.environ.get(ENV_CONFIG)
    if config_path:
        for key, value in _read_config_file(config_path).items():
            if key not in CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, _coerce(key, value))
    # explicit flags win over the config file
    for key in CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            setattr(cfg, key, flag_value)
    cfg.cleaned = getattr(args, "cleaned", None) or cfg.cleaned
    cfg.index = getattr(args, "index", None) or cfg.index
    return cfg


def _validate(cfg: PipelineConfig) -> None:
    if cfg.top_k < 1:
        raise UsageError(f"top_k must be >= 1, got {cfg.top_k}")
    if cfg.max_chars < 2:
        raise UsageError(f"max_chars must be >= 2, got {cfg.max_chars}")
    if cfg.window < 1:
        raise UsageError(f"window must be >= 1, got {cfg.window}")
    if not 1 <= cfg.min_periods <= cfg.window:
        raise UsageError(
            f"min_periods must lie in [1, window], got {cfg.min_periods}"
        )
    if cfg.field not in market.PRICE_FIELDS:
        raise UsageError(f"field must be one of {market.PRICE_FIELDS}")


def _require_input(path: str | None, flag: str) -> str:
    if path is None:
        raise UsageError(f"missing input: --{flag}")
    if not os.path.isfile(path):
        raise UsageError(f"input file not found: {path}")
    return path


def _acquire_lock(out_dir: Path) -> Path:
    lock = out_dir / LOCK_NAME
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise UsageError(
            f"output directory {out_dir} is locked by another run "
            f"(remove {LOCK_NAME} if stale)"
        ) from None
    os.close(fd)
    return lock


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def _open_text(path: str):
    return open(path, encoding="utf-8", newline="")


# ---------------------------------------------------------------- stages


def _stage_preprocess(cfg: PipelineConfig) -> tuple[list[corpus.CleanedRow], dict]:
    path = _require_input(cfg.comments, "comments")
    with _open_text(path) as fh:
        parsed = corpus.parse_comments(fh, strict=cfg.strict)
    rows_read = len(parsed.comments) + len(parsed.errors)
    if rows_read == 0:
        raise DataError("no comment rows in input")

    n_empty = n_long = 0
    kept_pairs: list[tuple[corpus.CleanComment, corpus.RawComment]] = []
    for raw_comment in parsed.comments:
        out = corpus.clean(raw_comment, max_chars=cfg.max_chars)
        if isinstance(out, corpus.Dropped):
            if out.reason is corpus.DropReason.EMPTY:
                n_empty += 1
            else:
                n_long += 1
        else:
            kept_pairs.append((out, raw_comment))

    seen: set[tuple[dt.date, str]] = set()
    deduped: list[tuple[corpus.CleanComment, corpus.RawComment]] = []
    for pair in kept_pairs:
        key = (pair[0].date, pair[0].text)
        if key not in seen:
            seen.add(key)
            deduped.append(pair)

    raw_by_id = {id(comment): raw for comment, raw in deduped}
    grouped = corpus.by_day([comment for comment, _ in deduped])
    rows: list[corpus.CleanedRow] = []
    for day, comments in grouped.items():
        batch = corpus.select_top(day, comments, k=cfg.top_k)
        for comment in batch.comments:
            raw = raw_by_id[id(comment)]
            rows.append(
                corpus.CleanedRow(
                    date=comment.date,
                    text=comment.text,
                    char_len=comment.char_len,
                    reads=comment.reads,
                    comment_count=raw.comment_count,
                    source=raw.source,
                )
            )

    warnings = [str(err) for err in parsed.errors]
    stats_dict = None
    if rows:
        stats, stats_warnings = corpus.length_stats([row.char_len for row in rows])
        stats_dict = asdict(stats)
        warnings.extend(stats_warnings)
    report = {
        "rows_read": rows_read,
        "parse_errors": len(parsed.errors),
        "dropped_empty": n_empty,
        "dropped_too_long": n_long,
        "duplicates_removed": len(kept_pairs) - len(deduped),
        "kept": len(deduped),
        "selected": len(rows),
        "days": len(grouped),
        "length_stats": stats_dict,
        "warnings": warnings,
    }
    return rows, report


def _score_rows(
    rows: Iterable[corpus.CleanedRow], lexicon: senti.Lexicon
) -> tuple[list[senti.ScoredComment], dict]:
    scored = [
        senti.ScoredComment(
            date=row.date, text=row.text, score=senti.lexicon_score(row.text, lexicon)
        )
        for row in rows
    ]
    by_label = {label.name.lower(): 0 for label in senti.Label}
    for comment in scored:
        by_label[comment.score.label.name.lower()] += 1
    report = {"rows_read": len(scored), "scored": len(scored), "labels": by_label}
    return scored, report


def _stage_index(parsed: senti.ParsedScores) -> tuple[list[senti.DailySentiment], dict]:
    grouped: dict[dt.date, list[senti.ScoredComment]] = {}
    for comment in parsed.scored:
        grouped.setdefault(comment.date, []).append(comment)
    if not grouped:
        raise DataError("no scored rows to aggregate")
    daily = [senti.daily_index(day, grouped[day]) for day in sorted(grouped)]
    report = {
        "rows_read": len(parsed.scored) + len(parsed.errors),
        "row_errors": len(parsed.errors),
        "days": len(daily),
        "warnings": [str(err) for err in parsed.errors],
    }
    return daily, report


def _stage_quotes(cfg: PipelineConfig) -> tuple[timeseries.TimeSeries, dict]:
    path = _require_input(cfg.quotes, "quotes")
    with _open_text(path) as fh:
        loaded = market.load_quotes(fh, strict=cfg.strict)
    for warning in loaded.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    series = market.quote_series(loaded.bars, cfg.field)
    report = {
        "rows_read": len(loaded.bars) + len(loaded.errors),
        "row_errors": len(loaded.errors),
        "bars": len(loaded.bars),
        "field": cfg.field,
        "warnings": loaded.warnings + [str(err) for err in loaded.errors],
    }
    return series, report


def _prepare_series(
    series: timeseries.TimeSeries, cfg: PipelineConfig
) -> tuple[timeseries.TimeSeries, timeseries.TimeSeries]:
    """(pre-smoothing, final) views of one series under the configured order."""
    if cfg.normalize_before_smoothing:
        pre = market.min_max_normalize(series)
        final = timeseries.rolling_mean(
            pre, window=cfg.window, min_periods=cfg.min_periods
        )
        return pre, final
    smoothed = timeseries.rolling_mean(
        series, window=cfg.window, min_periods=cfg.min_periods
    )
    return series, market.min_max_normalize(smoothed)


def _stage_mic(
    sent_series: timeseries.TimeSeries,
    price_series: timeseries.TimeSeries,
    cfg: PipelineConfig,
    out_dir: Path,
) -> tuple[MicResult, dict]:
    pre_s, final_s = _prepare_series(sent_series, cfg)
    pre_p, final_p = _prepare_series(price_series, cfg)
    raw_pairs = timeseries.align(pre_s, pre_p)
    pairs = timeseries.align(final_s, final_p)
    result = compute_mic(pairs, inclusive_b=cfg.inclusive_b)

    _write_named_pairs(out_dir / "series_raw.tsv", raw_pairs)
    _write_named_pairs(out_dir / "series_smoothed.tsv", pairs)
    _write_matrix(out_dir / "characteristic_matrix.tsv", result)
    _write_json(
        out_dir / "mic_report.json",
        {
            "mic": result.mic,
            "best_x": result.best_x,
            "best_y": result.best_y,
            "b_of_n": result.b,
            "n": result.n,
            "inclusive_b": cfg.inclusive_b,
            "grid_entries": len(result.matrix.entries),
        },
    )
    report = {
        "sentiment_days": len(sent_series),
        "price_days": len(price_series),
        "aligned_days": len(pairs),
        "window": cfg.window,
        "min_periods": cfg.min_periods,
        "normalize_before_smoothing": cfg.normalize_before_smoothing,
        "mic": result.mic,
        "best_grid": [result.best_x, result.best_y],
    }
    return result, report


# -------------------------------------------------------------- file IO


def _write_cleaned_file(path: Path, rows: list[corpus.CleanedRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        corpus.write_cleaned(fh, rows)


def _write_scores_file(path: Path, scored: list[senti.ScoredComment]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        senti.write_scores(fh, scored)


def _write_index_file(path: Path, daily: list[senti.DailySentiment]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = make_writer(fh)
        writer.writerow(("date", "value", "n"))
        for day in daily:
            writer.writerow((day.date.isoformat(), fmt_float(day.emotions), day.n))


def _write_series_file(path: Path, series: timeseries.TimeSeries) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        timeseries.write_series(fh, series)


def _write_named_pairs(path: Path, pairs: timeseries.PairedSeries) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = make_writer(fh)
        writer.writerow(("date", "sentiment", "price"))
        for day, x, y in zip(pairs.dates, pairs.x, pairs.y):
            writer.writerow((day.isoformat(), fmt_float(x), fmt_float(y)))


def _write_matrix(path: Path, result: MicResult) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = make_writer(fh)
        writer.writerow(("x", "y", "value"))
        for grid in sorted(result.matrix.entries):
            writer.writerow((grid[0], grid[1], fmt_float(result.matrix.entries[grid])))


def _read_index_series(path: str) -> timeseries.TimeSeries:
    with _open_text(path) as fh:
        return timeseries.read_series(fh)


# ------------------------------------------------------------- commands


def _cmd_preprocess(cfg: PipelineConfig, out_dir: Path) -> int:
    rows, report = _stage_preprocess(cfg)
    _write_cleaned_file(out_dir / "cleaned.tsv", rows)
    _write_json(out_dir / "run_report.json", {"preprocess": report})
    print(
        f"kept {report['selected']} of {report['rows_read']} comments "
        f"over {report['days']} days"
    )
    return 0


def _cmd_score_lexicon(cfg: PipelineConfig, out_dir: Path) -> int:
    cleaned_path = _require_input(cfg.cleaned, "cleaned")
    lexicon_path = _require_input(cfg.lexicon, "lexicon")
    with _open_text(cleaned_path) as fh:
        rows = corpus.read_cleaned(fh)
    with _open_text(lexicon_path) as fh:
        lexicon = senti.load_lexicon(fh)
    scored, report = _score_rows(rows, lexicon)
    _write_scores_file(out_dir / "scored.tsv", scored)
    _write_json(out_dir / "run_report.json", {"lexicon_scores": report})
    print(f"scored {report['scored']} comments")
    return 0


def _cmd_index(cfg: PipelineConfig, out_dir: Path) -> int:
    scores_path = _require_input(cfg.scores, "scores")
    with _open_text(scores_path) as fh:
        parsed = senti.load_scores(fh, strict=cfg.strict)
    daily, report = _stage_index(parsed)
    _write_index_file(out_dir / "daily_index.tsv", daily)
    _write_json(out_dir / "run_report.json", {"index": report})
    print(f"daily index over {report['days']} days")
    return 0


def _cmd_quotes(cfg: PipelineConfig, out_dir: Path) -> int:
    series, report = _stage_quotes(cfg)
    _write_series_file(out_dir / "price_series.tsv", series)
    _write_json(out_dir / "run_report.json", {"quotes": report})
    print(f"{report['bars']} bars -> {cfg.field} series")
    return 0


def _cmd_mic(cfg: PipelineConfig, out_dir: Path) -> int:
    index_path = _require_input(cfg.index, "index")
    sent_series = _read_index_series(index_path)
    price_series, quote_report = _stage_quotes(cfg)
    result, mic_report = _stage_mic(sent_series, price_series, cfg, out_dir)
    _write_json(
        out_dir / "run_report.json", {"quotes": quote_report, "mic": mic_report}
    )
    print(
        f"mic {fmt_float(result.mic)} at grid ({result.best_x}, {result.best_y}) "
        f"over {result.n} aligned days"
    )
    return 0


def _cmd_pipeline(cfg: PipelineConfig, out_dir: Path) -> int:
    lexicon_path = _require_input(cfg.lexicon, "lexicon")
    rows, pre_report = _stage_preprocess(cfg)
    _write_cleaned_file(out_dir / "cleaned.tsv", rows)

    with _open_text(lexicon_path) as fh:
        lexicon = senti.load_lexicon(fh)
    scored, score_report = _score_rows(rows, lexicon)
    _write_scores_file(out_dir / "scored.tsv", scored)

    daily, index_report = _stage_index(senti.ParsedScores(scored=scored, errors=[]))
    _write_index_file(out_dir / "daily_index.tsv", daily)
    sent_series = timeseries.TimeSeries(
        dates=tuple(day.date for day in daily),
        values=[day.emotions for day in daily],
    )

    price_series, quote_report = _stage_quotes(cfg)
    _write_series_file(out_dir / "price_series.tsv", price_series)

    result, mic_report = _stage_mic(sent_series, price_series, cfg, out_dir)
    _write_json(
        out_dir / "run_report.json",
        {
            "preprocess": pre_report,
            "lexicon_scores": score_report,
            "index": index_report,
            "quotes": quote_report,
            "mic": mic_report,
        },
    )
    print(
        f"mic {fmt_float(result.mic)} at grid ({result.best_x}, {result.best_y}) "
        f"over {result.n} aligned days"
    )
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    run_dir = Path(args.run_dir)
    report_path = run_dir / "run_report.json"
    if not report_path.is_file():
        raise UsageError(f"no run_report.json under {run_dir}")
    with open(report_path, encoding="utf-8") as fh:
        report = json.load(fh)
    for stage in sorted(report):
        section = report[stage]
        flat = ", ".join(
            f"{key}={value}"
            for key, value in sorted(section.items())
            if not isinstance(value, (dict, list))
        )
        print(f"{stage}: {flat}")
    mic_path = run_dir / "mic_report.json"
    if mic_path.is_file():
        with open(mic_path, encoding="utf-8") as fh:
            summary = json.load(fh)
        print(
            f"mic {fmt_float(summary['mic'])} at grid "
            f"({summary['best_x']}, {summary['best_y']}) "
            f"with b_of_n {summary['b_of_n']} over n {summary['n']}"
        )
    return 0


COMMANDS = {
    "preprocess": _cmd_preprocess,
    "score-lexicon": _cmd_score_lexicon,
    "index": _cmd_index,
    "quotes": _cmd_quotes,
    "mic": _cmd_mic,
    "pipeline": _cmd_pipeline,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help=f"key=value config file (or ${ENV_CONFIG})")
    parser.add_argument("--out-dir", dest="out_dir", help="directory for artifacts")
    parser.add_argument("--top-k", dest="top_k", type=int)
    parser.add_argument("--max-chars", dest="max_chars", type=int)
    parser.add_argument("--window", type=int)
    parser.add_argument("--min-periods", dest="min_periods", type=int)
    parser.add_argument("--field", choices=market.PRICE_FIELDS)
    parser.add_argument(
        "--inclusive-b",
        dest="inclusive_b",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="admit grids with x*y equal to the budget, not only below it",
    )
    parser.add_argument(
        "--normalize-before-smoothing",
        dest="normalize_before_smoothing",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    parser.add_argument(
        "--strict",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="fail on the first bad row instead of collecting row errors",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentmic",
        description="forum sentiment, market quotes, and their MIC",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="parse, clean, dedupe, and select comments")
    _add_common(p)
    p.add_argument("--comments", help="raw comment table")

    p = sub.add_parser("score-lexicon", help="score cleaned comments with a term list")
    _add_common(p)
    p.add_argument("--cleaned", help="cleaned-comment table")
    p.add_argument("--lexicon", help="sectioned term list")

    p = sub.add_parser("index", help="aggregate scored comments into a daily index")
    _add_common(p)
    p.add_argument("--scores", help="scored-comment table")

    p = sub.add_parser("quotes", help="load and validate a quote table")
    _add_common(p)
    p.add_argument("--quotes", help="quote table")

    p = sub.add_parser("mic", help="normalize, smooth, align, and compute MIC")
    _add_common(p)
    p.add_argument("--index", help="daily index table (date, value, n)")
    p.add_argument("--quotes", help="quote table")

    p = sub.add_parser("pipeline", help="run every stage end to end")
    _add_common(p)
    p.add_argument("--comments", help="raw comment table")
    p.add_argument("--lexicon", help="sectioned term list")
    p.add_argument("--quotes", help="quote table")

    p = sub.add_parser("report", help="print a run directory's reports")
    p.add_argument("--run-dir", dest="run_dir", required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            return _cmd_report(args)
        cfg = _resolve_config(args)
        _validate(cfg)
        if cfg.out_dir is None:
            raise UsageError("missing output directory: --out-dir")
        out_dir = Path(cfg.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        lock = _acquire_lock(out_dir)
        try:
            return COMMANDS[args.command](cfg, out_dir)
        finally:
            lock.unlink()
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DataError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except AnalysisError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
