"""Command-line adapter: score cleaned comments, fine-tune the tiny model.

Exit codes: 0 success, 2 usage problems, 3 table-contract violations,
5 model load failures.  Outputs carry no timestamps, so a rerun with the
same inputs and checkpoint is byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .classifiers import DEFAULT_MODEL, TINY_MODEL, load_model
from .errors import ModelLoadError, SchemaError, UsageError
from .finetune import BridgeConfig, finetune
from .formats import ScoredRow, read_cleaned, read_labeled, write_scored


def _require_input(path: Path) -> Path:
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    return path


def _config_from(args: argparse.Namespace) -> BridgeConfig:
    keys = (
        "model",
        "batch_size",
        "learning_rate",
        "max_seq_length",
        "split",
        "epochs",
        "seed",
    )
    chosen = {k: getattr(args, k) for k in keys if hasattr(args, k)}
    try:
        return BridgeConfig(**chosen)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _cmd_score(args: argparse.Namespace) -> int:
    config = _config_from(args)
    with open(_require_input(Path(args.input)), encoding="utf-8", newline="") as fh:
        rows = read_cleaned(fh)
    model = load_model(config.model, max_seq_length=config.max_seq_length)
    distributions = model.predict(
        [r.text for r in rows], batch_size=config.batch_size
    )
    scored = []
    for row, dist in zip(rows, distributions):
        label = dist.index(max(dist))  # argmax; first class wins ties
        scored.append(
            ScoredRow(
                date=row.date,
                text=row.text,
                label=label,
                p_pos=dist[2],
                p_neg=dist[0],
            )
        )
    with open(Path(args.output), "w", encoding="utf-8", newline="") as fh:
        write_scored(fh, scored)
    print(f"scored {len(scored)} rows with {config.model}")
    return 0


def _cmd_finetune(args: argparse.Namespace) -> int:
    config = _config_from(args)
    with open(_require_input(Path(args.labeled)), encoding="utf-8", newline="") as fh:
        rows = read_labeled(fh)
    model, report = finetune(rows, config)
    checkpoint = Path(args.checkpoint_out)
    model.save(checkpoint)
    print(
        json.dumps(
            {
                "accuracy": report.accuracy,
                "loss": report.loss,
                "train_rows": report.train_rows,
                "test_rows": report.test_rows,
                "epochs": report.epochs,
                "checkpoint": str(checkpoint),
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorer-bridge",
        description="neural sentiment scores for cleaned comment tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="score a cleaned-comment table")
    score.add_argument("--input", required=True, help="cleaned-comment table")
    score.add_argument("--output", required=True, help="scored-comment table to write")
    score.add_argument(
        "--model",
        default=DEFAULT_MODEL,
        help="'stub', a checkpoint path, or a hub identifier (not fetched)",
    )
    score.add_argument("--batch-size", type=int, default=16)
    score.add_argument("--max-seq-length", type=int, default=128)
    score.add_argument("--seed", type=int, default=0)
    score.set_defaults(func=_cmd_score)

    tune = sub.add_parser("finetune", help="fine-tune on a labeled table")
    tune.add_argument("--labeled", required=True, help="text/label table")
    tune.add_argument(
        "--checkpoint-out", required=True, help="where to save the tuned weights"
    )
    tune.add_argument(
        "--model",
        default=TINY_MODEL,
        help="'tiny' for fresh weights or a checkpoint path to continue from",
    )
    tune.add_argument("--batch-size", type=int, default=16)
    tune.add_argument("--learning-rate", type=float, default=2e-5)
    tune.add_argument("--max-seq-length", type=int, default=128)
    tune.add_argument("--split", type=float, default=0.8)
    tune.add_argument("--epochs", type=int, default=1)
    tune.add_argument("--seed", type=int, default=0)
    tune.set_defaults(func=_cmd_finetune)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SchemaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except ModelLoadError as err:
        print(f"error: {err}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    raise SystemExit(main())
