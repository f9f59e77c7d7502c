"""Fine-tuning for the tiny trainable backend.

Standard recipe at toy scale: seeded shuffle, ratio split, minibatch
cross-entropy with Adam, held-out accuracy and loss at the end.  The
checkpoint it saves is what `score` consumes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .classifiers import (
    DEFAULT_MODEL,
    STUB_MODEL,
    TINY_MODEL,
    TinyTorchClassifier,
    _require_torch,
    encode_batch,
)
from .errors import ModelLoadError, SchemaError, UsageError
from .formats import LabeledComment


@dataclass(frozen=True)
class BridgeConfig:
    model: str = DEFAULT_MODEL
    batch_size: int = 16
    learning_rate: float = 2e-5
    max_seq_length: int = 128
    split: float = 0.8
    epochs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_seq_length < 8:
            raise ValueError(
                f"max_seq_length must be >= 8, got {self.max_seq_length}"
            )
        if not 0.0 < self.split < 1.0:
            raise ValueError(f"split must be in (0, 1), got {self.split}")
        if self.learning_rate <= 0.0:
            raise ValueError(
                f"learning_rate must be positive, got {self.learning_rate}"
            )
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")


@dataclass(frozen=True)
class FinetuneReport:
    train_rows: int
    test_rows: int
    epochs: int
    accuracy: float
    loss: float


def split_rows(
    rows: Sequence[LabeledComment], ratio: float, seed: int
) -> tuple[list[LabeledComment], list[LabeledComment]]:
    """Seeded shuffle, then an int(n * ratio) head/tail split."""
    shuffled = list(rows)
    random.Random(seed).shuffle(shuffled)
    n_train = int(len(shuffled) * ratio)
    if n_train == 0 or n_train == len(shuffled):
        raise SchemaError(
            f"cannot split {len(shuffled)} rows at ratio {ratio}: one side is empty"
        )
    return shuffled[:n_train], shuffled[n_train:]


def _trainable_model(config: BridgeConfig) -> TinyTorchClassifier:
    from pathlib import Path

    if config.model == STUB_MODEL:
        raise UsageError("the stub classifier has no parameters to train")
    path = Path(config.model)
    if path.exists():
        return TinyTorchClassifier.from_checkpoint(
            path, max_seq_length=config.max_seq_length
        )
    if config.model in (TINY_MODEL, DEFAULT_MODEL):
        # no hub fetch: training from the named default starts fresh
        return TinyTorchClassifier.fresh(
            max_seq_length=config.max_seq_length, seed=config.seed
        )
    raise ModelLoadError(
        f"cannot load model {config.model!r}: not a local checkpoint"
    )


def finetune(
    rows: Sequence[LabeledComment], config: BridgeConfig
) -> tuple[TinyTorchClassifier, FinetuneReport]:
    torch = _require_torch()
    if not rows:
        raise SchemaError("labeled input has no rows")
    train, test = split_rows(rows, config.split, config.seed)

    model = _trainable_model(config)
    module = model.module
    optimizer = torch.optim.Adam(module.parameters(), lr=config.learning_rate)
    loss_fn = torch.nn.CrossEntropyLoss()
    order_rng = random.Random(config.seed + 1)

    module.train()
    for _ in range(config.epochs):
        order = list(range(len(train)))
        order_rng.shuffle(order)
        for start in range(0, len(order), config.batch_size):
            batch = [train[i] for i in order[start : start + config.batch_size]]
            flat, offsets = encode_batch(
                [r.text for r in batch], config.max_seq_length
            )
            target = torch.tensor([r.label for r in batch], dtype=torch.long)
            optimizer.zero_grad()
            loss = loss_fn(module(flat, offsets), target)
            loss.backward()
            optimizer.step()

    module.eval()
    with torch.no_grad():
        flat, offsets = encode_batch([r.text for r in test], config.max_seq_length)
        logits = module(flat, offsets)
        target = torch.tensor([r.label for r in test], dtype=torch.long)
        held_out_loss = float(loss_fn(logits, target))
        accuracy = float((logits.argmax(dim=1) == target).float().mean())

    report = FinetuneReport(
        train_rows=len(train),
        test_rows=len(test),
        epochs=config.epochs,
        accuracy=accuracy,
        loss=held_out_loss,
    )
    return model, report
