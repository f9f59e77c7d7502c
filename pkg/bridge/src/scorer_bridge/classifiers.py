"""Classifier backends behind one predict() contract.

A classifier maps texts to per-class probability triples in label order
(negative, neutral, positive).  Two backends ship: a constant stub for
plumbing tests, and a small trainable torch model over hashed characters.
Pre-trained hub checkpoints can be named in configuration, but nothing is
fetched from a hub here; scoring with real weights takes a local
checkpoint path produced by `finetune`.
"""
from __future__ import annotations

import zlib
from pathlib import Path
from typing import Protocol, Sequence

from .errors import ModelLoadError

try:
    import torch
except ImportError:  # the stub backend works without the ML runtime
    torch = None

DEFAULT_MODEL = "chinese-bert-wwm"
STUB_MODEL = "stub"
TINY_MODEL = "tiny"

CHECKPOINT_FORMAT = "scorer-bridge-tiny"

# hashed character-feature space of the tiny model
VOCAB_SIZE = 4096
EMBED_DIM = 32
N_CLASSES = 3

Distribution = tuple[float, float, float]


class Classifier(Protocol):
    def predict(
        self, texts: Sequence[str], *, batch_size: int = 16
    ) -> list[Distribution]: ...


class StubClassifier:
    """Constant distribution: 0.2 positive, 0.2 negative, the rest neutral."""

    def predict(
        self, texts: Sequence[str], *, batch_size: int = 16
    ) -> list[Distribution]:
        return [(0.2, 0.6, 0.2) for _ in texts]


def _require_torch():
    if torch is None:
        raise ModelLoadError("the trainable backend needs torch installed")
    return torch


if torch is not None:

    class _TinyNet(torch.nn.Module):
        def __init__(self):
            super().__init__()
            self.embed = torch.nn.EmbeddingBag(VOCAB_SIZE, EMBED_DIM, mode="mean")
            self.head = torch.nn.Linear(EMBED_DIM, N_CLASSES)

        def forward(self, flat_ids, offsets):
            return self.head(self.embed(flat_ids, offsets))


def _token_ids(text: str, max_seq_length: int) -> list[int]:
    # crc32 is stable across processes, unlike the builtin hash()
    chars = text[:max_seq_length] or " "
    return [zlib.crc32(ch.encode("utf-8")) % VOCAB_SIZE for ch in chars]


def encode_batch(texts: Sequence[str], max_seq_length: int):
    """Pack texts into (flat id tensor, offsets tensor) for the tiny net."""
    _require_torch()
    ids: list[int] = []
    offsets: list[int] = []
    for text in texts:
        offsets.append(len(ids))
        ids.extend(_token_ids(text, max_seq_length))
    return (
        torch.tensor(ids, dtype=torch.long),
        torch.tensor(offsets, dtype=torch.long),
    )


class TinyTorchClassifier:
    """EmbeddingBag over hashed characters with a linear three-class head.

    Trainable offline in seconds; stands in for a full pre-trained encoder
    wherever only the scoring contract matters.
    """

    def __init__(self, module, max_seq_length: int):
        self.module = module
        self.max_seq_length = max_seq_length

    @classmethod
    def fresh(cls, *, max_seq_length: int, seed: int) -> "TinyTorchClassifier":
        _require_torch()
        torch.manual_seed(seed)
        return cls(_TinyNet(), max_seq_length)

    @classmethod
    def from_checkpoint(
        cls, path: Path, *, max_seq_length: int
    ) -> "TinyTorchClassifier":
        _require_torch()
        try:
            payload = torch.load(path, map_location="cpu", weights_only=True)
        except Exception as err:
            raise ModelLoadError(f"cannot load checkpoint {path}: {err}") from None
        if (
            not isinstance(payload, dict)
            or payload.get("format") != CHECKPOINT_FORMAT
        ):
            raise ModelLoadError(f"{path} is not a {CHECKPOINT_FORMAT} checkpoint")
        module = _TinyNet()
        try:
            module.load_state_dict(payload["state_dict"])
        except (KeyError, RuntimeError) as err:
            raise ModelLoadError(f"bad checkpoint {path}: {err}") from None
        return cls(module, max_seq_length)

    def save(self, path: Path) -> None:
        torch.save(
            {
                "format": CHECKPOINT_FORMAT,
                "max_seq_length": self.max_seq_length,
                "state_dict": self.module.state_dict(),
            },
            path,
        )

    def predict(
        self, texts: Sequence[str], *, batch_size: int = 16
    ) -> list[Distribution]:
        self.module.eval()
        out: list[Distribution] = []
        with torch.no_grad():
            for start in range(0, len(texts), batch_size):
                batch = texts[start : start + batch_size]
                flat, offsets = encode_batch(batch, self.max_seq_length)
                probs = torch.softmax(self.module(flat, offsets), dim=1)
                out.extend(
                    (float(p[0]), float(p[1]), float(p[2])) for p in probs
                )
        return out


def load_model(name_or_path: str, *, max_seq_length: int) -> Classifier:
    """Resolve a model name: 'stub', or a path to a saved checkpoint.

    Hub identifiers (the default included) are deliberately not fetched;
    they fail with a load error so callers exit cleanly offline.
    """
    if name_or_path == STUB_MODEL:
        return StubClassifier()
    path = Path(name_or_path)
    if path.exists():
        return TinyTorchClassifier.from_checkpoint(path, max_seq_length=max_seq_length)
    if name_or_path == TINY_MODEL:
        raise ModelLoadError(
            "'tiny' has no saved weights; run finetune first and pass the checkpoint"
        )
    raise ModelLoadError(
        f"cannot load model {name_or_path!r}: not 'stub' and not a local checkpoint "
        "(hub checkpoints are not fetched by this tool)"
    )
