"""Shallow feed-forward binary classifier, trained from scratch.

Hidden layers are affine + rectifier, the output is affine + logistic.
Training is mini-batch gradient descent on binary cross-entropy with an
adaptive learning rate (divide on validation plateau) and early stopping;
the returned model is the best-validation-loss snapshot.  Everything is
deterministic given the seed.

The first layer consumes sparse vectors directly (only nonzero input
columns are accumulated, in index order), which matches the dense
computation exactly: zero columns contribute exact zeros.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np
import scipy.sparse as sp
from scipy.special import expit

from .corpus import Label
from .errors import (
    CorruptModelFileError,
    DimensionMismatchError,
    NonFiniteLossError,
    SingleClassTrainingSetError,
    VersionMismatchError,
)
from .features import FeatureVector

MODEL_FORMAT_VERSION = 1
_PROB_FLOOR = 1e-12

ARCHITECTURE_PRESETS = {
    "A1": (512, 256, 128, 64),
    "A2": (1024, 512, 256, 128, 64, 32),
    "A3": (2048, 256, 64),
}


@dataclass(frozen=True)
class MlpArchitecture:
    """Hidden layer widths; the output layer is always a single unit."""

    hidden_sizes: tuple[int, ...] = ARCHITECTURE_PRESETS["A1"]

    def __post_init__(self):
        if not self.hidden_sizes or any(w < 1 for w in self.hidden_sizes):
            raise ValueError("all layer widths must be >= 1")

    @classmethod
    def from_preset(cls, name: str) -> "MlpArchitecture":
        try:
            return cls(hidden_sizes=ARCHITECTURE_PRESETS[name])
        except KeyError:
            raise ValueError(
                f"unknown architecture preset {name!r}; expected one of "
                f"{sorted(ARCHITECTURE_PRESETS)}"
            ) from None


@dataclass(frozen=True)
class TrainConfig:
    max_iterations: int = 500
    initial_lr: float = 1e-3
    batch_size: int = 200
    val_fraction: float = 0.1
    early_stop_patience: int = 10
    lr_adapt_divisor: float = 5.0
    lr_adapt_patience: int = 2
    min_delta: float = 1e-4  # improvement below this counts as a plateau
    seed: int = 42

    def __post_init__(self):
        if not 0 < self.val_fraction < 0.5:
            raise ValueError("val_fraction must be in (0, 0.5)")
        if self.early_stop_patience < 1 or self.lr_adapt_patience < 1:
            raise ValueError("patience values must be >= 1")


@dataclass(frozen=True)
class TrainingMeta:
    epochs_run: int = 0
    final_val_loss: float = math.nan
    seed: int = 0


@dataclass
class MlpModel:
    input_dim: int
    architecture: MlpArchitecture
    weights: list[np.ndarray]  # weights[l] has shape (fan_in, fan_out)
    biases: list[np.ndarray]
    threshold: float = 0.4
    training_meta: TrainingMeta = field(default_factory=TrainingMeta)

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_dim, *self.architecture.hidden_sizes, 1)


# ---------------------------------------------------------------------------
# Forward / backward passes
# ---------------------------------------------------------------------------

def _forward_pass(weights, biases, X):
    """Return (per-layer inputs, pre-activations, output probabilities)."""
    inputs = [X]
    zs = []
    a = X
    for l, (w, b) in enumerate(zip(weights, biases)):
        z = a @ w + b
        z = np.asarray(z)
        zs.append(z)
        if l < len(weights) - 1:
            a = np.maximum(z, 0.0)
            inputs.append(a)
    probs = expit(zs[-1][:, 0])
    return inputs, zs, probs


def _bce(probs: np.ndarray, y: np.ndarray) -> float:
    p = np.clip(probs, _PROB_FLOOR, 1.0 - _PROB_FLOOR)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def bce_loss_and_gradients(weights, biases, X, y):
    """Cross-entropy loss and its analytic gradients (used by training updates)."""
    n = X.shape[0]
    inputs, zs, probs = _forward_pass(weights, biases, X)
    loss = _bce(probs, np.asarray(y, dtype=np.float64))
    delta = ((probs - y) / n)[:, None]
    grads_w = [None] * len(weights)
    grads_b = [None] * len(weights)
    for l in range(len(weights) - 1, -1, -1):
        grads_w[l] = np.asarray(inputs[l].T @ delta)
        grads_b[l] = delta.sum(axis=0)
        if l > 0:
            delta = (delta @ weights[l].T) * (zs[l - 1] > 0.0)
    return loss, grads_w, grads_b


def forward(model: MlpModel, vector: FeatureVector) -> float:
    """Probability of relevance for one sparse vector, strictly inside (0, 1)."""
    if vector.dim != model.input_dim:
        raise DimensionMismatchError(
            f"vector dim {vector.dim} != model input dim {model.input_dim}"
        )
    z = model.biases[0].copy()
    w0 = model.weights[0]
    for j, v in vector.entries:
        z += v * w0[j]
    for w, b in zip(model.weights[1:], model.biases[1:]):
        z = np.maximum(z, 0.0) @ w + b
    prob = float(expit(z[0]))
    return min(max(prob, _PROB_FLOOR), 1.0 - _PROB_FLOOR)


def predict(model: MlpModel, vector: FeatureVector) -> tuple[Label, float]:
    """Label a vector: relevant iff probability >= threshold (inclusive)."""
    prob = forward(model, vector)
    label = Label.RELEVANT if prob >= model.threshold else Label.IRRELEVANT
    return label, prob


def predict_batch(
    model: MlpModel, vectors: Union[Sequence[FeatureVector], sp.csr_matrix]
) -> tuple[list[Label], np.ndarray]:
    X = to_matrix(vectors, model.input_dim)
    _, _, probs = _forward_pass(model.weights, model.biases, X)
    probs = np.clip(probs, _PROB_FLOOR, 1.0 - _PROB_FLOOR)
    labels = [Label.RELEVANT if p >= model.threshold else Label.IRRELEVANT for p in probs]
    return labels, probs


# ---------------------------------------------------------------------------
# Training
# ---------------------------------------------------------------------------

def to_matrix(
    vectors: Union[Sequence[FeatureVector], sp.csr_matrix, np.ndarray],
    expected_dim: int | None = None,
) -> sp.csr_matrix:
    """Stack feature vectors into a CSR matrix, checking dimensions."""
    if sp.issparse(vectors):
        X = vectors.tocsr().astype(np.float64)
    elif isinstance(vectors, np.ndarray):
        X = sp.csr_matrix(np.asarray(vectors, dtype=np.float64))
    else:
        vectors = list(vectors)
        dims = {v.dim for v in vectors}
        if len(dims) > 1:
            raise DimensionMismatchError(f"inconsistent vector dims: {sorted(dims)}")
        dim = dims.pop() if dims else (expected_dim or 0)
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for vec in vectors:
            for j, v in vec.entries:
                indices.append(j)
                data.append(v)
            indptr.append(len(indices))
        X = sp.csr_matrix(
            (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), indptr),
            shape=(len(vectors), dim),
        )
    if expected_dim is not None and X.shape[1] != expected_dim:
        raise DimensionMismatchError(
            f"vectors have dim {X.shape[1]}, expected {expected_dim}"
        )
    return X


def _init_layers(layer_sizes, rng):
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        limit = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _as_label_array(labels) -> np.ndarray:
    values = [lbl.value if isinstance(lbl, Label) else int(lbl) for lbl in labels]
    if any(v not in (0, 1) for v in values):
        raise ValueError("labels must be 0/1 or Label members")
    return np.array(values, dtype=np.float64)


def train(
    vectors: Union[Sequence[FeatureVector], sp.csr_matrix],
    labels,
    arch: MlpArchitecture = MlpArchitecture(),
    config: TrainConfig = TrainConfig(),
    threshold: float = 0.4,
    log_hook=None,
) -> MlpModel:
    """Fit the network; ``log_hook(epoch, train_loss, val_loss, lr, improved)``
    is called once per epoch when given."""
    X = to_matrix(vectors)
    y = _as_label_array(labels)
    if X.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"{X.shape[0]} vectors but {y.shape[0]} labels"
        )
    if y.min() == y.max():
        raise SingleClassTrainingSetError("training labels are all identical")

    n = X.shape[0]
    rng = np.random.default_rng(config.seed)
    perm = rng.permutation(n)
    n_val = min(max(int(round(config.val_fraction * n)), 1), n - 1)
    train_idx, val_idx = perm[: n - n_val], perm[n - n_val :]
    X_val, y_val = X[val_idx], y[val_idx]

    layer_sizes = (X.shape[1], *arch.hidden_sizes, 1)
    weights, biases = _init_layers(layer_sizes, rng)

    lr = config.initial_lr
    best_val = math.inf
    best_weights = [w.copy() for w in weights]
    best_biases = [b.copy() for b in biases]
    epochs_since_improve = 0
    epochs_run = 0

    for epoch in range(1, config.max_iterations + 1):
        epochs_run = epoch
        order = train_idx[rng.permutation(len(train_idx))]
        epoch_loss = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads_w, grads_b = bce_loss_and_gradients(
                weights, biases, X[batch], y[batch]
            )
            if not math.isfinite(loss):
                raise NonFiniteLossError(
                    f"non-finite training loss at epoch {epoch}; reduce the learning rate"
                )
            epoch_loss += loss * len(batch)
            for l in range(len(weights)):
                weights[l] -= lr * grads_w[l]
                biases[l] -= lr * grads_b[l]
        epoch_loss /= len(order)

        _, _, val_probs = _forward_pass(weights, biases, X_val)
        val_loss = _bce(val_probs, y_val)
        if not math.isfinite(val_loss):
            raise NonFiniteLossError(
                f"non-finite validation loss at epoch {epoch}; reduce the learning rate"
            )

        improved = val_loss < best_val - config.min_delta
        if improved:
            best_val = val_loss
            best_weights = [w.copy() for w in weights]
            best_biases = [b.copy() for b in biases]
            epochs_since_improve = 0
        else:
            epochs_since_improve += 1
            if epochs_since_improve % config.lr_adapt_patience == 0:
                lr /= config.lr_adapt_divisor
        if log_hook is not None:
            log_hook(epoch, epoch_loss, val_loss, lr, improved)
        if epochs_since_improve >= config.early_stop_patience:
            break

    return MlpModel(
        input_dim=X.shape[1],
        architecture=arch,
        weights=best_weights,
        biases=best_biases,
        threshold=threshold,
        training_meta=TrainingMeta(
            epochs_run=epochs_run, final_val_loss=best_val, seed=config.seed
        ),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def save_model(model: MlpModel, path: Union[str, Path]) -> None:
    payload = {
        "version": MODEL_FORMAT_VERSION,
        "input_dim": model.input_dim,
        "hidden_sizes": list(model.architecture.hidden_sizes),
        "threshold": model.threshold,
        "layers": [
            {"w": w.tolist(), "b": b.tolist()}
            for w, b in zip(model.weights, model.biases)
        ],
        "training_meta": {
            "epochs_run": model.training_meta.epochs_run,
            "final_val_loss": model.training_meta.final_val_loss,
            "seed": model.training_meta.seed,
        },
    }
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_model(path: Union[str, Path]) -> MlpModel:
    try:
        with Path(path).open("r", encoding="utf-8") as fh:
            payload = json.load(fh)
        version = payload["version"]
        input_dim = int(payload["input_dim"])
        hidden_sizes = tuple(int(h) for h in payload["hidden_sizes"])
        threshold = float(payload["threshold"])
        weights = [np.array(layer["w"], dtype=np.float64) for layer in payload["layers"]]
        biases = [np.array(layer["b"], dtype=np.float64) for layer in payload["layers"]]
        meta = payload["training_meta"]
        training_meta = TrainingMeta(
            epochs_run=int(meta["epochs_run"]),
            final_val_loss=float(meta["final_val_loss"]),
            seed=int(meta["seed"]),
        )
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptModelFileError(f"unreadable model file {path}: {exc}") from exc

    if version != MODEL_FORMAT_VERSION:
        raise VersionMismatchError(f"unsupported model format version {version!r}")
    expected = (input_dim, *hidden_sizes, 1)
    shapes = tuple(w.shape for w in weights)
    if len(shapes) != len(expected) - 1 or any(
        w.ndim != 2 or w.shape != (expected[i], expected[i + 1]) for i, w in enumerate(weights)
    ) or any(b.shape != (expected[i + 1],) for i, b in enumerate(biases)):
        raise VersionMismatchError(
            f"layer shapes {shapes} do not chain through declared sizes {expected}"
        )
    return MlpModel(
        input_dim=input_dim,
        architecture=MlpArchitecture(hidden_sizes=hidden_sizes),
        weights=weights,
        biases=biases,
        threshold=threshold,
        training_meta=training_meta,
    )
