"""The ranking network: tanh hidden layers, one sigmoid output, per-sample backprop.

Ranks 1 (best) .. 5 map onto targets 1.0 .. 0.0 in steps of 0.25; a
predicted score maps back through clamp(round(5 - 4y), 1, 5).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .encoders import INPUT_SIZE, encode_course_keywords_and_profile, input_vector
from .model import Course, DomainError, SurveyRecord, Tables, RankedCourse, UserProfile


class ModelError(DomainError):
    pass


def rank_to_target(rank: int) -> float:
    return (5 - rank) / 4.0


def score_to_rank(y: float) -> int:
    return min(5, max(1, round(5 - 4 * y)))


@dataclass
class MlpModel:
    """Weight matrices per layer; each matrix has a trailing bias column."""

    layer_sizes: list[int]
    weights: list[np.ndarray]

    @classmethod
    def init_random(
        cls, hidden_layers: list[int], seed: int, init_range: float = 0.5
    ) -> "MlpModel":
        sizes = [INPUT_SIZE, *hidden_layers, 1]
        rng = np.random.default_rng(seed)
        weights = [
            rng.uniform(-init_range, init_range, size=(sizes[i + 1], sizes[i] + 1))
            for i in range(len(sizes) - 1)
        ]
        return cls(layer_sizes=sizes, weights=weights)

    @classmethod
    def zeros(cls, hidden_layers: list[int]) -> "MlpModel":
        sizes = [INPUT_SIZE, *hidden_layers, 1]
        return cls(
            layer_sizes=sizes,
            weights=[np.zeros((sizes[i + 1], sizes[i] + 1)) for i in range(len(sizes) - 1)],
        )

    def copy(self) -> "MlpModel":
        return MlpModel(list(self.layer_sizes), [w.copy() for w in self.weights])

    def save(self, path: str | Path) -> None:
        lines = ["sizes\t" + "\t".join(map(str, self.layer_sizes)),
                 "activations\ttanh\tsigmoid"]
        for li, w in enumerate(self.weights):
            for row in w:
                lines.append(f"w\t{li}\t" + "\t".join(v.hex() for v in row))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "MlpModel":
        sizes: list[int] = []
        rows: dict[int, list[list[float]]] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            parts = line.split("\t")
            if parts[0] == "sizes":
                sizes = [int(s) for s in parts[1:]]
            elif parts[0] == "w":
                rows.setdefault(int(parts[1]), []).append(
                    [float.fromhex(v) for v in parts[2:]]
                )
        if not sizes or not rows:
            raise ModelError(f"malformed checkpoint {path}")
        weights = [np.array(rows[i]) for i in range(len(sizes) - 1)]
        for i, w in enumerate(weights):
            if w.shape != (sizes[i + 1], sizes[i] + 1):
                raise ModelError(f"layer {i} shape {w.shape} inconsistent with sizes {sizes}")
        return cls(layer_sizes=sizes, weights=weights)


def _forward_trace(model: MlpModel, x: np.ndarray) -> list[np.ndarray]:
    """Activations per layer, input included; hidden tanh, output sigmoid."""
    acts = [x]
    a = x
    for li, w in enumerate(model.weights):
        z = w[:, :-1] @ a + w[:, -1]
        a = 1.0 / (1.0 + np.exp(-z)) if li == len(model.weights) - 1 else np.tanh(z)
        acts.append(a)
    return acts


def forward(model: MlpModel, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.layer_sizes[0],):
        raise ModelError(f"expected input of length {model.layer_sizes[0]}, got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ModelError("non-finite network input")
    return float(_forward_trace(model, x)[-1][0])


def gradients(model: MlpModel, x, t: float) -> list[np.ndarray]:
    """dE/dw for squared error E = 0.5 * (y - t)^2, all layers."""
    x = np.asarray(x, dtype=float)
    acts = _forward_trace(model, x)
    y = acts[-1]
    # output delta: (y - t) * sigmoid'
    delta = (y - t) * y * (1.0 - y)
    grads: list[np.ndarray] = [None] * len(model.weights)  # type: ignore[list-item]
    for li in range(len(model.weights) - 1, -1, -1):
        a_prev = acts[li]
        grads[li] = np.hstack([np.outer(delta, a_prev), delta[:, None]])
        if li > 0:
            delta = (model.weights[li][:, :-1].T @ delta) * (1.0 - acts[li] ** 2)
    return grads


@dataclass(frozen=True)
class TrainConfig:
    hidden_layers: tuple[int, ...] = (32,)
    epochs: int = 400
    learning_rate: float = 0.2
    seed: int = 0
    init_range: float = 0.5

    def __post_init__(self):
        if self.epochs < 0:
            raise ModelError("epochs must be >= 0")
        if self.learning_rate < 0:
            raise ModelError("learning_rate must be >= 0")


def encode_record(record: SurveyRecord, tables: Tables) -> tuple[np.ndarray, float]:
    try:
        vec = encode_course_keywords_and_profile(
            record.course_keywords, record.profile(), tables
        )
    except DomainError as e:
        raise ModelError(f"record not encodable ({record}): {e}") from e
    return np.array(vec), rank_to_target(record.rank)


def train(data: list[SurveyRecord], cfg: TrainConfig, tables: Tables) -> MlpModel:
    """Per-sample gradient descent; shuffle order per epoch drawn from cfg.seed."""
    if not data:
        raise ModelError("empty training set")
    samples = [encode_record(r, tables) for r in data]
    model = MlpModel.init_random(list(cfg.hidden_layers), cfg.seed, cfg.init_range)
    shuffler = np.random.default_rng(cfg.seed + 1)
    order = np.arange(len(samples))
    for _ in range(cfg.epochs):
        shuffler.shuffle(order)
        for i in order:
            x, t = samples[i]
            for w, g in zip(model.weights, gradients(model, x, t)):
                w -= cfg.learning_rate * g
    return model


def gradient_check(model: MlpModel, x, t: float, h: float = 1e-5) -> float:
    """Max relative deviation of analytic dE/dw vs central finite differences."""
    x = np.asarray(x, dtype=float)

    def loss() -> float:
        y = _forward_trace(model, x)[-1][0]
        return 0.5 * (y - t) ** 2

    analytic = gradients(model, x, t)
    worst = 0.0
    for w, g in zip(model.weights, analytic):
        numeric = np.empty_like(w)
        it = np.nditer(w, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            orig = w[idx]
            w[idx] = orig + h
            lp = loss()
            w[idx] = orig - h
            lm = loss()
            w[idx] = orig
            numeric[idx] = (lp - lm) / (2 * h)
        denom = np.linalg.norm(g) + np.linalg.norm(numeric)
        if denom > 1e-10:  # both effectively zero counts as exact agreement
            worst = max(worst, float(np.linalg.norm(g - numeric) / denom))
    return worst


def predict_rank(
    model: MlpModel, profile: UserProfile, course: Course, tables: Tables
) -> RankedCourse:
    y = forward(model, input_vector(profile, course, tables))
    return RankedCourse(course_id=course.course_id, score=y, predicted_rank=score_to_rank(y))


@dataclass(frozen=True)
class EvalReport:
    rms_error: float
    tolerance1_accuracy: float
    n_test: int


def evaluate(model: MlpModel, test: list[SurveyRecord], tables: Tables) -> EvalReport:
    if not test:
        raise ModelError("empty test set")
    sq = 0.0
    hits = 0
    for r in test:
        x, t = encode_record(r, tables)
        y = forward(model, x)
        sq += (y - t) ** 2
        if abs(score_to_rank(y) - r.rank) <= 1:
            hits += 1
    return EvalReport(
        rms_error=math.sqrt(sq / len(test)),
        tolerance1_accuracy=hits / len(test),
        n_test=len(test),
    )


def config_sweep(
    train_data: list[SurveyRecord],
    test_data: list[SurveyRecord],
    configs: list[TrainConfig],
    tables: Tables,
) -> list[tuple[TrainConfig, EvalReport]]:
    if len(configs) < 2:
        raise ModelError("sweep needs at least 2 configs")
    results = []
    for cfg in configs:
        model = train(train_data, cfg, tables)
        results.append((cfg, evaluate(model, test_data, tables)))
    return results
