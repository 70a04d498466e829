"""Reference plausibility scorer: logistic regression trained with binary cross-entropy.

Training is full-batch gradient descent from all-zero parameters on the mean
loss ``-[y log p + (1 - y) log(1 - p)]`` with ``p = sigmoid(w . x + b)``,
probabilities clamped to ``[1e-7, 1 - 1e-7]``.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from kepr.core.features import FEATURE_DIM, extract_features
from kepr.exceptions import DataError
from kepr.infrastructure.backends.scorer import ScorerBackend
from kepr.models import (
    FEATURE_VERSION,
    LogisticModel,
    RankerInstance,
    StopWordList,
    SynonymLexicon,
    TrainingResult,
)

logger = logging.getLogger(__name__)

DEFAULT_LEARNING_RATE = 0.5
DEFAULT_EPOCHS = 200
PROBABILITY_CLAMP = 1e-7
_LOG_EVERY = 50


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Logistic function, stable for large ``|z|``."""
    return np.exp(-np.logaddexp(0.0, -z))


def bce_loss(weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray) -> float:
    """Mean binary cross-entropy of the model on (X, y)."""
    p = np.clip(sigmoid(X @ weights + bias), PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def bce_gradient(
    weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray
) -> Tuple[np.ndarray, float]:
    """Gradient of :func:`bce_loss` with respect to (weights, bias)."""
    residual = sigmoid(X @ weights + bias) - y
    return X.T @ residual / len(y), float(np.mean(residual))


def fit_logistic(
    X: np.ndarray,
    y: np.ndarray,
    learning_rate: float = DEFAULT_LEARNING_RATE,
    epochs: int = DEFAULT_EPOCHS,
) -> Tuple[np.ndarray, float, List[float]]:
    """Gradient descent on a feature matrix.

    Returns:
        Final weights, final bias, and the loss before each epoch's update

    Raises:
        ValueError: On a non-positive learning rate or epoch count
    """
    if learning_rate <= 0:
        raise ValueError(f"learning_rate must be > 0, got {learning_rate}")
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")

    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    weights = np.zeros(X.shape[1], dtype=np.float64)
    bias = 0.0
    loss_trace: List[float] = []

    for epoch in range(epochs):
        loss_trace.append(bce_loss(weights, bias, X, y))
        grad_w, grad_b = bce_gradient(weights, bias, X, y)
        weights = weights - learning_rate * grad_w
        bias = bias - learning_rate * grad_b
        if (epoch + 1) % _LOG_EVERY == 0:
            logger.info(f"Epoch {epoch + 1}/{epochs}: loss {loss_trace[-1]:.6f}")

    return weights, bias, loss_trace


def feature_matrix(
    instances: Sequence[RankerInstance], stop: StopWordList, lex: SynonymLexicon
) -> Tuple[np.ndarray, np.ndarray]:
    X = np.array(
        [extract_features(i.question_text, i.answer, stop, lex).values for i in instances],
        dtype=np.float64,
    ).reshape(len(instances), FEATURE_DIM)
    y = np.array([i.label for i in instances], dtype=np.float64)
    return X, y


def train_logistic(
    corpus: Sequence[RankerInstance],
    stop: StopWordList,
    lex: SynonymLexicon,
    learning_rate: float = DEFAULT_LEARNING_RATE,
    epochs: int = DEFAULT_EPOCHS,
    seed: int = 0,
) -> TrainingResult:
    """Train the reference scorer on a ranker corpus.

    Full-batch descent from zero parameters is deterministic; ``seed`` is
    only recorded in the log.

    Raises:
        DataError: If the corpus lacks positive or negative instances
    """
    labels = {i.label for i in corpus}
    if labels != {0, 1}:
        raise DataError(
            f"training corpus needs both labels, got {sorted(labels) or 'no instances'}"
        )

    logger.info(
        f"Training logistic scorer on {len(corpus)} instances "
        f"(lr={learning_rate}, epochs={epochs}, seed={seed})"
    )
    X, y = feature_matrix(corpus, stop, lex)
    weights, bias, loss_trace = fit_logistic(X, y, learning_rate, epochs)
    model = LogisticModel(weights=weights.tolist(), bias=bias)
    return TrainingResult(model=model, loss_trace=loss_trace)


def predict(model: LogisticModel, X: np.ndarray) -> np.ndarray:
    return sigmoid(np.asarray(X, dtype=np.float64) @ np.asarray(model.weights) + model.bias)


def evaluate_scorer(
    model: LogisticModel,
    corpus: Sequence[RankerInstance],
    stop: StopWordList,
    lex: SynonymLexicon,
) -> Dict[str, float]:
    """Mean BCE and accuracy at threshold 0.5 on a held-out corpus.

    Raises:
        DataError: If the corpus is empty
    """
    if not corpus:
        raise DataError("validation corpus is empty")
    X, y = feature_matrix(corpus, stop, lex)
    weights = np.asarray(model.weights, dtype=np.float64)
    p = predict(model, X)
    return {
        "instances": float(len(corpus)),
        "loss": bce_loss(weights, model.bias, X, y),
        "accuracy": float(np.mean((p >= 0.5) == (y == 1.0))),
    }


class LogisticScorer(ScorerBackend):
    """In-process scorer backed by a trained :class:`LogisticModel`."""

    def __init__(self, model: LogisticModel, stop: StopWordList, lex: SynonymLexicon):
        if model.feature_version != FEATURE_VERSION:
            raise DataError(
                f"model was trained on features '{model.feature_version}', "
                f"this build extracts '{FEATURE_VERSION}'"
            )
        if len(model.weights) != FEATURE_DIM:
            raise DataError(f"model has {len(model.weights)} weights, expected {FEATURE_DIM}")
        self.name = "logistic-scorer"
        self.model = model
        self.stop = stop
        self.lex = lex

    async def score(self, question: str, answers: List[str]) -> List[float]:
        if not answers:
            return []
        X = np.array(
            [extract_features(question, a, self.stop, self.lex).values for a in answers]
        )
        return predict(self.model, X).tolist()
