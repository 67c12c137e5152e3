"""t-SNE comparison layout: joint embedding of applications and score centroids.

The embedding is a from-scratch exact t-SNE over the section's normalized
attribute rows.  A per-score centroid (the mean attribute vector of all
applications sharing that reviewer score) is appended to the data matrix
and embedded jointly with the applications, so each centroid lands inside
its cluster in embedding space; the layout then threads a polyline through
the embedded centroids from lowest to highest score.

Determinism: initial 2-D positions are drawn from a Gaussian (sigma 1e-4)
whose per-row seed is a hash of (seed, row bytes), and all internal
arithmetic runs over rows sorted by that hash.  The same seed and data
reproduce positions bit-exactly, and permuting input rows permutes the
output rows bit-exactly.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .attributes import AttributeVector, model_matrix
from .errors import NonFiniteInput, NoScoredApps, TooFewPoints, ValidationError
from .ranking import Normalization

_EPS = 1e-12


@dataclass(frozen=True)
class EmbeddingConfig:
    perplexity: float = 10.0
    iterations: int = 1000
    early_exaggeration: float = 12.0
    exaggeration_iterations: int = 250
    learning_rate: float = 200.0
    initial_momentum: float = 0.5
    final_momentum: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if self.perplexity <= 0 or self.iterations <= 0 or self.learning_rate <= 0:
            raise ValidationError("perplexity, iterations, and learning_rate must be positive")


@dataclass(frozen=True)
class ComparisonLayout:
    positions: dict[int, tuple[float, float]]       # app_id -> (x, y)
    centroids: dict[int, tuple[float, float]]       # score -> (x, y)
    polyline: tuple[int, ...]                       # scores ascending; empty if < 2
    kl_trace: tuple[float, ...]
    config: EmbeddingConfig = field(default_factory=EmbeddingConfig)


def _conditional_probabilities(
    distances: np.ndarray, perplexity: float, tol: float = 1e-5, max_iter: int = 50
) -> np.ndarray:
    """Per-point Gaussian affinities whose entropy matches log(perplexity)."""
    n = distances.shape[0]
    log_perp = np.log(perplexity)
    P = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        row = np.delete(distances[i], i)
        beta, beta_min, beta_max = 1.0, -np.inf, np.inf
        p = np.exp(-row * beta)
        for _ in range(max_iter):
            p = np.exp(-row * beta)
            sum_p = max(p.sum(), _EPS)
            entropy = np.log(sum_p) + beta * float((row * p).sum()) / sum_p
            diff = entropy - log_perp
            if abs(diff) <= tol:
                break
            if diff > 0:
                beta_min = beta
                beta = beta * 2.0 if beta_max == np.inf else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if beta_min == -np.inf else (beta + beta_min) / 2.0
        p = p / max(p.sum(), _EPS)
        P[i, np.arange(n) != i] = p
    return P


def _row_digests(matrix: np.ndarray, seed: int) -> list[bytes]:
    return [
        hashlib.sha256(
            np.int64(seed).tobytes() + np.ascontiguousarray(row, dtype=np.float64).tobytes()
        ).digest()
        for row in matrix
    ]


def _seeded_init(digests: list[bytes]) -> np.ndarray:
    """Per-row Gaussian init keyed by (seed, row content) for equivariance."""
    Y = np.empty((len(digests), 2), dtype=np.float64)
    for i, digest in enumerate(digests):
        rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
        Y[i] = rng.normal(0.0, 1e-4, size=2)
    return Y


def tsne_embed(matrix: np.ndarray, config: EmbeddingConfig) -> tuple[np.ndarray, list[float]]:
    """Embed rows into 2-D; returns positions (n, 2) and the per-iteration KL trace.

    The KL trace is always measured against the un-exaggerated affinities, so
    values before and after the early-exaggeration phase are comparable.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    if n < 5:
        raise TooFewPoints(f"embedding needs at least 5 points, got {n}")
    if not np.isfinite(matrix).all():
        raise NonFiniteInput("embedding input contains NaN or infinity")
    if config.perplexity >= (n - 1) / 3:
        raise ValidationError(
            f"perplexity {config.perplexity} too large for {n} points (needs < {(n - 1) / 3:.2f})"
        )

    # Rows are processed in a canonical content-hash order and scattered
    # back at the end: every float reduction then runs in the same order no
    # matter how the caller permuted the input, so permuting rows permutes
    # the output bit-exactly.
    digests = _row_digests(matrix, config.seed)
    order = sorted(range(n), key=lambda i: digests[i])
    matrix = matrix[order]
    digests = [digests[i] for i in order]

    sq_norms = (matrix**2).sum(axis=1)
    distances = np.maximum(sq_norms[:, None] + sq_norms[None, :] - 2.0 * matrix @ matrix.T, 0.0)

    cond = _conditional_probabilities(distances, config.perplexity)
    P = (cond + cond.T) / (2.0 * n)
    P = np.maximum(P, _EPS)
    np.fill_diagonal(P, 0.0)

    Y = _seeded_init(digests)
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)
    kl_trace: list[float] = []

    for t in range(1, config.iterations + 1):
        exaggerating = t <= config.exaggeration_iterations
        P_eff = P * config.early_exaggeration if exaggerating else P
        momentum = config.initial_momentum if exaggerating else config.final_momentum

        y_sq = (Y**2).sum(axis=1)
        num = 1.0 / (1.0 + np.maximum(y_sq[:, None] + y_sq[None, :] - 2.0 * Y @ Y.T, 0.0))
        np.fill_diagonal(num, 0.0)
        Q = np.maximum(num / num.sum(), _EPS)
        np.fill_diagonal(Q, 0.0)

        PQd = (P_eff - Q) * num
        grad = 4.0 * ((np.diag(PQd.sum(axis=1)) - PQd) @ Y)

        # Standard adaptive gains: grow a coordinate's step while gradient
        # and velocity agree in direction, shrink it when they fight.
        agree = np.sign(grad) == np.sign(velocity)
        gains = np.where(agree, gains * 0.8, gains + 0.2)
        gains = np.maximum(gains, 0.01)

        velocity = momentum * velocity - config.learning_rate * gains * grad
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

        mask = P > 0
        kl_trace.append(float((P[mask] * np.log(P[mask] / Q[mask])).sum()))

    out = np.empty_like(Y)
    out[order] = Y
    return out, kl_trace


def score_centroids(
    vectors: list[AttributeVector], human_scores: list[int]
) -> dict[int, np.ndarray]:
    """Mean raw attribute vector of the applications sharing each score."""
    if len(vectors) != len(human_scores):
        raise ValidationError(f"got {len(vectors)} vectors but {len(human_scores)} scores")
    members: dict[int, list[np.ndarray]] = {}
    for vec, score in zip(vectors, human_scores):
        if score != 0:
            members.setdefault(score, []).append(np.asarray(vec.values, dtype=np.float64))
    if not members:
        raise NoScoredApps("no application carries a nonzero score")
    return {score: np.mean(rows, axis=0) for score, rows in sorted(members.items())}


def build_layout(
    vectors: list[AttributeVector],
    scores_by_id: dict[int, int],
    config: EmbeddingConfig | None = None,
) -> ComparisonLayout:
    """Joint embedding of every application plus one centroid per present score."""
    config = config or EmbeddingConfig()
    section = vectors[0].section
    scores = [scores_by_id.get(v.app_id, 0) for v in vectors]

    app_matrix = model_matrix(vectors, section)
    present = sorted({s for s in scores if s != 0})
    if not present:
        raise NoScoredApps("no application carries a nonzero score")
    centroid_rows = np.array(
        [app_matrix[[i for i, s in enumerate(scores) if s == score]].mean(axis=0)
         for score in present]
    )

    normalization = Normalization.fit(app_matrix)
    joint = normalization.apply(np.vstack([app_matrix, centroid_rows]))

    positions, kl_trace = tsne_embed(joint, config)

    app_positions = {
        v.app_id: (float(positions[i, 0]), float(positions[i, 1]))
        for i, v in enumerate(vectors)
    }
    centroid_positions = {
        score: (float(positions[len(vectors) + k, 0]), float(positions[len(vectors) + k, 1]))
        for k, score in enumerate(present)
    }
    polyline = tuple(present) if len(present) >= 2 else ()
    return ComparisonLayout(
        positions=app_positions,
        centroids=centroid_positions,
        polyline=polyline,
        kl_trace=tuple(kl_trace),
        config=config,
    )
