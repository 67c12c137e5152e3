"""Pairwise ranking model: constraint derivation, training, scoring, mapping.

The model learns a linear weight vector w over a section's attributes from
pairwise order constraints between training samples, by minimizing

    J(w) = 1/2 ||w||^2 + C * sum_c max(0, 1 - l_c * w . (d_j - d_i))

with deterministic full-batch subgradient descent on J/C (equivalently,
regularization constant lambda = 1/C against the plain hinge sum) under the
classic 1/(lambda*t) step schedule.  No randomness enters the solver: the
weight vector starts at zero and iteration order is fixed, so identical
inputs reproduce bit-identical weights.  The seed is carried through to the
exported document for pipeline-level reproducibility.

Tied pairs produce no constraint: labeling both orientations of a tie -1
would break antisymmetry, so ties are excluded, which is the standard
pairwise-ranking practice.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

import numpy as np

from .attributes import AttributeVector, model_matrix
from .errors import (
    AllTied,
    EmptyTrainingScores,
    NonFiniteInput,
    SchemaMismatch,
    TooFewSamples,
    ValidationError,
)
from .schema import SCHEMA_VERSION, SCORE_MAX, SCORE_MIN, schema_for

MIN_TRAINING_SAMPLES = 7  # the sample-count bound is strict: k > 6
MAX_ITERATIONS = 2000
CONVERGENCE_TOL = 1e-7
TOP_ATTRIBUTES = 10


@dataclass(frozen=True)
class Constraint:
    """One soft pairwise ordering constraint between sample indices i and j."""

    i: int
    j: int
    label: int  # +1 iff score(i) < score(j), -1 otherwise; ties never appear

    def __post_init__(self):
        assert self.i != self.j and self.label in (-1, 1)


@dataclass(frozen=True)
class Normalization:
    """Per-attribute min-max stats frozen at training time."""

    mins: tuple[float, ...]
    maxs: tuple[float, ...]

    @classmethod
    def fit(cls, matrix: np.ndarray) -> "Normalization":
        return cls(
            mins=tuple(float(v) for v in matrix.min(axis=0)),
            maxs=tuple(float(v) for v in matrix.max(axis=0)),
        )

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        mins = np.asarray(self.mins)
        span = np.asarray(self.maxs) - mins
        out = np.zeros_like(matrix, dtype=np.float64)
        nonconst = span != 0
        out[:, nonconst] = (matrix[:, nonconst] - mins[nonconst]) / span[nonconst]
        return out


@dataclass(frozen=True)
class PreferenceModel:
    section: str
    weights: tuple[float, ...]
    C: float
    normalization: Normalization
    seed: int
    training: tuple[tuple[int, int], ...]  # (app_id, score) of each training sample
    converged: bool
    iterations: int

    @property
    def training_ids(self) -> tuple[int, ...]:
        return tuple(app_id for app_id, _ in self.training)

    @property
    def training_scores(self) -> tuple[int, ...]:
        return tuple(score for _, score in self.training)


@dataclass(frozen=True)
class Prediction:
    app_id: int
    v: float        # raw value w . d
    s_prime: float  # mapped score, exactly two decimals; 0.0 where unscored


@dataclass(frozen=True)
class TrainResult:
    weights: np.ndarray
    converged: bool
    iterations: int
    objective: float


def derive_constraints(samples: Sequence[tuple[AttributeVector, int]]) -> list[Constraint]:
    """One constraint per unordered sample pair with distinct scores.

    Pairs are emitted in index order (i < j); the label says which side
    ranks higher.  Raises when fewer than 7 samples or all scores tie.
    Scores only need to be comparable integers here; the 1..5 sheet range
    is enforced where scores enter the system.
    """
    k = len(samples)
    if k < MIN_TRAINING_SAMPLES:
        raise TooFewSamples(f"need more than 6 training samples, got {k}")
    scores = [score for _, score in samples]
    for score in scores:
        if isinstance(score, bool) or not isinstance(score, int):
            raise ValidationError(f"training scores must be integers, got {score!r}")
    if len(set(scores)) < 2:
        raise AllTied("all training samples share one score; no order constraints exist")
    constraints = []
    for i in range(k):
        for j in range(i + 1, k):
            if scores[i] == scores[j]:
                continue
            constraints.append(Constraint(i=i, j=j, label=1 if scores[i] < scores[j] else -1))
    return constraints


def train(
    constraints: Sequence[Constraint],
    matrix: np.ndarray,
    C: float = 1.0,
    max_iterations: int = MAX_ITERATIONS,
    tol: float = CONVERGENCE_TOL,
) -> TrainResult:
    """Minimize the soft-margin pairwise objective over normalized sample rows.

    ``matrix`` holds the training samples' normalized attribute rows, indexed
    by the constraints.  Stops early once the objective moves less than
    ``tol`` between consecutive iterates.
    """
    if not constraints:
        raise ValidationError("constraint set is empty")
    matrix = np.asarray(matrix, dtype=np.float64)
    if not np.isfinite(matrix).all():
        raise NonFiniteInput("attribute matrix contains NaN or infinity")
    i_idx = np.array([c.i for c in constraints])
    j_idx = np.array([c.j for c in constraints])
    labels = np.array([c.label for c in constraints], dtype=np.float64)
    deltas = matrix[j_idx] - matrix[i_idx]

    lam = 1.0 / C
    w = np.zeros(matrix.shape[1], dtype=np.float64)
    prev_obj = 0.5 * float(w @ w) + C * float(np.maximum(0.0, 1.0 - labels * (deltas @ w)).sum())
    converged = False
    iterations = 0
    objective = prev_obj
    for t in range(1, max_iterations + 1):
        margins = labels * (deltas @ w)
        violated = margins < 1.0
        grad = lam * w - (labels[violated, None] * deltas[violated]).sum(axis=0)
        w = w - (1.0 / (lam * t)) * grad
        objective = 0.5 * float(w @ w) + C * float(
            np.maximum(0.0, 1.0 - labels * (deltas @ w)).sum()
        )
        iterations = t
        if abs(objective - prev_obj) < tol:
            converged = True
            break
        prev_obj = objective
    return TrainResult(weights=w, converged=converged, iterations=iterations, objective=objective)


def fit_preference_model(
    section: str,
    vectors: Sequence[AttributeVector],
    scores_by_id: Mapping[int, int],
    training_ids: Sequence[int],
    C: float = 1.0,
    seed: int = 0,
) -> PreferenceModel:
    """Train a section model from group vectors and the reviewer's scores.

    Normalization statistics are fitted over the WHOLE group (not just the
    training samples) and frozen into the model, so later predictions are
    reproducible from the exported document alone.
    """
    by_id = {v.app_id: v for v in vectors}
    samples = []
    for app_id in training_ids:
        if app_id not in by_id:
            raise ValidationError(f"training id {app_id} is not in the group")
        score = scores_by_id.get(app_id, 0)
        if score == 0:
            raise ValidationError(f"training id {app_id} has no score in section {section}")
        if not SCORE_MIN <= score <= SCORE_MAX:
            raise ValidationError(f"score for app {app_id} outside 1..5: {score!r}")
        samples.append((by_id[app_id], score))

    constraints = derive_constraints(samples)

    full = model_matrix(list(vectors), section)
    normalization = Normalization.fit(full)
    normalized = normalization.apply(full)
    row_of = {v.app_id: idx for idx, v in enumerate(vectors)}
    training_rows = normalized[[row_of[app_id] for app_id in training_ids]]

    result = train(constraints, training_rows, C=C)
    return PreferenceModel(
        section=section,
        weights=tuple(float(x) for x in result.weights),
        C=float(C),
        normalization=normalization,
        seed=int(seed),
        training=tuple((int(app_id), int(score)) for (_, score), app_id
                       in zip(samples, training_ids)),
        converged=result.converged,
        iterations=result.iterations,
    )


def predict_values(model: PreferenceModel, vectors: Sequence[AttributeVector]) -> np.ndarray:
    """Raw values v = w . d for every application, scored or not."""
    schema = schema_for(model.section)
    if len(model.weights) != schema.size:
        raise SchemaMismatch(
            f"model has {len(model.weights)} weights, schema expects {schema.size}"
        )
    for vec in vectors:
        if len(vec.values) != len(model.weights):
            raise SchemaMismatch(
                f"vector for app {vec.app_id} has {len(vec.values)} attributes, "
                f"model expects {len(model.weights)}"
            )
    matrix = model.normalization.apply(model_matrix(list(vectors), model.section))
    return matrix @ np.asarray(model.weights)


def round_half_up(x: float, places: int = 2) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(x).quantize(quantum, rounding=ROUND_HALF_UP))


def map_to_scores(
    v: Sequence[float],
    human_scores: Sequence[int],
    training_scores: Sequence[int],
    app_ids: Sequence[int] | None = None,
) -> list[Prediction]:
    """Map raw values onto [min(S)-0.5, max(S)+0.5] and round to two decimals.

    S is the set of nonzero training-sample scores.  The affine map is
    anchored on the v-range of the scored applications; anything outside
    (possible only for unscored apps) is clamped to the interval.  Apps the
    reviewer has not scored get prediction 0 regardless of v.  If every
    scored app shares one v, everyone lands on the interval midpoint.
    """
    v = list(v)
    human_scores = list(human_scores)
    if len(v) != len(human_scores):
        raise ValidationError(f"got {len(v)} values but {len(human_scores)} scores")
    if app_ids is None:
        app_ids = list(range(len(v)))
    S = [s for s in training_scores if s != 0]
    if not S:
        raise EmptyTrainingScores("no nonzero training scores to anchor the interval")
    lo = min(S) - 0.5
    hi = max(S) + 0.5

    scored_vs = [value for value, s in zip(v, human_scores) if s != 0]
    predictions = []
    for app_id, value, s in zip(app_ids, v, human_scores):
        if s == 0:
            predictions.append(Prediction(app_id=app_id, v=float(value), s_prime=0.0))
            continue
        v_min, v_max = min(scored_vs), max(scored_vs)
        if v_max == v_min:
            mapped = (lo + hi) / 2.0
        else:
            mapped = lo + (value - v_min) * (hi - lo) / (v_max - v_min)
        mapped = min(max(mapped, lo), hi)
        predictions.append(Prediction(app_id=app_id, v=float(value), s_prime=round_half_up(mapped)))
    return predictions


def top_attributes(model: PreferenceModel, k: int = TOP_ATTRIBUTES) -> list[tuple[str, float]]:
    """The k highest-magnitude attribute weights, schema order breaking ties."""
    schema = schema_for(model.section)
    order = sorted(range(schema.size), key=lambda m: (-abs(model.weights[m]), m))
    return [(schema.attribute_names[m], model.weights[m]) for m in order[:k]]


def model_document(model: PreferenceModel) -> dict:
    """Canonical export; sufficient to reproduce predictions bit-exactly."""
    return {
        "format": "model-v1",
        "schema_version": SCHEMA_VERSION,
        "section": model.section,
        "w": list(model.weights),
        "C": model.C,
        "normalization": {"min": list(model.normalization.mins),
                          "max": list(model.normalization.maxs)},
        "seed": model.seed,
        "training": [[app_id, score] for app_id, score in model.training],
        "converged": model.converged,
        "iterations": model.iterations,
    }


def model_from_document(document: dict) -> PreferenceModel:
    if document.get("format") != "model-v1":
        raise ValidationError(f"unsupported model format {document.get('format')!r}")
    norm = document["normalization"]
    return PreferenceModel(
        section=document["section"],
        weights=tuple(float(x) for x in document["w"]),
        C=float(document["C"]),
        normalization=Normalization(mins=tuple(norm["min"]), maxs=tuple(norm["max"])),
        seed=int(document["seed"]),
        training=tuple((int(a), int(s)) for a, s in document["training"]),
        converged=bool(document["converged"]),
        iterations=int(document["iterations"]),
    )


def model_hash(model: PreferenceModel) -> str:
    payload = json.dumps(model_document(model), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
