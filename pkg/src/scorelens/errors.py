"""Exception types shared across the library.

Every error carries a short machine-readable ``code`` so the CLI and the
HTTP service can map failures to exit codes / status codes without string
matching on messages.
"""


class ScorelensError(Exception):
    """Base class for all library errors."""

    code = "error"


class ValidationError(ScorelensError):
    """Bad input data (rejected before any computation runs)."""

    code = "validation"


class MissingField(ValidationError):
    code = "missing_field"

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"missing required field: {path}")


class BadEnum(ValidationError):
    code = "bad_enum"

    def __init__(self, path: str, value, allowed=None):
        self.path = path
        self.value = value
        msg = f"invalid value {value!r} at {path}"
        if allowed:
            msg += f" (allowed: {', '.join(sorted(allowed))})"
        super().__init__(msg)


class EmptySeries(ValidationError):
    code = "empty_series"


class EmptyGroup(ValidationError):
    code = "empty_group"


class NonPositiveBandwidth(ValidationError):
    code = "non_positive_bandwidth"


class DegenerateSeries(ValidationError):
    code = "degenerate_series"


class TooFewSamples(ValidationError):
    code = "too_few_samples"


class AllTied(ValidationError):
    code = "all_tied"


class NonFiniteInput(ValidationError):
    code = "non_finite_input"


class SchemaMismatch(ValidationError):
    code = "schema_mismatch"


class EmptyTrainingScores(ValidationError):
    code = "empty_training_scores"


class LengthMismatch(ValidationError):
    code = "length_mismatch"


class TooFewObservations(ValidationError):
    code = "too_few_observations"


class TooFewPoints(ValidationError):
    code = "too_few_points"


class NoScoredApps(ValidationError):
    code = "no_scored_apps"


class SessionClosed(ScorelensError):
    code = "session_closed"


class StaleSeq(ScorelensError):
    code = "stale_seq"


class CorruptLog(ScorelensError):
    code = "corrupt_log"


class TrainingInProgress(ScorelensError):
    code = "training_in_progress"
