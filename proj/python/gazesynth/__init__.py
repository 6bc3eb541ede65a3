"""Eye-tracking data quality metrics and device degradation."""

from ._core import (
    ComputationError,
    DegradationPlan,
    GazeRecording,
    QualityVector,
    ValidationError,
    __version__,
    degrade_benchmark,
    degrade_modified,
    estimate_latency,
    one_nn_accuracy,
    oracle_corpus,
    oracle_recording,
    recording_quality,
    run_cli,
    temporal_precision,
)

__all__ = [
    "ComputationError",
    "DegradationPlan",
    "GazeRecording",
    "QualityVector",
    "ValidationError",
    "degrade_benchmark",
    "degrade_modified",
    "estimate_latency",
    "one_nn_accuracy",
    "oracle_corpus",
    "oracle_recording",
    "recording_quality",
    "run_cli",
    "temporal_precision",
]
