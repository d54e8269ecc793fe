"""Accuracy-versus-window-length prediction for correlation-based auditory
attention decoding.

The heavy lifting lives in the compiled extension ``aadcurve._core``; this
package re-exports its public names unchanged.
"""

from ._core import (
    CiConfig,
    CiResult,
    CorrelationPair,
    CurvePoint,
    DecisionVariableModel,
    Error,
    EvaluationReport,
    Extrapolation,
    GeneratorMode,
    GroundTruthCurve,
    GroundTruthPoint,
    HotellingMoments,
    LabeledCorrelationSet,
    PerformanceCurve,
    PointReport,
    SyntheticScenario,
    baseline_sweep,
    bca_interval,
    bca_intervals,
    clamp_correlation,
    compare,
    empirical_accuracy,
    estimate_model,
    extrapolate,
    fisher,
    fisher_inv,
    ground_truth_curve,
    hotelling_moments,
    labeled_set,
    mean_curve,
    model_curve,
    normal_quantile,
    oracle_pairs,
    oracle_truth_curve,
    pearson,
    predict_accuracy,
    std_normal_cdf,
    subsample_experiment,
    window_samples,
)

__all__ = [
    "CiConfig",
    "CiResult",
    "CorrelationPair",
    "CurvePoint",
    "DecisionVariableModel",
    "Error",
    "EvaluationReport",
    "Extrapolation",
    "GeneratorMode",
    "GroundTruthCurve",
    "GroundTruthPoint",
    "HotellingMoments",
    "LabeledCorrelationSet",
    "PerformanceCurve",
    "PointReport",
    "SyntheticScenario",
    "baseline_sweep",
    "bca_interval",
    "bca_intervals",
    "clamp_correlation",
    "compare",
    "empirical_accuracy",
    "estimate_model",
    "extrapolate",
    "fisher",
    "fisher_inv",
    "ground_truth_curve",
    "hotelling_moments",
    "labeled_set",
    "mean_curve",
    "model_curve",
    "normal_quantile",
    "oracle_pairs",
    "oracle_truth_curve",
    "pearson",
    "predict_accuracy",
    "std_normal_cdf",
    "subsample_experiment",
    "window_samples",
]
