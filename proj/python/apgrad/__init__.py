"""Projected adaptive-rate optimization with diagonal preconditioners."""

from apgrad._core import (  # noqa: F401
    AlphaRule,
    BetaRule,
    BoundReport,
    DiagonalMatrix,
    EstimatorKind,
    FeasibleSet,
    KnownOptimum,
    OptimizerState,
    Preset,
    ProblemSpec,
    RecordSample,
    RunRecord,
    ScheduleConfig,
    SeedState,
    StepOutput,
    TheoryConstants,
    all_presets,
    bound_report,
    diameter_constant,
    estimate_fstar,
    estimator_name,
    eval_alpha,
    eval_beta,
    fit_rate_exponent,
    init,
    make_adversarial_online,
    make_logistic_from_data,
    make_noisy_logistic,
    make_nonconvex_wells,
    make_stochastic_quadratic,
    parse_problem_spec,
    project,
    project_ball_weighted,
    project_box,
    regret,
    resolve_preset,
    run,
    stationarity_gap,
    step,
    suboptimality,
    theorem1_bound,
    theorem3_bound,
    theorem3_bound_terms,
)

__version__ = "0.1.0"
