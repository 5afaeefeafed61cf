"""Function recovery from point samples by basis pursuit denoising."""

from ._core import (
    Expansion,
    FunctionClass,
    IndexSet,
    L1sError,
    RecoveryConfig,
    RecoveryResult,
    System,
    Theorem,
    Tolerances,
    bpdn_orthonormal_oracle,
    choose_eta,
    draw_recovery_points,
    fit_loglog_slope,
    l2_error,
    pietsch_geometric,
    pietsch_power,
    predicted_rate,
    random_unit_function,
    rate_transfer,
    recover,
    run_rate_experiment,
    sample_count,
    search_set,
    sigma_s_l1,
    solve_bpdn,
)

__all__ = [name for name in dir() if not name.startswith("_")]
