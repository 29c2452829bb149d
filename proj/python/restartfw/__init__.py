"""Restarted away-step Frank-Wolfe solvers (C++ core)."""

from ._core import (
    Dataset,
    DivergedError,
    DomainError,
    FeasibleRegion,
    Objective,
    ParseError,
    RunLog,
    UnsupportedError,
    Vertex,
    check_rates,
    compare,
    compute_gaps,
    fit_rate,
    generate_synthetic,
    lmo,
    load_csv,
    one_shot_large_gamma,
    random_extreme_point,
    recurrence_check,
    restart_fractional_fw,
    scheduled_restarts,
    solve,
    theoretical_bound,
    vanilla_fw,
)

__all__ = [name for name in dir() if not name.startswith("_")]
