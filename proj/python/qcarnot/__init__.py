"""Finite-time Carnot engine with a spin working medium and tunable baths."""

import json

from ._qcarnot import (
    Bath,
    BranchKind,
    CycleBoundaries,
    DegenerateCycleError,
    DomainError,
    ELBranch,
    EmpBounds,
    EngineParams,
    InfeasibleDurationError,
    InvalidStateError,
    LowDissipationOptimum,
    NumericalError,
    QcarnotError,
    SingularityError,
    cycle_boundaries,
    duration_integral,
    effective_temperature,
    emp_bounds,
    entropy,
    gap_from_state,
    gca_efficiency,
    generalized_carnot,
    heat_quadrature,
    low_dissipation_optimum,
    master_rhs,
    pdot_branch,
    power_at,
    reconstruct_protocol,
    solve_k_for_duration,
    stationary_population,
)
from . import _qcarnot


def maximize_power(params, fit_coefficients=True):
    """Maximum-power operating point as a dict."""
    return json.loads(_qcarnot.maximize_power_json(params, fit_coefficients))


def sweep(params, t_cold, jobs=1):
    """One maximize_power per cold temperature; failed rows carry "error"."""
    return json.loads(_qcarnot.sweep_json(params, list(t_cold), jobs))


def audit_cycle(params, k_hot, k_cold, n_samples=8192):
    return json.loads(_qcarnot.audit_cycle_json(params, k_hot, k_cold, n_samples))


def quasi_static_audit(params, durations):
    return json.loads(_qcarnot.quasi_static_audit_json(params, list(durations)))
