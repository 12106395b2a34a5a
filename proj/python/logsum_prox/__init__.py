"""Exact proximity operator of the log-sum penalty.

Thin Python front end over the C++ core. Vectors are 1-D float arrays and
matrices 2-D float arrays; everything else mirrors the C++ API.
"""

from ._core import (
    ConvergenceError,
    DomainError,
    FailureCase,
    FailureReport,
    Interval,
    IrlTrace,
    LimitClass,
    LimitPrediction,
    MatrixProxResult,
    PreconditionError,
    ProxKind,
    ProxParams,
    ProxResult,
    Regime,
    RegimeError,
    StopReason,
    SvdFactorization,
    VectorProxResult,
    ZStarResult,
    failure_intervals,
    gap_r,
    irl1_predict_limit,
    irl1_simulate,
    irl1_step,
    logdet_penalty,
    prox_matrix,
    prox_scalar,
    prox_sweep,
    prox_vector,
    q_objective,
    r1,
    r1_inverse,
    r2,
    svd,
    z_star,
)

__all__ = [name for name in dir() if not name.startswith("_")]
