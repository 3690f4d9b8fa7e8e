"""Echo simulation, angle MLE, Monte Carlo RMSE and Cramér-Rao bounds."""

from isac_beamscan.sensing.crb import (
    CrbMethod,
    CrbResult,
    FisherMatrix,
    UMatrix,
    crb_closed_form,
    crb_general,
    crb_general_from_config,
    crb_simplified,
    crb_trace_form,
    fisher_matrix,
    u_matrix,
)
from isac_beamscan.sensing.echo import EchoBlock, probing_matrix, simulate_echo_scan
from isac_beamscan.sensing.estimator import (
    AngleEstimator,
    EstimationResult,
    estimate_angle,
    mle_objective,
)
from isac_beamscan.sensing.montecarlo import MonteCarloResult, run_monte_carlo_rmse

__all__ = [
    "AngleEstimator",
    "CrbMethod",
    "CrbResult",
    "EchoBlock",
    "EstimationResult",
    "FisherMatrix",
    "MonteCarloResult",
    "UMatrix",
    "crb_closed_form",
    "crb_general",
    "crb_general_from_config",
    "crb_simplified",
    "crb_trace_form",
    "estimate_angle",
    "fisher_matrix",
    "mle_objective",
    "probing_matrix",
    "run_monte_carlo_rmse",
    "simulate_echo_scan",
    "u_matrix",
]
