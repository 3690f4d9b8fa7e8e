"""Experiment runner reproducing the sensing and rate figures as CSV artifacts."""

from isac_beamscan.experiments.main import (
    RunResult,
    run_custom_sweep,
    run_experiment,
    run_fig3,
    run_fig4,
    run_fig5,
)
from isac_beamscan.experiments.spec import ExperimentSpec, Figure, SweepAxis, SweepScale

__all__ = [
    "ExperimentSpec",
    "Figure",
    "RunResult",
    "SweepAxis",
    "SweepScale",
    "run_custom_sweep",
    "run_experiment",
    "run_fig3",
    "run_fig4",
    "run_fig5",
]
