"""Pipeline stages of an experiment run."""

from isac_beamscan.experiments.stages.evaluate_point import EvaluatePoint
from isac_beamscan.experiments.stages.plan_sweep import PlanSweep
from isac_beamscan.experiments.stages.write_rows import WriteRows

__all__ = ["EvaluatePoint", "PlanSweep", "WriteRows"]
