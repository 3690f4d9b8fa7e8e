"""Sweep points and per-point metrics of every experiment.

A point is a small dict of coordinates; evaluating it yields one CSV row as a
dict of column -> value. Both are JSON-safe so they travel in pipeline events.
"""

import math
from collections.abc import Callable
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any

from isac_beamscan.config.parser import apply_overrides
from isac_beamscan.config.system import SystemConfig
from isac_beamscan.config.units import dbm_to_watts
from isac_beamscan.experiments.spec import ExperimentSpec, Figure
from isac_beamscan.model.channel import build_channels
from isac_beamscan.model.noise import Phase, trial_rng
from isac_beamscan.sensing.crb import crb_simplified
from isac_beamscan.sensing.estimator import DEFAULT_GRID_POINTS
from isac_beamscan.sensing.montecarlo import run_monte_carlo_rmse
from isac_beamscan.training.codebook import dft_codebook
from isac_beamscan.training.rates import average_rate_over_delta, scan_rate, stas_rate
from isac_beamscan.training.scan import simulate_user_scan

Coords = dict[str, Any]
Row = dict[str, float | int]

TX_POWER_GRID_DBM = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)

FIG3_COLUMNS = ("pt_dbm", "theta_deg", "rmse_rad", "rcrb_rad", "trials")
FIG4_COLUMNS = ("tau_symbols", "rate_delta0", "rate_deltamax", "rate_avg", "rcrb_rad")
FIG5_COLUMNS = ("rcrb_rad", "rate_stas_avg", "rate_otas_avg")
SWEEP_COLUMNS = (
    "sweep_value",
    "rmse_rad",
    "rcrb_rad",
    "rcrb_deg",
    "rate_bpshz_delta0",
    "rate_bpshz_deltamax",
    "rate_bpshz_avg",
    "rate_otas_bpshz",
    "rate_bpshz_scan",
    "trials",
)


@dataclass(frozen=True)
class EvaluationContext:
    """Everything a point evaluation needs besides its coordinates."""

    cfg: SystemConfig
    grid_points: int = DEFAULT_GRID_POINTS
    workers: int = 1
    executor: Executor | None = None


def plan_points(spec: ExperimentSpec, cfg: SystemConfig) -> list[Coords]:
    """Coordinates of every sweep point, in output order."""
    if spec.figure is Figure.FIG3:
        thetas = spec.theta_set_deg or (math.degrees(cfg.theta_it),)
        return [{"pt_dbm": pt, "theta_deg": th} for th in thetas for pt in TX_POWER_GRID_DBM]
    if spec.figure in (Figure.FIG4, Figure.FIG5):
        sizes = dict.fromkeys(round(cfg.n_res * k) for k in spec.scan_multiples)
        return [{"codebook_size": n_beams} for n_beams in sizes]
    assert spec.sweep is not None
    return [{"sweep_value": v} for v in spec.sweep.values()]


def evaluate_fig3(ctx: EvaluationContext, coords: Coords) -> Row:
    """Monte Carlo RMSE and RCRB at one (transmit power, target angle) point."""
    theta = math.radians(coords["theta_deg"])
    cfg = ctx.cfg.replace(tx_power=dbm_to_watts(coords["pt_dbm"]), theta_it=theta)
    mc = run_monte_carlo_rmse(
        cfg, workers=ctx.workers, executor=ctx.executor, grid_points=ctx.grid_points
    )
    return {
        "pt_dbm": coords["pt_dbm"],
        "theta_deg": coords["theta_deg"],
        "rmse_rad": mc.rmse,
        "rcrb_rad": crb_simplified(cfg, theta).rcrb,
        "trials": mc.trials,
    }


def evaluate_fig4(ctx: EvaluationContext, coords: Coords) -> Row:
    """Rates at both misalignment extremes, delta-averaged rate and RCRB for one sweep length."""
    cfg, n_beams = ctx.cfg, coords["codebook_size"]
    tau = cfg.symbols_per_beam * n_beams
    return {
        "tau_symbols": tau,
        "rate_delta0": stas_rate(cfg, 0.0, tau),
        "rate_deltamax": stas_rate(cfg, 1.0 / n_beams, tau),
        "rate_avg": average_rate_over_delta(cfg, n_beams),
        "rcrb_rad": crb_simplified(cfg, cfg.theta_it, codebook_size=n_beams).rcrb,
    }


def evaluate_fig5(ctx: EvaluationContext, coords: Coords) -> Row:
    """STAS against OTAS with a sensing scan as long as the training scan.

    Raises:
        DurationOverflow: If both scans do not fit in the coherence time.
    """
    cfg, n_beams = ctx.cfg, coords["codebook_size"]
    tau = cfg.symbols_per_beam * n_beams
    return {
        "rcrb_rad": crb_simplified(cfg, cfg.theta_it, codebook_size=n_beams).rcrb,
        "rate_stas_avg": average_rate_over_delta(cfg, n_beams),
        "rate_otas_avg": average_rate_over_delta(cfg, n_beams, tau_s=tau),
    }


def sweep_point_config(ctx: EvaluationContext, spec: ExperimentSpec, value: float) -> SystemConfig:
    assert spec.sweep is not None
    return apply_overrides(ctx.cfg, [spec.sweep.override(value)])


def evaluate_all_metrics(cfg: SystemConfig, ctx: EvaluationContext) -> Row:
    """Every metric the simulator produces for one scenario."""
    n_beams, tau = cfg.codebook_size, cfg.scan_time
    rcrb = crb_simplified(cfg, cfg.theta_it)
    mc = run_monte_carlo_rmse(
        cfg, workers=ctx.workers, executor=ctx.executor, grid_points=ctx.grid_points
    )
    observation = simulate_user_scan(
        build_channels(cfg),
        dft_codebook(cfg.n_res, n_beams),
        cfg,
        trial_rng(cfg.rng_seed, 0, Phase.USER_SCAN),
    )
    return {
        "rmse_rad": mc.rmse,
        "rcrb_rad": rcrb.rcrb,
        "rcrb_deg": rcrb.rcrb_deg,
        "rate_bpshz_delta0": stas_rate(cfg, 0.0, tau),
        "rate_bpshz_deltamax": stas_rate(cfg, 1.0 / n_beams, tau),
        "rate_bpshz_avg": average_rate_over_delta(cfg, n_beams),
        "rate_otas_bpshz": average_rate_over_delta(cfg, n_beams, tau_s=cfg.sense_time),
        "rate_bpshz_scan": scan_rate(cfg, observation, tau),
        "trials": mc.trials,
    }


FIGURE_COLUMNS: dict[Figure, tuple[str, ...]] = {
    Figure.FIG3: FIG3_COLUMNS,
    Figure.FIG4: FIG4_COLUMNS,
    Figure.FIG5: FIG5_COLUMNS,
    Figure.SWEEP: SWEEP_COLUMNS,
}


def point_evaluator(spec: ExperimentSpec) -> Callable[[EvaluationContext, Coords], Row]:
    """The evaluation function of ``spec``'s figure."""
    if spec.figure is Figure.FIG3:
        return evaluate_fig3
    if spec.figure is Figure.FIG4:
        return evaluate_fig4
    if spec.figure is Figure.FIG5:
        return evaluate_fig5

    def evaluate_sweep(ctx: EvaluationContext, coords: Coords) -> Row:
        cfg = sweep_point_config(ctx, spec, coords["sweep_value"])
        return {"sweep_value": coords["sweep_value"], **evaluate_all_metrics(cfg, ctx)}

    return evaluate_sweep
