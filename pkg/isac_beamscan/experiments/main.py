"""Experiment runner: wires the stages into a pipeline and runs one figure.

The event chain flows as:

    SWEEP_REQUESTED -> POINT_READY x n -> POINT_EVALUATED | POINT_SKIPPED -> SWEEP_COMPLETE

Each run leaves ``<figure>.csv`` and ``run_manifest.txt`` in the output directory.
"""

import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from isac_beamscan import __version__
from isac_beamscan.backends.inmemory import InMemoryBackend
from isac_beamscan.config.system import SystemConfig
from isac_beamscan.core.event import Event
from isac_beamscan.core.pipeline import Pipeline, PipelineStats
from isac_beamscan.errors import ConfigError
from isac_beamscan.experiments.events import SWEEP_REQUESTED
from isac_beamscan.experiments.figures import (
    FIGURE_COLUMNS,
    EvaluationContext,
    plan_points,
    point_evaluator,
)
from isac_beamscan.experiments.records import (
    ResultWriter,
    RunManifest,
    content_hash,
    header_comment,
)
from isac_beamscan.experiments.spec import ExperimentSpec, Figure
from isac_beamscan.experiments.stages import EvaluatePoint, PlanSweep, WriteRows

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunResult:
    """Where a run put its outputs and how it went."""

    csv_path: Path
    manifest_path: Path
    manifest: RunManifest
    stats: PipelineStats


def csv_name(spec: ExperimentSpec) -> str:
    if spec.figure is Figure.SWEEP:
        assert spec.sweep is not None
        return f"sweep_{spec.sweep.key}.csv"
    return f"{spec.figure.value}.csv"


def _prepare_output(output_dir: Path) -> None:
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError("--out", f"cannot create {output_dir}: {e}") from e


async def run_experiment(
    spec: ExperimentSpec,
    cfg: SystemConfig | None = None,
    executor: Executor | None = None,
) -> RunResult:
    """Run ``spec`` end to end.

    Args:
        spec: The run to perform.
        cfg: Resolved scenario; resolved from ``spec`` when omitted.
        executor: Pool for Monte Carlo batches; one is created when ``spec.workers > 1``.

    Raises:
        ConfigError: The scenario or output directory is unusable.
        StageFailedError: A stage failed with an unexpected error.
    """
    cfg = spec.resolve_config() if cfg is None else cfg
    _prepare_output(spec.output_dir)
    spec_hash = content_hash(spec.to_document(cfg))
    csv_path = spec.output_dir / csv_name(spec)
    n_points = len(plan_points(spec, cfg))

    owned_pool = None
    if executor is None and spec.workers > 1:
        executor = owned_pool = ProcessPoolExecutor(max_workers=spec.workers)

    writer = ResultWriter(
        csv_path,
        FIGURE_COLUMNS[spec.figure],
        header_comment(spec.figure.value, spec_hash, __version__, cfg),
    )
    pipeline: Pipeline | None = None

    def stop_pipeline() -> None:
        if pipeline is not None:
            pipeline.stop()

    ctx = EvaluationContext(
        cfg=cfg, grid_points=spec.grid_points, workers=spec.workers, executor=executor
    )
    stages = [
        PlanSweep(spec, cfg),
        EvaluatePoint(point_evaluator(spec), ctx),
        WriteRows(writer, on_complete=stop_pipeline),
    ]
    backend = InMemoryBackend()
    pipeline = Pipeline(
        stages=stages,
        backend=backend,
        max_steps=4 * n_points + 8,
    )

    logger.info(
        "Experiment started",
        extra={"figure": spec.figure.value, "points": n_points, "workers": spec.workers},
    )
    started = time.perf_counter()
    try:
        stats = await pipeline.run(
            Event(event_type=SWEEP_REQUESTED, payload={"figure": spec.figure.value})
        )
    finally:
        writer.close()
        if owned_pool is not None:
            owned_pool.shutdown()
    elapsed = time.perf_counter() - started

    manifest = RunManifest(
        figure=spec.figure.value,
        csv_file=csv_path.name,
        spec_hash=spec_hash,
        seed=cfg.rng_seed,
        trials=cfg.mc_trials,
        workers=spec.workers,
        grid_points=spec.grid_points,
        rows_written=writer.rows_written,
        points_skipped=writer.skipped,
        events_processed=stats.events_processed,
        events_emitted=stats.events_emitted,
        queue_peak=backend.peak,
        elapsed_seconds=round(elapsed, 3),
        version=__version__,
    )
    manifest_path = manifest.write(spec.output_dir)
    logger.info(
        "Experiment finished",
        extra={"figure": spec.figure.value, "rows": writer.rows_written, "elapsed_s": elapsed},
    )
    return RunResult(csv_path, manifest_path, manifest, stats)


def _with_figure(spec: ExperimentSpec, figure: Figure) -> ExperimentSpec:
    return ExperimentSpec.model_validate({**spec.model_dump(), "figure": figure})


async def run_fig3(spec: ExperimentSpec) -> RunResult:
    """RMSE and RCRB versus transmit power."""
    return await run_experiment(_with_figure(spec, Figure.FIG3))


async def run_fig4(spec: ExperimentSpec) -> RunResult:
    """Rates and RCRB versus beam scanning time."""
    return await run_experiment(_with_figure(spec, Figure.FIG4))


async def run_fig5(spec: ExperimentSpec) -> RunResult:
    """STAS and OTAS rates versus RCRB."""
    return await run_experiment(_with_figure(spec, Figure.FIG5))


async def run_custom_sweep(spec: ExperimentSpec) -> RunResult:
    """Every metric along one config axis."""
    return await run_experiment(_with_figure(spec, Figure.SWEEP))
