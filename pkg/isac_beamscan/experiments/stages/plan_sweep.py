"""PlanSweep stage: SWEEP_REQUESTED -> SWEEP_PLANNED + POINT_READY per point."""

import logging

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.core.event import Event
from isac_beamscan.core.stage import Stage
from isac_beamscan.experiments.events import POINT_READY, SWEEP_PLANNED, SWEEP_REQUESTED
from isac_beamscan.experiments.figures import plan_points
from isac_beamscan.experiments.spec import ExperimentSpec

logger = logging.getLogger(__name__)


class PlanSweep(Stage):
    """Expands a sweep request into one POINT_READY event per sweep point.

    SWEEP_PLANNED is emitted first so the writer knows how many points to
    expect before any of them completes.
    """

    listens_to = [SWEEP_REQUESTED]

    def __init__(self, spec: ExperimentSpec, cfg: SystemConfig, name: str | None = None) -> None:
        super().__init__(name)
        self.spec = spec
        self.cfg = cfg

    def handle(self, event: Event) -> list[Event]:
        points = plan_points(self.spec, self.cfg)
        logger.info(
            "Sweep planned",
            extra={"figure": self.spec.figure.value, "points": len(points)},
        )
        planned = event.follow(SWEEP_PLANNED, figure=self.spec.figure.value, points=len(points))
        return [planned] + [
            event.follow(POINT_READY, index=i, coords=coords) for i, coords in enumerate(points)
        ]
