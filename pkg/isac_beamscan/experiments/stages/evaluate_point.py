"""EvaluatePoint stage: POINT_READY -> POINT_EVALUATED | POINT_SKIPPED."""

import asyncio
import logging
from collections.abc import Callable

from isac_beamscan.core.event import Event
from isac_beamscan.core.stage import Stage
from isac_beamscan.errors import ConfigError, DurationOverflow, SingularInformation
from isac_beamscan.experiments.events import POINT_EVALUATED, POINT_READY, POINT_SKIPPED
from isac_beamscan.experiments.figures import Coords, EvaluationContext, Row

logger = logging.getLogger(__name__)

# Point-level failures that leave the rest of the sweep meaningful.
SKIPPABLE_ERRORS = (DurationOverflow, SingularInformation, ConfigError)


class EvaluatePoint(Stage):
    """Computes one CSV row off the event loop.

    The evaluation runs in a worker thread; Monte Carlo trials inside it may
    fan out further to the context's process pool. Points whose scenario is
    infeasible are reported as skipped instead of failing the run.
    """

    listens_to = [POINT_READY]

    def __init__(
        self,
        evaluate: Callable[[EvaluationContext, Coords], Row],
        ctx: EvaluationContext,
        name: str | None = None,
    ) -> None:
        super().__init__(name)
        self.evaluate = evaluate
        self.ctx = ctx

    async def handle(self, event: Event) -> Event:
        index = event.index
        coords = event.payload["coords"]
        try:
            row = await asyncio.to_thread(self.evaluate, self.ctx, coords)
        except SKIPPABLE_ERRORS as e:
            logger.warning(
                f"Skipping sweep point {index}: {e}",
                extra={"stage": self.name, "sweep_value": coords, "error": type(e).__name__},
            )
            return event.follow(
                POINT_SKIPPED, index=index, coords=coords, reason=f"{type(e).__name__}: {e}"
            )
        logger.debug("Point evaluated", extra={"stage": self.name, "sweep_value": coords})
        return event.follow(POINT_EVALUATED, index=index, row=row)
