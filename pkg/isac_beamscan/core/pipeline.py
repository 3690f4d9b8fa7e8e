"""Event dispatcher that drives an experiment through its stages.

The pipeline:
- pulls events from a backend,
- routes each one to the stages listening for its type, in registration order,
- enqueues whatever the stages return.

The pipeline keeps no queue of its own; storage is entirely the backend's.
"""

import asyncio
import inspect
from dataclasses import dataclass
from typing import TYPE_CHECKING

from isac_beamscan.core.event import Event
from isac_beamscan.core.logging import configure_pipeline_logger
from isac_beamscan.core.stage import Stage
from isac_beamscan.errors import IsacError

if TYPE_CHECKING:
    from isac_beamscan.backends.base import Backend


class StageFailedError(IsacError):
    """A stage raised, which aborts the run.

    Attributes:
        stage: Name of the failing stage.
        event_type: Type of the event being handled.
        original: The exception the stage raised.
    """

    def __init__(self, stage: str, event_type: str, original: Exception) -> None:
        self.stage = stage
        self.event_type = event_type
        self.original = original
        super().__init__(f"stage {stage} failed on {event_type}")

    def __str__(self) -> str:
        return f"{super().__str__()}: {type(self.original).__name__}: {self.original}"


class MaxStepsExceeded(IsacError):
    """The run processed ``max_steps`` events without being stopped."""


@dataclass
class PipelineStats:
    """Counters from one pipeline run."""

    events_processed: int = 0
    events_emitted: int = 0


class Pipeline:
    """Central event dispatcher.

    Args:
        stages: Handlers, consulted in this order for every event.
        backend: Queue the events live in.
        max_steps: Events processed before the run is declared runaway.
        handler_timeout: Seconds an async handler may take.
        pull_timeout: Seconds one backend pull waits.
    """

    def __init__(
        self,
        stages: list[Stage],
        backend: "Backend",
        max_steps: int = 10_000,
        handler_timeout: float = 3600.0,
        pull_timeout: float = 1.0,
    ) -> None:
        self.stages = stages
        self.backend = backend
        self.max_steps = max_steps
        self.handler_timeout = handler_timeout
        self.pull_timeout = pull_timeout
        self._log = configure_pipeline_logger()
        self._running = False
        self._stats = PipelineStats()

        self._validate_stages()

    def _validate_stages(self) -> None:
        for stage in self.stages:
            if not isinstance(stage.listens_to, list):
                raise TypeError(
                    f"{stage.name}.listens_to must be a list[str], "
                    f"got {type(stage.listens_to).__name__}"
                )
            for item in stage.listens_to:
                if not isinstance(item, str):
                    raise TypeError(
                        f"{stage.name}.listens_to must contain only strings, "
                        f"found {type(item).__name__}: {item!r}"
                    )

    async def _invoke_handler(self, stage: Stage, event: Event) -> list[Event]:
        """Run one handler with the timeout and normalise its result to a list."""
        result = stage.handle(event)
        if inspect.isawaitable(result):
            try:
                result = await asyncio.wait_for(result, timeout=self.handler_timeout)
            except TimeoutError:
                raise TimeoutError(f"Stage {stage.name} timed out after {self.handler_timeout}s")

        if result is None:
            return []
        if isinstance(result, Event):
            return [result]
        if isinstance(result, list):
            for i, item in enumerate(result):
                if not isinstance(item, Event):
                    raise TypeError(
                        f"Stage {stage.name} returned list with non-Event at index {i}: "
                        f"got {type(item).__name__}"
                    )
            return result
        raise TypeError(
            f"Stage {stage.name} must return Event, list[Event], or None, "
            f"got {type(result).__name__}"
        )

    def stop(self) -> None:
        """Finish the event being handled, then return from :meth:`run`."""
        self._running = False

    def get_stats(self) -> PipelineStats:
        """Snapshot of the counters, safe to keep after the run continues."""
        return PipelineStats(
            events_processed=self._stats.events_processed,
            events_emitted=self._stats.events_emitted,
        )

    async def _dispatch(self, stage: Stage, event: Event) -> None:
        self._log.debug(
            f"Dispatching {event.event_type} to {stage.name}",
            extra={"event_id": event.id, "event_type": event.event_type, "stage": stage.name},
        )
        emitted = await self._invoke_handler(stage, event)
        for new_event in emitted:
            await self.backend.enqueue(new_event)
            self._stats.events_emitted += 1
        if emitted:
            self._log.debug(
                f"Stage {stage.name} emitted events",
                extra={
                    "event_id": event.id,
                    "event_type": event.event_type,
                    "stage": stage.name,
                    "emitted": [e.event_type for e in emitted],
                },
            )

    async def run(self, start_event: Event | None = None) -> PipelineStats:
        """Process events until a stage calls :meth:`stop` or a pull finds the queue empty.

        Only stages produce events, so an empty queue after ``pull_timeout`` means
        the run has nothing left to do.

        Raises:
            StageFailedError: For the first stage exception; later stages skip the event.
            MaxStepsExceeded: If ``max_steps`` events were processed.
        """
        self._stats = PipelineStats()
        self._running = True

        if start_event is not None:
            await self.backend.enqueue(start_event)

        while self._running:
            if self._stats.events_processed >= self.max_steps:
                raise MaxStepsExceeded(f"max steps exceeded ({self.max_steps})")

            event = await self.backend.pull(timeout=self.pull_timeout)
            if event is None:
                break

            self._stats.events_processed += 1

            for stage in self.stages:
                if not stage.accepts(event):
                    continue
                try:
                    await self._dispatch(stage, event)
                except Exception as e:
                    self._log.error(
                        f"Stage {stage.name} raised exception: {e}",
                        extra={
                            "event_id": event.id,
                            "event_type": event.event_type,
                            "stage": stage.name,
                            "error": str(e),
                        },
                    )
                    self._running = False
                    raise StageFailedError(stage.name, event.event_type, e) from e

            await self.backend.ack(event)

        return self._stats
