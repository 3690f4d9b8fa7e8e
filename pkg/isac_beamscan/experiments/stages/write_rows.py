"""WriteRows stage: SWEEP_PLANNED, POINT_EVALUATED, POINT_SKIPPED -> CSV lines, SWEEP_COMPLETE."""

import logging
from collections.abc import Callable
from typing import Any

from isac_beamscan.core.event import Event
from isac_beamscan.core.stage import Stage
from isac_beamscan.experiments.events import (
    POINT_EVALUATED,
    POINT_SKIPPED,
    SWEEP_COMPLETE,
    SWEEP_PLANNED,
)
from isac_beamscan.experiments.records import ResultWriter

logger = logging.getLogger(__name__)


class WriteRows(Stage):
    """Terminal stage writing results in sweep order.

    Results arriving ahead of an earlier point are held back until the gap
    fills, so the CSV order never depends on evaluation order. Once every
    planned point is written or skipped the file is closed, ``on_complete`` is
    called and SWEEP_COMPLETE is emitted.
    """

    listens_to = [SWEEP_PLANNED, POINT_EVALUATED, POINT_SKIPPED]

    def __init__(
        self,
        writer: ResultWriter,
        on_complete: Callable[[], Any] | None = None,
        name: str | None = None,
    ) -> None:
        super().__init__(name)
        self.writer = writer
        self._on_complete = on_complete
        self.expected: int | None = None
        self._next = 0
        self._pending: dict[int, Event] = {}

    def handle(self, event: Event) -> Event | None:
        if event.event_type == SWEEP_PLANNED:
            self.expected = event.payload["points"]
        else:
            self._pending[event.index] = event
            while self._next in self._pending:
                self._write(self._pending.pop(self._next))
                self._next += 1

        if self.expected is None or self._next < self.expected:
            return None

        self.writer.close()
        logger.info(
            "Sweep complete",
            extra={"rows": self.writer.rows_written, "skipped": self.writer.skipped},
        )
        if self._on_complete is not None:
            try:
                self._on_complete()
            except Exception as e:
                logger.exception(f"on_complete callback failed: {e}")
                raise
        return event.follow(
            SWEEP_COMPLETE,
            csv_file=self.writer.path.name,
            rows=self.writer.rows_written,
            skipped=self.writer.skipped,
        )

    def _write(self, event: Event) -> None:
        if event.event_type == POINT_EVALUATED:
            self.writer.write_row(event.payload["row"])
        else:
            self.writer.write_skip(event.payload["coords"], event.payload["reason"])
