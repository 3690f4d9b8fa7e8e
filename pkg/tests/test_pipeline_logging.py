"""Smoke tests for structured logging in the pipeline and the JSON formatter."""

import json
import logging
import sys

import pytest

from isac_beamscan.backends import InMemoryBackend
from isac_beamscan.core import Event, Pipeline, Stage
from isac_beamscan.core.logging import PIPELINE_LOGGER, JSONFormatter, get_logger


class LogCapture(logging.Handler):
    """Handler that keeps every record it sees."""

    def __init__(self):
        super().__init__()
        self.records: list[logging.LogRecord] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.records.append(record)


class EmittingStage(Stage):
    listens_to = ["SWEEP_REQUESTED"]

    async def handle(self, event: Event) -> Event:
        return event.follow("POINT_READY", index=0)


class StoppingStage(Stage):
    listens_to = ["POINT_READY"]

    def __init__(self, name: str | None = None):
        super().__init__(name)
        self.pipeline: Pipeline | None = None

    async def handle(self, event: Event) -> None:
        if self.pipeline is not None:
            self.pipeline.stop()


@pytest.fixture
def log_capture():
    """Capture DEBUG records of the pipeline logger."""
    logger = logging.getLogger(PIPELINE_LOGGER)
    handler = LogCapture()
    handler.setLevel(logging.DEBUG)
    original_handlers = logger.handlers.copy()
    original_level = logger.level

    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)

    yield handler

    logger.removeHandler(handler)
    logger.handlers = original_handlers
    logger.level = original_level


async def _run_two_stage_pipeline() -> Event:
    stopper = StoppingStage()
    pipeline = Pipeline(stages=[EmittingStage(), stopper], backend=InMemoryBackend(), max_steps=10)
    stopper.pipeline = pipeline
    start = Event(event_type="SWEEP_REQUESTED", payload={"figure": "fig4"})
    await pipeline.run(start_event=start)
    return start


@pytest.mark.asyncio
async def test_dispatch_records_carry_routing_fields(log_capture):
    """Dispatch logs SHALL carry event_id, event_type and stage."""
    start = await _run_two_stage_pipeline()

    dispatch = [r for r in log_capture.records if "Dispatching" in r.getMessage()]
    assert len(dispatch) >= 2
    first = dispatch[0]
    assert first.event_id == start.id
    assert first.event_type == "SWEEP_REQUESTED"
    assert first.stage == "EmittingStage"
    assert {r.event_type for r in dispatch} == {"SWEEP_REQUESTED", "POINT_READY"}


@pytest.mark.asyncio
async def test_emitted_events_logged(log_capture):
    """A stage returning events SHALL log their types under 'emitted'."""
    await _run_two_stage_pipeline()
    emitted = [r for r in log_capture.records if hasattr(r, "emitted")]
    assert emitted[0].emitted == ["POINT_READY"]


@pytest.mark.asyncio
async def test_json_formatter_output(log_capture):
    """Formatted records SHALL be JSON with the domain fields first."""
    await _run_two_stage_pipeline()
    record = next(r for r in log_capture.records if "Dispatching" in r.getMessage())
    log_data = json.loads(JSONFormatter().format(record))

    assert log_data["level"] == "DEBUG"
    assert log_data["logger"] == PIPELINE_LOGGER
    assert log_data["event_type"] == "SWEEP_REQUESTED"
    assert log_data["stage"] == "EmittingStage"
    assert "timestamp" in log_data
    keys = list(log_data)
    assert keys.index("event_id") < keys.index("stage")


def test_formatter_keeps_extras_and_exceptions():
    """Arbitrary extras and exception text SHALL appear in the JSON."""
    logger = logging.getLogger("isac_beamscan.test_formatter")
    record = None
    try:
        raise RuntimeError("evaluation failed")
    except RuntimeError:
        record = logger.makeRecord(
            logger.name,
            logging.WARNING,
            __file__,
            1,
            "Skipping sweep point %d",
            (3,),
            sys.exc_info(),
            extra={"figure": "fig5", "sweep_value": {"codebook_size": 512}, "rows": 2},
        )
    log_data = json.loads(JSONFormatter().format(record))
    assert log_data["message"] == "Skipping sweep point 3"
    assert log_data["figure"] == "fig5"
    assert log_data["sweep_value"] == {"codebook_size": 512}
    assert log_data["rows"] == 2
    assert "RuntimeError: evaluation failed" in log_data["exception"]


def test_get_logger_installs_one_json_handler():
    """Repeated get_logger calls SHALL not stack handlers."""
    logger = get_logger("isac_beamscan.test_handlers", logging.DEBUG)
    get_logger("isac_beamscan.test_handlers", logging.DEBUG)
    assert len(logger.handlers) == 1
    assert isinstance(logger.handlers[0].formatter, JSONFormatter)
    assert logger.level == logging.DEBUG
    assert logger.propagate is False
