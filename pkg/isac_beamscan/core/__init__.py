"""Event pipeline the experiments run on.

Types:
    Event: Immutable, validated message with UUID, timestamp, type and payload.
    Stage: Abstract base class for handlers.
    Pipeline: Dispatcher routing events from a backend to stages.
    PipelineStats: Counters from one run.

Failure handling:
    StageFailedError: Raised for the first stage exception; the run stops there.
    MaxStepsExceeded: Raised when a run does not terminate within ``max_steps``.
"""

from isac_beamscan.core.event import MAX_PAYLOAD_SIZE, Event
from isac_beamscan.core.pipeline import (
    MaxStepsExceeded,
    Pipeline,
    PipelineStats,
    StageFailedError,
)
from isac_beamscan.core.stage import Stage

__all__ = [
    "Event",
    "MAX_PAYLOAD_SIZE",
    "MaxStepsExceeded",
    "Pipeline",
    "PipelineStats",
    "Stage",
    "StageFailedError",
]
