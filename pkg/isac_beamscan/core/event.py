"""Event messages passed between experiment pipeline stages."""

import json
import uuid
from datetime import UTC, datetime
from typing import Any

from pydantic import BaseModel, Field, field_validator

# Serialized payload limit in bytes
MAX_PAYLOAD_SIZE = 1_000_000


def _payload_bytes(payload: dict[str, Any]) -> int:
    """UTF-8 size of ``payload`` as strict JSON; NaN, infinities and non-JSON types raise."""
    return len(json.dumps(payload, allow_nan=False).encode("utf-8"))


class Event(BaseModel):
    """Immutable, validated pipeline message.

    Sweep events carry their position as ``index`` and, once derived from
    another event, the parent id as ``cause`` (see :meth:`follow`).

    Attributes:
        id: Canonical lowercase UUID v4 string, generated when omitted.
        timestamp: UTC creation time, generated when omitted.
        event_type: Routing key, e.g. ``POINT_READY``.
        payload: Strict JSON object (finite numbers only, at most 1 MB serialized).
    """

    id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    timestamp: datetime = Field(default_factory=lambda: datetime.now(UTC))
    event_type: str
    payload: dict[str, Any] = Field(default_factory=dict)

    model_config = {
        "extra": "forbid",
        "frozen": True,
    }

    @field_validator("id")
    @classmethod
    def validate_id(cls, v: str) -> str:
        try:
            parsed = uuid.UUID(v)
        except ValueError:
            parsed = None
        if (
            parsed is None
            or str(parsed) != v.lower()
            or parsed.version != 4
            or parsed.variant != uuid.RFC_4122
        ):
            raise ValueError(f"id must be a canonical UUID v4 string, got: {v!r}")
        return str(parsed)

    @field_validator("event_type")
    @classmethod
    def validate_event_type(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("event_type must not be empty")
        return v

    @field_validator("payload")
    @classmethod
    def validate_payload(cls, v: dict[str, Any]) -> dict[str, Any]:
        """Metric values travelling through the pipeline must be finite JSON numbers."""
        try:
            size = _payload_bytes(v)
        except (TypeError, ValueError) as e:
            raise ValueError(f"payload must be strict JSON: {e}") from e
        if size > MAX_PAYLOAD_SIZE:
            raise ValueError(f"payload of {size} bytes exceeds the {MAX_PAYLOAD_SIZE} bytes limit")
        return v

    @property
    def index(self) -> int | None:
        """Sweep position of a point event, ``None`` for run-level events."""
        return self.payload.get("index")

    @property
    def cause(self) -> str | None:
        return self.payload.get("cause")

    def follow(self, event_type: str, **payload: Any) -> "Event":
        """New event caused by this one; the payload records ``cause`` as this event's id."""
        return Event(event_type=event_type, payload={**payload, "cause": self.id})
