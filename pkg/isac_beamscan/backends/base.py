"""Backend protocol for pipeline event queues."""

from typing import Protocol

from isac_beamscan.core.event import Event


class Backend(Protocol):
    """Where the pipeline stores events between stages.

    Backends own ordering: ``pull`` returns events in the order they were
    enqueued. ``ack`` marks an event as fully handled.
    """

    async def enqueue(self, event: Event) -> None: ...

    async def pull(self, timeout: float = 1.0) -> Event | None:
        """Next event, or ``None`` if nothing arrives within ``timeout`` seconds."""
        ...

    async def ack(self, event: Event) -> None: ...
