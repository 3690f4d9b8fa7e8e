"""In-memory FIFO backend on asyncio.Queue."""

import asyncio

from isac_beamscan.core.event import Event


class InMemoryBackend:
    """Unbounded async FIFO queue living in the running process.

    A sweep enqueues all of its POINT_READY events at once, so ``peak`` is
    roughly the number of sweep points.
    """

    def __init__(self) -> None:
        self._queue: asyncio.Queue[Event] = asyncio.Queue()
        self._acked = 0
        self._peak = 0

    async def enqueue(self, event: Event) -> None:
        self._queue.put_nowait(event)
        self._peak = max(self._peak, self._queue.qsize())

    async def pull(self, timeout: float = 1.0) -> Event | None:
        try:
            return await asyncio.wait_for(self._queue.get(), timeout)
        except TimeoutError:
            return None

    async def ack(self, event: Event) -> None:
        self._acked += 1

    @property
    def acked(self) -> int:
        """Events acknowledged so far."""
        return self._acked

    @property
    def peak(self) -> int:
        """Largest queue length seen."""
        return self._peak

    def qsize(self) -> int:
        return self._queue.qsize()
