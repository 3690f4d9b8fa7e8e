"""Stage base class for experiment pipeline handlers."""

from abc import ABC, abstractmethod
from collections.abc import Awaitable
from typing import ClassVar

from isac_beamscan.core.event import Event

StageResult = Event | list[Event] | None


class Stage(ABC):
    """One step of an experiment pipeline (plan, evaluate or write).

    A stage declares the event types it consumes in ``listens_to`` and returns
    the events it produces. The pipeline validates ``listens_to`` on
    registration and routes by :meth:`accepts`.
    """

    listens_to: ClassVar[list[str]] = []

    def __init__(self, name: str | None = None) -> None:
        self.name = name or self.__class__.__name__

    def accepts(self, event: Event) -> bool:
        return event.event_type in self.listens_to

    @abstractmethod
    def handle(self, event: Event) -> StageResult | Awaitable[StageResult]:
        """Process ``event``; sync or async, returning zero or more follow-up events."""
        ...

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r}, listens_to={self.listens_to!r})"
