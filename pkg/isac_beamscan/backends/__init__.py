"""Queue backends for the experiment pipeline."""

from isac_beamscan.backends.base import Backend
from isac_beamscan.backends.inmemory import InMemoryBackend

__all__ = ["Backend", "InMemoryBackend"]
