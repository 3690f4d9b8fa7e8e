"""Result CSVs and the run manifest."""

import csv
import hashlib
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import IO

from isac_beamscan.config.system import SystemConfig

MANIFEST_NAME = "run_manifest.txt"


def content_hash(text: str) -> str:
    """Git blob hash of ``text`` (SHA-1 over ``blob <len>\\0<bytes>``)."""
    data = text.encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def format_value(value: float | int | str) -> str:
    """Integers verbatim, floats with 12 significant digits, independent of locale."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def header_comment(figure: str, spec_hash: str, version: str, cfg: SystemConfig) -> str:
    """Single ``#`` line carrying the figure, spec hash and the full resolved scenario."""
    config = "; ".join(line for line in cfg.to_document().splitlines() if line)
    return f"# isac-beamscan {version} figure={figure} spec_hash={spec_hash} config: {config}"


class ResultWriter:
    """Row-at-a-time CSV writer that flushes after every line.

    Rows that are cut short by a crash stay on disk up to the last completed
    point.
    """

    def __init__(self, path: Path, columns: Sequence[str], comment: str) -> None:
        self.path = path
        self.columns = tuple(columns)
        self.rows_written = 0
        self.skipped = 0
        self._fh: IO[str] = open(path, "w", newline="", encoding="utf-8")
        self._csv = csv.writer(self._fh, lineterminator="\n")
        self._fh.write(comment + "\n")
        self._csv.writerow(self.columns)
        self._fh.flush()

    def write_row(self, row: Mapping[str, float | int]) -> None:
        self._csv.writerow([format_value(row[c]) for c in self.columns])
        self._fh.flush()
        self.rows_written += 1

    def write_skip(self, coords: Mapping[str, float | int], reason: str) -> None:
        """Record a skipped point as a ``#`` comment line."""
        where = " ".join(f"{k}={format_value(v)}" for k, v in coords.items())
        self._fh.write(f"# skipped {where}: {reason}\n")
        self._fh.flush()
        self.skipped += 1

    def close(self) -> None:
        if not self._fh.closed:
            self._fh.close()


@dataclass(frozen=True)
class RunManifest:
    """Flat record of one run, written next to its CSV."""

    figure: str
    csv_file: str
    spec_hash: str
    seed: int
    trials: int
    workers: int
    grid_points: int
    rows_written: int
    points_skipped: int
    events_processed: int
    events_emitted: int
    queue_peak: int
    elapsed_seconds: float
    version: str

    def to_text(self) -> str:
        return "".join(f"{name} = {format_value(value)}\n" for name, value in vars(self).items())

    def write(self, output_dir: Path) -> Path:
        path = output_dir / MANIFEST_NAME
        path.write_text(self.to_text(), encoding="utf-8")
        return path


def read_manifest(path: Path) -> dict[str, str]:
    """Parse a manifest back into raw ``name -> value`` strings."""
    entries = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        name, _, value = line.partition("=")
        entries[name.strip()] = value.strip()
    return entries
