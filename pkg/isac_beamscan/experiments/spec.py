"""What an experiment run is asked to do: figure, scenario, sweep axis, execution knobs."""

import math
from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from isac_beamscan.config.keys import FILE_KEYS
from isac_beamscan.config.parser import apply_overrides, load_config, split_override
from isac_beamscan.config.system import SystemConfig
from isac_beamscan.errors import InvalidValue, UnknownSweepKey
from isac_beamscan.sensing.estimator import DEFAULT_GRID_POINTS

# Codebook sizes of the scan-time experiments, as multiples of the reflecting array size M
SCAN_MULTIPLES = (1.0, 2.0, 4.0, 8.0)


class Figure(Enum):
    FIG3 = "fig3"
    FIG4 = "fig4"
    FIG5 = "fig5"
    SWEEP = "sweep"


class SweepScale(Enum):
    LINEAR = "linear"
    LOG = "log"
    DOUBLING = "doubling"


class SweepAxis(BaseModel):
    """One-dimensional sweep over a config key, in the key's file units.

    ``doubling`` produces ``start * 2**i`` for ``points`` values and requires
    ``stop`` to be the last of them.
    """

    key: str
    start: float
    stop: float
    points: int = Field(ge=1)
    scale: SweepScale = SweepScale.LINEAR

    model_config = {
        "extra": "forbid",
        "frozen": True,
    }

    @field_validator("key")
    @classmethod
    def validate_key(cls, v: str) -> str:
        if v not in FILE_KEYS:
            raise UnknownSweepKey(v, "not a config key")
        return v

    @model_validator(mode="after")
    def check_range(self) -> "SweepAxis":
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidValue("--sweep", "start and stop must be finite")
        if self.scale is not SweepScale.LINEAR and (self.start <= 0 or self.stop <= 0):
            raise InvalidValue("--sweep", f"{self.scale.value} scale needs positive bounds")
        if self.scale is SweepScale.DOUBLING:
            last = self.start * 2 ** (self.points - 1)
            if not math.isclose(last, self.stop, rel_tol=1e-9):
                raise InvalidValue(
                    "--sweep", f"doubling from {self.start:g} in {self.points} points ends at "
                    f"{last:g}, not {self.stop:g}"
                )
        if FILE_KEYS[self.key].integer:
            for value in self._raw_values():
                if not float(value).is_integer():
                    raise InvalidValue(self.key, f"sweep value {value:g} is not an integer")
        return self

    def _raw_values(self) -> list[float]:
        if self.points == 1:
            return [self.start]
        if self.scale is SweepScale.LINEAR:
            return np.linspace(self.start, self.stop, self.points).tolist()
        if self.scale is SweepScale.LOG:
            return np.geomspace(self.start, self.stop, self.points).tolist()
        return [self.start * 2**i for i in range(self.points)]

    def values(self) -> list[float | int]:
        """Sweep values in order; integers for integer keys."""
        raw = self._raw_values()
        if FILE_KEYS[self.key].integer:
            return [int(v) for v in raw]
        return raw

    def override(self, value: float | int) -> str:
        """``key=value`` override placing the scenario at one sweep value."""
        return f"{self.key}={value!r}"

    def to_text(self) -> str:
        return f"{self.key}:{self.start!r}:{self.stop!r}:{self.points}:{self.scale.value}"


def parse_sweep(text: str) -> SweepAxis:
    """Parse ``key:start:stop:points[:scale]``.

    Raises:
        UnknownSweepKey: The key is not a config key.
        InvalidValue: The axis is malformed.
    """
    parts = [p.strip() for p in text.split(":")]
    if len(parts) not in (4, 5):
        raise InvalidValue("--sweep", f"expected key:start:stop:points[:scale], got {text!r}")
    key = parts[0]
    if key not in FILE_KEYS:
        raise UnknownSweepKey(key, "not a config key")
    try:
        start, stop = float(parts[1]), float(parts[2])
        points = int(parts[3])
        scale = SweepScale(parts[4]) if len(parts) == 5 else SweepScale.LINEAR
    except ValueError as e:
        raise InvalidValue("--sweep", f"{text!r}: {e}") from None
    if points < 1:
        raise InvalidValue("--sweep", f"points must be >= 1, got {points}")
    return SweepAxis(key=key, start=start, stop=stop, points=points, scale=scale)


def parse_theta_set(text: str) -> tuple[float, ...]:
    """Parse ``deg,deg,...`` into target angles in degrees."""
    try:
        values = tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise InvalidValue("--theta-set", f"expected comma-separated degrees, got {text!r}")
    if not values:
        raise InvalidValue("--theta-set", "no angles given")
    return values


class ExperimentSpec(BaseModel):
    """A fully specified experiment run.

    Attributes:
        figure: Which experiment to run.
        output_dir: Directory receiving the CSV and the run manifest.
        config_path: Scenario file; ``None`` uses the packaged reference scenario.
        workers: Monte Carlo worker processes.
        trials: Monte Carlo trials; ``None`` keeps the scenario's ``mc_trials``.
        seed: Noise seed; ``None`` keeps the scenario's ``rng_seed``.
        overrides: ``key=value`` scenario overrides, applied in order.
        theta_set_deg: Target angles of the transmit-power experiment; empty uses the scenario's.
        sweep: Axis of the custom sweep.
        grid_points: Coarse MLE grid size.
        scan_multiples: Codebook sizes of the scan-time experiments, in units of M.
    """

    figure: Figure
    output_dir: Path
    config_path: Path | None = None
    workers: int = Field(default=1, ge=1)
    trials: int | None = Field(default=None, ge=1)
    seed: int | None = Field(default=None, ge=0, le=2**64 - 1)
    overrides: tuple[str, ...] = ()
    theta_set_deg: tuple[float, ...] = ()
    sweep: SweepAxis | None = None
    grid_points: int = Field(default=DEFAULT_GRID_POINTS, ge=3)
    scan_multiples: tuple[float, ...] = SCAN_MULTIPLES

    model_config = {
        "extra": "forbid",
        "frozen": True,
    }

    @field_validator("overrides")
    @classmethod
    def validate_overrides(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        for item in v:
            split_override(item)
        return v

    @field_validator("theta_set_deg")
    @classmethod
    def validate_theta_set(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        for theta in v:
            if not math.isfinite(theta) or abs(theta) >= 90.0:
                raise InvalidValue("--theta-set", f"angle must lie in (-90, 90), got {theta:g}")
        return v

    @field_validator("scan_multiples")
    @classmethod
    def validate_scan_multiples(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if not v:
            raise InvalidValue("--scan-multiples", "no codebook sizes given")
        for m in v:
            if not math.isfinite(m) or m < 1.0:
                raise InvalidValue("--scan-multiples", f"multiples must be >= 1, got {m:g}")
        return v

    @model_validator(mode="after")
    def check_sweep(self) -> "ExperimentSpec":
        if self.figure is Figure.SWEEP and self.sweep is None:
            raise InvalidValue("--sweep", "the sweep experiment needs a sweep axis")
        return self

    def resolve_config(self) -> SystemConfig:
        """Load the scenario and apply overrides, seed and trial count."""
        cfg = apply_overrides(load_config(self.config_path), self.overrides)
        fields: dict[str, int] = {}
        if self.seed is not None:
            fields["rng_seed"] = self.seed
        if self.trials is not None:
            fields["mc_trials"] = self.trials
        return cfg.replace(**fields) if fields else cfg

    def to_document(self, cfg: SystemConfig) -> str:
        """Canonical text of everything that determines the results (not workers or paths)."""
        lines = [
            f"figure = {self.figure.value}",
            f"grid_points = {self.grid_points}",
            f"theta_set_deg = {','.join(repr(t) for t in self.theta_set_deg)}",
            f"sweep = {self.sweep.to_text() if self.sweep else ''}",
            f"scan_multiples = {','.join(repr(m) for m in self.scan_multiples)}",
        ]
        return "\n".join(lines) + "\n" + cfg.to_document()


def parse_multiples(text: str) -> tuple[float, ...]:
    """Parse ``m,m,...`` codebook-size multiples."""
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise InvalidValue("--scan-multiples", f"expected comma-separated numbers, got {text!r}")
