"""SystemConfig: the validated, immutable description of one scenario."""

import math
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from isac_beamscan.config.keys import FIELD_TO_KEY, FILE_KEYS
from isac_beamscan.config.units import wavelength
from isac_beamscan.errors import InvariantViolation

_HALF_PI = math.pi / 2

# rng_seed feeds numpy's SeedSequence, which accepts any non-negative integer;
# the document restricts it to 64 bits.
_U64_MAX = 2**64 - 1


class SystemConfig(BaseModel):
    """All physical and protocol parameters of a scenario, in SI units.

    Instances are frozen after validation and safe to share across Monte Carlo
    workers (they pickle as plain pydantic models).

    Attributes:
        n_bs_antennas: BS antennas N.
        n_res: IRS reflecting elements M.
        n_ses: IRS sensing elements M_s.
        codebook_size: DFT codebook size L (must satisfy L >= M).
        symbols_per_beam: Symbols per scanned beam K.
        tx_power: BS transmit power P_t in watts.
        noise_power: Receiver noise power sigma^2 in watts.
        carrier_freq: Carrier frequency f_c in hertz.
        coherence_time: Coherence time T in symbols.
        otas_sense_time: Dedicated sensing scan time tau_s in symbols; ``None`` means tau_s = tau.
        d_bs_irs: BS-IRS distance in meters.
        d_irs_user: IRS-user distance in meters.
        d_irs_target: IRS-target distance in meters.
        theta_bi: AoA at the IRS from the BS, radians.
        vartheta_bi: AoD at the BS towards the IRS, radians.
        theta_it: Target angle seen from the IRS, radians.
        theta_iu: User angle seen from the IRS, radians.
        rcs: Target radar cross section kappa in square meters.
        rng_seed: Root seed of every noise stream.
        mc_trials: Monte Carlo trials per RMSE point.
    """

    n_bs_antennas: int = Field(gt=0)
    n_res: int = Field(gt=0)
    n_ses: int = Field(gt=0)
    codebook_size: int = Field(gt=0)
    symbols_per_beam: int = Field(gt=0)
    tx_power: float = Field(gt=0, allow_inf_nan=False)
    noise_power: float = Field(gt=0, allow_inf_nan=False)
    carrier_freq: float = Field(gt=0, allow_inf_nan=False)
    coherence_time: int = Field(gt=0)
    otas_sense_time: int | None = Field(default=None, ge=0)
    d_bs_irs: float = Field(gt=0, allow_inf_nan=False)
    d_irs_user: float = Field(gt=0, allow_inf_nan=False)
    d_irs_target: float = Field(gt=0, allow_inf_nan=False)
    theta_bi: float
    vartheta_bi: float = 0.0
    theta_it: float
    theta_iu: float
    rcs: float = Field(gt=0, allow_inf_nan=False)
    rng_seed: int = Field(ge=0, le=_U64_MAX)
    mc_trials: int = Field(gt=0)

    model_config = {
        "extra": "forbid",
        "frozen": True,
    }

    @field_validator("theta_bi", "vartheta_bi", "theta_it", "theta_iu")
    @classmethod
    def validate_angle(cls, v: float) -> float:
        """Angles must lie strictly inside (-pi/2, pi/2)."""
        if not math.isfinite(v) or abs(v) >= _HALF_PI:
            raise ValueError(f"angle must lie in (-90, 90) degrees, got {math.degrees(v):g}")
        return v

    @model_validator(mode="after")
    def check_invariants(self) -> "SystemConfig":
        if self.codebook_size < self.n_res:
            raise InvariantViolation(
                FIELD_TO_KEY["codebook_size"],
                f"codebook size L={self.codebook_size} must be >= n_res M={self.n_res}",
            )
        if self.scan_time + self.sense_time >= self.coherence_time:
            raise InvariantViolation(
                FIELD_TO_KEY["coherence_time"],
                f"scan time {self.scan_time} + sensing time {self.sense_time} must be "
                f"< coherence time {self.coherence_time}",
            )
        return self

    @property
    def scan_time(self) -> int:
        """Beam scanning time tau = K * L, in symbols."""
        return self.symbols_per_beam * self.codebook_size

    @property
    def sense_time(self) -> int:
        """OTAS dedicated sensing time tau_s; defaults to tau."""
        if self.otas_sense_time is None:
            return self.scan_time
        return self.otas_sense_time

    @property
    def wavelength(self) -> float:
        """Carrier wavelength lambda in meters."""
        return wavelength(self.carrier_freq)

    def replace(self, **fields: Any) -> "SystemConfig":
        """Return a revalidated copy with some fields (SI units) replaced."""
        return SystemConfig.model_validate({**self.model_dump(), **fields})

    def to_document(self) -> str:
        """Render the config in the key-value document format (file units)."""
        lines = []
        for key, spec in FILE_KEYS.items():
            value = getattr(self, spec.field)
            if value is None:
                continue
            if spec.integer:
                lines.append(f"{key} = {int(value)}")
            else:
                lines.append(f"{key} = {spec.to_file(value)!r}")
        return "\n".join(lines) + "\n"
