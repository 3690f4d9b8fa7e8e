"""Grammar of the scenario document: file keys, their units and SystemConfig fields."""

import math
from collections.abc import Callable
from dataclasses import dataclass

from isac_beamscan.config.units import dbm_to_watts, dbsm_to_sqm, sqm_to_dbsm, watts_to_dbm


def _identity(value: float) -> float:
    return value


@dataclass(frozen=True)
class KeySpec:
    """How one file key maps onto a SystemConfig field.

    Attributes:
        key: Key as written in the document.
        field: SystemConfig field name (SI units).
        integer: Whether the value must be an integer.
        to_field: Converts the file value to the field value.
        to_file: Converts the field value back to file units.
        default: File-unit default for optional keys; ``None`` marks the key required.
        optional: True when the key may be omitted.
    """

    key: str
    field: str
    integer: bool = False
    to_field: Callable[[float], float] = _identity
    to_file: Callable[[float], float] = _identity
    default: float | None = None
    optional: bool = False


_SPECS: tuple[KeySpec, ...] = (
    KeySpec("n_bs_antennas", "n_bs_antennas", integer=True),
    KeySpec("n_res", "n_res", integer=True),
    KeySpec("n_ses", "n_ses", integer=True),
    KeySpec("codebook_size", "codebook_size", integer=True),
    KeySpec("symbols_per_beam", "symbols_per_beam", integer=True),
    KeySpec("tx_power_dbm", "tx_power", to_field=dbm_to_watts, to_file=watts_to_dbm),
    KeySpec("noise_power_dbm", "noise_power", to_field=dbm_to_watts, to_file=watts_to_dbm),
    KeySpec(
        "carrier_freq_ghz",
        "carrier_freq",
        to_field=lambda ghz: ghz * 1e9,
        to_file=lambda hz: hz / 1e9,
    ),
    KeySpec("coherence_time_symbols", "coherence_time", integer=True),
    KeySpec("otas_sense_time_symbols", "otas_sense_time", integer=True, optional=True),
    KeySpec("d_bs_irs_m", "d_bs_irs"),
    KeySpec("d_irs_user_m", "d_irs_user"),
    KeySpec("d_irs_target_m", "d_irs_target"),
    KeySpec("theta_bi_deg", "theta_bi", to_field=math.radians, to_file=math.degrees),
    KeySpec(
        "vartheta_bi_deg",
        "vartheta_bi",
        to_field=math.radians,
        to_file=math.degrees,
        default=0.0,
        optional=True,
    ),
    KeySpec("theta_it_deg", "theta_it", to_field=math.radians, to_file=math.degrees),
    KeySpec("theta_iu_deg", "theta_iu", to_field=math.radians, to_file=math.degrees),
    KeySpec("rcs_dbsm", "rcs", to_field=dbsm_to_sqm, to_file=sqm_to_dbsm),
    KeySpec("rng_seed", "rng_seed", integer=True),
    KeySpec("mc_trials", "mc_trials", integer=True),
)

FILE_KEYS: dict[str, KeySpec] = {spec.key: spec for spec in _SPECS}
FIELD_TO_KEY: dict[str, str] = {spec.field: spec.key for spec in _SPECS}
