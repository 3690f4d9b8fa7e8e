"""Scenario configuration: the SystemConfig model, its document parser and unit helpers."""

from isac_beamscan.config.keys import FILE_KEYS
from isac_beamscan.config.parser import (
    DEFAULT_SCENARIO,
    apply_overrides,
    build_config,
    load_config,
    parse_config,
)
from isac_beamscan.config.system import SystemConfig
from isac_beamscan.config.units import (
    SPEED_OF_LIGHT,
    dbm_to_watts,
    dbsm_to_sqm,
    watts_to_dbm,
    wavelength,
)

__all__ = [
    "DEFAULT_SCENARIO",
    "FILE_KEYS",
    "SPEED_OF_LIGHT",
    "SystemConfig",
    "apply_overrides",
    "build_config",
    "dbm_to_watts",
    "dbsm_to_sqm",
    "load_config",
    "parse_config",
    "watts_to_dbm",
    "wavelength",
]
