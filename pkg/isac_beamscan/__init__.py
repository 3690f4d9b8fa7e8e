"""isac-beamscan - beam-scanning simulator for IRS-aided mmWave sensing and communication."""

from isac_beamscan.config import SystemConfig, load_config, parse_config
from isac_beamscan.errors import ConfigError, IsacError

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "IsacError",
    "SystemConfig",
    "load_config",
    "parse_config",
    "__version__",
]
