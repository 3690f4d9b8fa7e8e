"""Parser for the flat ``key = value`` scenario document."""

import logging
import math
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from isac_beamscan.config.keys import FIELD_TO_KEY, FILE_KEYS, KeySpec
from isac_beamscan.config.system import SystemConfig
from isac_beamscan.errors import ConfigError, InvalidValue, MissingKey, UnknownKey

logger = logging.getLogger(__name__)

DEFAULT_SCENARIO = Path(__file__).with_name("reference_scenario.conf")


def _tokenize(text: str) -> dict[str, str]:
    """Split a document into raw ``key -> value`` strings, rejecting unknown keys."""
    values: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidValue(f"line {lineno}", f"expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in FILE_KEYS:
            raise UnknownKey(key, f"line {lineno}")
        if key in values:
            raise InvalidValue(key, f"duplicate key on line {lineno}")
        if not value:
            raise InvalidValue(key, "empty value")
        values[key] = value
    return values


def _convert(spec: KeySpec, raw: str) -> float | int:
    """Convert one raw file value into its SystemConfig field value."""
    if spec.integer:
        try:
            return int(raw)
        except ValueError:
            raise InvalidValue(spec.key, f"expected an integer, got {raw!r}") from None
    try:
        number = float(raw)
    except ValueError:
        raise InvalidValue(spec.key, f"expected a number, got {raw!r}") from None
    if not math.isfinite(number):
        raise InvalidValue(spec.key, f"value must be finite, got {raw!r}")
    return spec.to_field(number)


def build_config(fields: Mapping[str, Any]) -> SystemConfig:
    """Validate SI field values into a SystemConfig, translating pydantic errors.

    Raises:
        InvalidValue: A field fails its range or type constraint.
        InvariantViolation: A cross-field invariant is broken.
    """
    try:
        return SystemConfig.model_validate(dict(fields))
    except ValidationError as e:
        first = e.errors()[0]
        loc = first.get("loc") or ("<config>",)
        key = FIELD_TO_KEY.get(str(loc[0]), str(loc[0]))
        raise InvalidValue(key, first.get("msg", str(e))) from None


def parse_config(text: str) -> SystemConfig:
    """Parse a scenario document into a validated SystemConfig.

    Angles are read in degrees, powers in dBm, RCS in dBsm and the carrier in
    GHz; all are converted to SI units here.

    Raises:
        MissingKey: A required key is absent.
        UnknownKey: A key outside the grammar is present.
        InvalidValue: A value is malformed or out of range.
        InvariantViolation: The values break a cross-field invariant.
    """
    raw = _tokenize(text)
    fields: dict[str, Any] = {}
    for key, spec in FILE_KEYS.items():
        if key in raw:
            fields[spec.field] = _convert(spec, raw[key])
        elif spec.optional:
            if spec.default is not None:
                fields[spec.field] = spec.to_field(spec.default)
        else:
            raise MissingKey(key)
    cfg = build_config(fields)
    logger.debug("Parsed scenario", extra={"keys": sorted(raw)})
    return cfg


def load_config(path: str | Path | None = None) -> SystemConfig:
    """Read and parse a scenario file; ``None`` loads the packaged reference scenario."""
    source = Path(path) if path is not None else DEFAULT_SCENARIO
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("<file>", f"cannot read {source}: {e}") from e
    return parse_config(text)


def split_override(item: str) -> tuple[str, str]:
    """Split a ``key=value`` override into its parts, validating the key."""
    if "=" not in item:
        raise InvalidValue(item, "override must look like key=value")
    key, _, value = item.partition("=")
    key = key.strip()
    if key not in FILE_KEYS:
        raise UnknownKey(key, "not a config key")
    return key, value.strip()


def apply_overrides(cfg: SystemConfig, overrides: Iterable[str]) -> SystemConfig:
    """Return ``cfg`` with file-unit ``key=value`` overrides applied and revalidated.

    Untouched fields keep their exact SI values.
    """
    fields = cfg.model_dump()
    for item in overrides:
        key, value = split_override(item)
        spec = FILE_KEYS[key]
        fields[spec.field] = _convert(spec, value)
    return build_config(fields)
