"""Unit conversions between the file units (dBm, dBsm, GHz, degrees) and SI."""

import math

# Exact SI value; figure comparisons against 3e8 differ by < 0.3 % in gain.
SPEED_OF_LIGHT = 299_792_458.0


def dbm_to_watts(p_dbm: float) -> float:
    """Convert a power in dBm to watts."""
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_watts: float) -> float:
    """Convert a power in watts to dBm.

    Raises:
        ValueError: If ``p_watts`` is not strictly positive.
    """
    if p_watts <= 0:
        raise ValueError(f"power must be positive, got {p_watts!r} W")
    return 10.0 * math.log10(p_watts) + 30.0


def dbsm_to_sqm(k_dbsm: float) -> float:
    """Convert a radar cross section in dBsm to square meters."""
    return 10.0 ** (k_dbsm / 10.0)


def sqm_to_dbsm(k_sqm: float) -> float:
    """Convert a radar cross section in square meters to dBsm."""
    return 10.0 * math.log10(k_sqm)


def wavelength(f_c: float) -> float:
    """Return the carrier wavelength in meters for a frequency in hertz.

    Raises:
        ValueError: If ``f_c`` is not strictly positive.
    """
    if f_c <= 0:
        raise ValueError(f"carrier frequency must be positive, got {f_c!r} Hz")
    return SPEED_OF_LIGHT / f_c
