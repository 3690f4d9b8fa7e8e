"""Achievable user rates of the simultaneous (STAS) and orthogonal (OTAS) protocols."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import fixed_quad

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.errors import DurationOverflow, InvalidSize
from isac_beamscan.model.channel import path_gain_one_way
from isac_beamscan.model.geometry import SpatialFrequency
from isac_beamscan.training.scan import ScanObservation, gain_ratio

QUADRATURE_NODES = 64


class ScanProtocol(Enum):
    """How beam scanning time is shared between training and sensing."""

    STAS = "stas"
    OTAS = "otas"


@dataclass(frozen=True)
class RatePoint:
    """One point of a rate curve.

    Attributes:
        tau: Training scan time in symbols.
        rate: Achievable rate in bits/s/Hz.
        delta: Misalignment used, or ``None`` for the delta-averaged rate.
        protocol: Protocol the rate belongs to.
    """

    tau: int
    rate: float
    delta: SpatialFrequency | None
    protocol: ScanProtocol


def link_snr(cfg: SystemConfig) -> float:
    """Receive SNR before IRS gain: ``N P_t |alpha_g|^2 |alpha_h|^2 / sigma^2``."""
    lam = cfg.wavelength
    g = path_gain_one_way(cfg.d_bs_irs, lam).power
    h = path_gain_one_way(cfg.d_irs_user, lam).power
    return cfg.n_bs_antennas * cfg.tx_power * g * h / cfg.noise_power


def _spectral_efficiency(cfg: SystemConfig, delta: ArrayLike) -> NDArray[np.float64] | float:
    gain = gain_ratio(delta, cfg.n_res)
    return np.log2(1.0 + link_snr(cfg) * np.square(gain))


def stas_rate(cfg: SystemConfig, delta: SpatialFrequency, tau: float) -> float:
    """Rate when training and sensing share one scan of length ``tau``.

    Raises:
        DurationOverflow: If ``tau`` is negative or exceeds the coherence time.
    """
    return otas_rate(cfg, delta, tau, 0)


def otas_rate(cfg: SystemConfig, delta: SpatialFrequency, tau: float, tau_s: float) -> float:
    """Rate when a separate sensing scan of length ``tau_s`` follows the training scan.

    Raises:
        DurationOverflow: If ``tau + tau_s`` exceeds the coherence time.
    """
    t = cfg.coherence_time
    if tau < 0 or tau_s < 0 or tau + tau_s > t:
        raise DurationOverflow(tau, tau_s, t)
    return float((t - tau - tau_s) / t * _spectral_efficiency(cfg, delta))


def average_rate_over_delta(
    cfg: SystemConfig,
    n_beams: int,
    tau_s: float = 0,
    nodes: int = QUADRATURE_NODES,
) -> float:
    """Rate averaged over ``delta ~ U(0, 1/n_beams)`` with ``tau = K n_beams``.

    ``tau_s > 0`` averages the OTAS rate with that dedicated sensing time instead.
    The integral uses Gauss-Legendre quadrature with ``nodes`` points.

    Raises:
        InvalidSize: If ``n_beams < M``.
        DurationOverflow: If the scans do not fit in the coherence time.
    """
    if n_beams < cfg.n_res:
        raise InvalidSize(f"codebook size {n_beams} smaller than n_res {cfg.n_res}")
    tau = cfg.symbols_per_beam * n_beams
    t = cfg.coherence_time
    if tau + tau_s > t:
        raise DurationOverflow(tau, tau_s, t)
    integral, _ = fixed_quad(lambda d: _spectral_efficiency(cfg, d), 0.0, 1.0 / n_beams, n=nodes)
    return float(n_beams * integral * (t - tau - tau_s) / t)


def scan_rate(cfg: SystemConfig, observation: ScanObservation, tau: float) -> float:
    """STAS rate achieved with the beam a simulated scan actually selected."""
    return stas_rate(cfg, observation.delta, tau)


def rate_points(cfg: SystemConfig, n_beams: int, tau_s: float = 0) -> list[RatePoint]:
    """Rates at both misalignment extremes and delta-averaged, for scan size ``n_beams``."""
    tau = cfg.symbols_per_beam * n_beams
    protocol = ScanProtocol.OTAS if tau_s > 0 else ScanProtocol.STAS
    return [
        RatePoint(tau, otas_rate(cfg, 0.0, tau, tau_s), 0.0, protocol),
        RatePoint(tau, otas_rate(cfg, 1.0 / n_beams, tau, tau_s), 1.0 / n_beams, protocol),
        RatePoint(tau, average_rate_over_delta(cfg, n_beams, tau_s), None, protocol),
    ]
