"""Echo collection at the IRS sensing elements during the downlink sweep."""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.model.channel import ChannelSet, transmit_beamformer
from isac_beamscan.model.geometry import ComplexMatrix, ComplexVector, steering_from_psi
from isac_beamscan.model.noise import complex_awgn
from isac_beamscan.training.codebook import Codebook


@dataclass(frozen=True, eq=False)
class EchoBlock:
    """Received sensing matrix together with everything the estimator may know.

    Attributes:
        y: Echo samples, shape ``(M_s, K*L)``; one column per scanned symbol.
        x: Probing matrix ``sqrt(N P_t) alpha_g [phi(1) ... phi(L)]``, shape ``(M, K*L)``.
        sigma2: Noise power in watts.
        theta_bi: BS direction seen from the IRS, known in advance.
    """

    y: ComplexMatrix
    x: ComplexMatrix
    sigma2: float
    theta_bi: float

    @property
    def n_ses(self) -> int:
        return self.y.shape[0]

    @property
    def n_res(self) -> int:
        return self.x.shape[0]

    @cached_property
    def correlation(self) -> ComplexMatrix:
        """``Y X^H``, shape ``(M_s, M)``; every likelihood evaluation goes through it."""
        return self.y @ self.x.conj().T


def reflected_steering(theta: float, theta_bi: float, m: int) -> ComplexVector:
    """``q(theta) = a_r(sin(theta_BI) - sin(theta))``, the IRS response folded with the BS side."""
    return steering_from_psi(math.sin(theta_bi) - math.sin(theta), m).elements


def probing_matrix(cfg: SystemConfig, channels: ChannelSet, codebook: Codebook) -> ComplexMatrix:
    """``X = sqrt(N P_t) alpha_g [phi(1) ... phi(L)]`` with each beam held for K symbols."""
    scale = math.sqrt(cfg.n_bs_antennas * cfg.tx_power) * channels.alpha_g.value
    return np.repeat(scale * codebook.beams, cfg.symbols_per_beam, axis=1)


def simulate_echo_scan(
    channels: ChannelSet,
    codebook: Codebook,
    cfg: SystemConfig,
    rng: np.random.Generator | None,
) -> EchoBlock:
    """Collect the target echoes of one full sweep; ``rng=None`` disables noise injection."""
    gw = channels.g @ transmit_beamformer(cfg)
    # y_s(t) = sqrt(P_t) H_t diag(phi(t)) G w with s(t) = 1
    clean = math.sqrt(cfg.tx_power) * (channels.h_t @ (codebook.beams * gw[:, None]))
    y = np.repeat(clean, cfg.symbols_per_beam, axis=1)
    if rng is not None:
        y = y + complex_awgn(rng, y.shape, cfg.noise_power)
    return EchoBlock(
        y=y,
        x=probing_matrix(cfg, channels, codebook),
        sigma2=cfg.noise_power,
        theta_bi=cfg.theta_bi,
    )
