"""Far-field LoS channels of the BS -> IRS -> {user, target -> IRS sensing elements} links."""

import math
from dataclasses import dataclass

import numpy as np

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.model.geometry import (
    ComplexMatrix,
    ComplexVector,
    SpatialFrequency,
    steering_vector,
)


@dataclass(frozen=True)
class PathGain:
    """Complex, dimensionless amplitude of one LoS path."""

    value: complex

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    @property
    def power(self) -> float:
        """Squared magnitude ``|alpha|^2``."""
        return abs(self.value) ** 2


def path_gain_one_way(d: float, lam: float) -> PathGain:
    """Free-space gain ``lambda / (4 pi d) * exp(j 2 pi d / lambda)``."""
    magnitude = lam / (4.0 * math.pi * d)
    return PathGain(magnitude * np.exp(1j * 2.0 * math.pi * d / lam))


def path_gain_roundtrip(d: float, lam: float, kappa: float) -> PathGain:
    """Radar round-trip gain ``sqrt(lambda^2 kappa / (64 pi^3 d^4)) * exp(j 4 pi d / lambda)``."""
    magnitude = math.sqrt(lam**2 * kappa / (64.0 * math.pi**3 * d**4))
    return PathGain(magnitude * np.exp(1j * 4.0 * math.pi * d / lam))


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """The three LoS channels of a scenario with their path gains.

    Attributes:
        g: BS -> IRS reflecting elements, shape ``(M, N)``.
        h_u: IRS reflecting elements -> user, length ``M``.
        h_t: IRS reflecting elements -> target -> IRS sensing elements, shape ``(M_s, M)``.
        alpha_g: BS-IRS one-way gain.
        alpha_h: IRS-user one-way gain.
        alpha_s: IRS-target-IRS round-trip gain.
        psi_iu: ``sin(theta_IU) - sin(theta_BI)``, effective user direction.
        psi_it: ``sin(theta_BI) - sin(theta_IT)``, effective target direction.
    """

    g: ComplexMatrix
    h_u: ComplexVector
    h_t: ComplexMatrix
    alpha_g: PathGain
    alpha_h: PathGain
    alpha_s: PathGain
    psi_iu: SpatialFrequency
    psi_it: SpatialFrequency

    @property
    def n_res(self) -> int:
        return self.g.shape[0]

    @property
    def n_ses(self) -> int:
        return self.h_t.shape[0]

    @property
    def n_bs_antennas(self) -> int:
        return self.g.shape[1]


def transmit_beamformer(cfg: SystemConfig) -> ComplexVector:
    """Unit-norm BS beamformer ``a_b(vartheta_BI) / sqrt(N)`` matched to the BS-IRS channel."""
    n = cfg.n_bs_antennas
    return steering_vector(cfg.vartheta_bi, n).elements / math.sqrt(n)


def build_channels(cfg: SystemConfig) -> ChannelSet:
    """Construct ``G``, ``h_u`` and ``H_t`` for a validated config."""
    lam = cfg.wavelength
    alpha_g = path_gain_one_way(cfg.d_bs_irs, lam)
    alpha_h = path_gain_one_way(cfg.d_irs_user, lam)
    alpha_s = path_gain_roundtrip(cfg.d_irs_target, lam, cfg.rcs)

    a_r_bi = steering_vector(cfg.theta_bi, cfg.n_res).elements
    a_b_bi = steering_vector(cfg.vartheta_bi, cfg.n_bs_antennas).elements
    a_r_iu = steering_vector(cfg.theta_iu, cfg.n_res).elements
    a_r_it = steering_vector(cfg.theta_it, cfg.n_res).elements
    a_s_it = steering_vector(cfg.theta_it, cfg.n_ses).elements

    return ChannelSet(
        g=alpha_g.value * np.outer(a_r_bi, a_b_bi.conj()),
        h_u=alpha_h.value * a_r_iu,
        h_t=alpha_s.value * np.outer(a_s_it, a_r_it.conj()),
        alpha_g=alpha_g,
        alpha_h=alpha_h,
        alpha_s=alpha_s,
        psi_iu=math.sin(cfg.theta_iu) - math.sin(cfg.theta_bi),
        psi_it=math.sin(cfg.theta_bi) - math.sin(cfg.theta_it),
    )
