"""Downlink beam scanning as received by the communication user."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.model.channel import ChannelSet, transmit_beamformer
from isac_beamscan.model.geometry import SpatialFrequency, steering_from_psi
from isac_beamscan.model.noise import complex_awgn
from isac_beamscan.training.codebook import Codebook

logger = logging.getLogger(__name__)

# Relative slack under which two beam energies count as a tie (lowest index wins).
_TIE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ScanObservation:
    """What the user saw during one beam sweep.

    Attributes:
        y_user: Received samples, shape ``(L, K)``: one row per beam, K symbols each.
        best_index: Selected beam, counted from 1.
        delta: Sine-domain distance between the user direction and the selected beam.
    """

    y_user: NDArray[np.complex128]
    best_index: int
    delta: SpatialFrequency

    @property
    def energies(self) -> NDArray[np.float64]:
        """Per-beam energy detector output ``sum_k |y(t, k)|^2``."""
        return np.sum(np.abs(self.y_user) ** 2, axis=1)


def wrap_psi(psi: ArrayLike) -> NDArray[np.float64]:
    """Fold spatial frequencies into ``[-1, 1)``; steering magnitudes are 2-periodic in psi."""
    return np.mod(np.asarray(psi, dtype=np.float64) + 1.0, 2.0) - 1.0


def beam_offset(psi: SpatialFrequency, beam_psi: SpatialFrequency) -> SpatialFrequency:
    """Non-negative sine-domain misalignment ``delta`` between a direction and a beam."""
    return float(abs(wrap_psi(psi - beam_psi)))


def gain_ratio(delta: ArrayLike, m: int) -> NDArray[np.float64] | float:
    """Beamforming gain ``|sin(pi m delta / 2) / sin(pi delta / 2)|`` with value ``m`` at 0."""
    d = np.asarray(delta, dtype=np.float64)
    half = np.pi * d / 2.0
    den = np.sin(half)
    small = np.abs(den) < 1e-15
    safe = np.where(small, 1.0, den)
    ratio = np.where(small, float(m), np.abs(np.sin(m * half) / safe))
    if ratio.ndim == 0:
        return float(ratio)
    return ratio


def beamforming_gain(channels: ChannelSet, codebook: Codebook, index: int) -> float:
    """Realised gain ``|a_r^H(psi_IU) phi(index)|`` of a codebook beam towards the user."""
    a = steering_from_psi(channels.psi_iu, codebook.n_elements).elements
    return float(abs(np.vdot(a, codebook.beam(index))))


def select_best_beam(energies: NDArray[np.float64]) -> int:
    """Index (from 1) of the strongest beam; near-exact ties go to the lowest index."""
    peak = float(np.max(energies))
    return int(np.flatnonzero(energies >= peak * (1.0 - _TIE_TOLERANCE))[0]) + 1


def simulate_user_scan(
    channels: ChannelSet,
    codebook: Codebook,
    cfg: SystemConfig,
    rng: np.random.Generator | None,
) -> ScanObservation:
    """Sweep the codebook and let the user pick its best beam.

    Each beam is held for K unit symbols. ``rng=None`` disables noise injection.
    """
    gw = channels.g @ transmit_beamformer(cfg)
    # y(t) = sqrt(P_t) h_u^H diag(phi(t)) G w
    cascade = channels.h_u.conj() * gw
    clean = math.sqrt(cfg.tx_power) * (cascade @ codebook.beams)
    k = cfg.symbols_per_beam
    y = np.repeat(clean[:, None], k, axis=1)
    if rng is not None:
        y = y + complex_awgn(rng, y.shape, cfg.noise_power)

    energies = np.sum(np.abs(y) ** 2, axis=1)
    best = select_best_beam(energies)
    delta = beam_offset(channels.psi_iu, float(codebook.psi_grid[best - 1]))
    logger.debug("User scan complete", extra={"best_index": best, "delta": delta})
    return ScanObservation(y_user=y, best_index=best, delta=delta)
