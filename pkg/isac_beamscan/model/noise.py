"""Reproducible circularly-symmetric complex Gaussian noise.

Each Monte Carlo trial owns private streams keyed by ``(seed, trial, phase)``,
so trials can run in any order, on any worker, and still draw identical noise.
"""

from enum import IntEnum

import numpy as np
from numpy.typing import NDArray


class Phase(IntEnum):
    """Which reception a noise stream feeds."""

    USER_SCAN = 0
    ECHO_SCAN = 1


def trial_rng(seed: int, trial_index: int, phase: Phase | int) -> np.random.Generator:
    """Deterministic generator for one (seed, trial, phase) triple."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial_index, int(phase)]))


def complex_awgn(
    rng: np.random.Generator, shape: int | tuple[int, ...], sigma2: float
) -> NDArray[np.complex128]:
    """Draw CN(0, sigma2) samples: real and imaginary parts each with variance sigma2 / 2."""
    scale = np.sqrt(sigma2 / 2.0)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return scale * (real + 1j * imag)
