"""DFT scanning codebook of the IRS reflecting elements."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from isac_beamscan.errors import InvalidSize
from isac_beamscan.model.geometry import ComplexMatrix, ComplexVector, steering_matrix


@dataclass(frozen=True, eq=False)
class Codebook:
    """``L`` unit-modulus beams whose sines tile ``[-1, 1]`` uniformly.

    Attributes:
        beams: Beam ``i`` (0-based) is column ``i``, shape ``(M, L)``.
        psi_grid: Beam sines ``-1 + (2i - 1) / L`` for ``i = 1..L``.
    """

    beams: ComplexMatrix
    psi_grid: NDArray[np.float64]

    @property
    def size(self) -> int:
        return self.beams.shape[1]

    @property
    def n_elements(self) -> int:
        return self.beams.shape[0]

    @property
    def angles(self) -> NDArray[np.float64]:
        """Physical beam angles ``eta(i) = arcsin(psi_i)`` in radians."""
        return np.arcsin(self.psi_grid)

    def beam(self, index: int) -> ComplexVector:
        """Reflection vector of beam ``index`` counted from 1, as scanned."""
        return self.beams[:, index - 1]


def dft_codebook(m: int, n_beams: int) -> Codebook:
    """Build the ``n_beams``-beam DFT codebook for an ``m``-element IRS.

    Raises:
        InvalidSize: If ``m < 1`` or ``n_beams < m``.
    """
    if m < 1 or n_beams < m:
        raise InvalidSize(f"codebook needs n_beams >= m >= 1, got m={m}, n_beams={n_beams}")
    i = np.arange(1, n_beams + 1, dtype=np.float64)
    psi_grid = -1.0 + (2.0 * i - 1.0) / n_beams
    return Codebook(beams=steering_matrix(psi_grid, m), psi_grid=psi_grid)
