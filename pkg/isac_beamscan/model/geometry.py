"""Half-wavelength ULA steering vectors with the array center as phase reference.

Everything is computed in the sine (spatial-frequency) domain: element ``k`` of
an ``m``-element array pointed at spatial frequency ``psi`` has phase
``pi * psi * (k - (m - 1) / 2)``. Physical angles enter through ``sin``.
"""

import math
from dataclasses import dataclass
from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from isac_beamscan.errors import InvalidAngle

# Difference of two sines, so always within [-2, 2].
SpatialFrequency: TypeAlias = float

ComplexVector: TypeAlias = NDArray[np.complex128]
ComplexMatrix: TypeAlias = NDArray[np.complex128]

_HALF_PI = math.pi / 2


@dataclass(frozen=True, eq=False)
class SteeringVector:
    """Array response of an ``n_elements`` ULA.

    Attributes:
        elements: Unit-modulus complex entries, length ``n_elements``.
        psi: Spatial frequency the vector points at.
        angle: Physical angle in radians, or ``None`` when ``|psi| > 1``.
        n_elements: Array size.
    """

    elements: ComplexVector
    psi: SpatialFrequency
    angle: float | None
    n_elements: int


def _check_angle(theta: float) -> None:
    if not math.isfinite(theta) or abs(theta) > _HALF_PI:
        raise InvalidAngle(theta)


def endfire_cos(theta: float) -> float:
    """``cos(theta)``, exactly zero at endfire so derivatives vanish there."""
    return 0.0 if abs(theta) >= _HALF_PI else math.cos(theta)


def element_offsets(m: int) -> NDArray[np.float64]:
    """Centered element indices ``-(m-1)/2, ..., (m-1)/2``."""
    return np.arange(m, dtype=np.float64) - (m - 1) / 2.0


def zeta_matrix(m: int) -> NDArray[np.float64]:
    """Real diagonal matrix of centered element indices (trace zero)."""
    return np.diag(element_offsets(m))


def steering_matrix(psis: ArrayLike, m: int) -> ComplexMatrix:
    """Stack steering vectors for many spatial frequencies as columns, shape ``(m, len(psis))``."""
    psis = np.atleast_1d(np.asarray(psis, dtype=np.float64))
    return np.exp(1j * np.pi * np.outer(element_offsets(m), psis))


def steering_from_psi(psi: SpatialFrequency, m: int) -> SteeringVector:
    """Steering vector pointed at a spatial frequency, valid for ``|psi| <= 2``."""
    elements = np.exp(1j * np.pi * psi * element_offsets(m))
    angle = math.asin(psi) if abs(psi) <= 1.0 else None
    return SteeringVector(elements=elements, psi=psi, angle=angle, n_elements=m)


def steering_vector(theta: float, m: int) -> SteeringVector:
    """Steering vector of an ``m``-element ULA towards physical angle ``theta``.

    Raises:
        InvalidAngle: If ``theta`` lies outside ``[-pi/2, pi/2]``.
    """
    _check_angle(theta)
    vector = steering_from_psi(math.sin(theta), m)
    return SteeringVector(elements=vector.elements, psi=vector.psi, angle=theta, n_elements=m)


def steering_derivative(theta: float, m: int) -> ComplexVector:
    """Angle derivative ``j*pi*cos(theta) * zeta * a(theta)`` of the steering vector.

    Raises:
        InvalidAngle: If ``theta`` lies outside ``[-pi/2, pi/2]``.
    """
    a = steering_vector(theta, m).elements
    return 1j * np.pi * endfire_cos(theta) * element_offsets(m) * a


def effective_derivative(theta: float, m: int, psi: SpatialFrequency) -> ComplexVector:
    """Derivative of a reflected steering vector ``a(psi)`` written as ``j*pi*cos(theta)*zeta*a``.

    Used for ``q(theta) = a_r(sin(theta_BI) - sin(theta))``; the chain rule gives the
    opposite sign, which no norm, Fisher entry product or bound depends on.
    """
    return 1j * np.pi * endfire_cos(theta) * element_offsets(m) * steering_from_psi(psi, m).elements


def derivative_norm_sq(theta: float, m: int) -> float:
    """Closed form ``pi^2 cos^2(theta) m (m^2 - 1) / 12`` of ``||steering_derivative||^2``."""
    return math.pi**2 * endfire_cos(theta) ** 2 * m * (m * m - 1) / 12.0
