"""Fisher information and Cramér-Rao bounds for the target angle.

The unknowns are ``(theta, Re alpha_s, Im alpha_s)``. The complex gain is a
nuisance, so the angle bound is the inverse Schur complement of the gain block.
Three evaluations are provided:

* ``crb_general``: from the assembled 3x3 Fisher matrix, valid for any probing matrix.
* ``crb_simplified``: collapses the traces using ``X X^H = tau N P_t |alpha_g|^2 I``,
  which holds for DFT codebooks with ``L >= M``.
* ``crb_closed_form``: the simplified bound with the derivative norms written out.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from isac_beamscan.config.system import SystemConfig
from isac_beamscan.errors import InvalidAngle, InvalidSize, SingularInformation
from isac_beamscan.model.channel import build_channels, path_gain_one_way, path_gain_roundtrip
from isac_beamscan.model.geometry import (
    ComplexMatrix,
    derivative_norm_sq,
    effective_derivative,
    endfire_cos,
    steering_derivative,
    steering_vector,
)
from isac_beamscan.sensing.echo import probing_matrix, reflected_steering
from isac_beamscan.training.codebook import dft_codebook

SINGULAR_THRESHOLD = 1e-300


class CrbMethod(Enum):
    GENERAL = "general"
    SIMPLIFIED = "simplified"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CrbResult:
    """Angle bound in rad^2 and the evaluation that produced it."""

    crb: float
    method: CrbMethod

    @property
    def rcrb(self) -> float:
        """Root CRB in radians."""
        return math.sqrt(self.crb)

    @property
    def rcrb_deg(self) -> float:
        return math.degrees(self.rcrb)


@dataclass(frozen=True, eq=False)
class UMatrix:
    """Noise-free echo shape ``u(theta) = a_s q^T X`` and its angle derivative.

    Attributes:
        u: Shape ``(M_s, columns of X)``; rank at most one.
        u_dot: ``(a_s' q^T + a_s q'^T) X`` by the product rule.
    """

    u: ComplexMatrix
    u_dot: ComplexMatrix

    @property
    def energy(self) -> float:
        """``tr(u u^H)``."""
        return float(np.sum(np.abs(self.u) ** 2))

    @property
    def derivative_energy(self) -> float:
        """``tr(u' u'^H)``."""
        return float(np.sum(np.abs(self.u_dot) ** 2))

    @property
    def cross(self) -> complex:
        """``tr(u u'^H)``."""
        return complex(np.sum(self.u * self.u_dot.conj()))


def u_matrix(theta: float, x: ComplexMatrix, *, theta_bi: float, n_ses: int) -> UMatrix:
    """Build ``u(theta)`` and ``u'(theta)`` for probing matrix ``x`` of shape ``(M, columns)``.

    Raises:
        InvalidAngle: If ``theta`` lies outside ``[-pi/2, pi/2]``.
    """
    m = x.shape[0]
    a_s = steering_vector(theta, n_ses).elements
    a_s_dot = steering_derivative(theta, n_ses)
    psi = math.sin(theta_bi) - math.sin(theta)
    q = reflected_steering(theta, theta_bi, m)
    # d/dtheta of exp(j pi psi k) with psi = sin(theta_BI) - sin(theta)
    q_dot = -effective_derivative(theta, m, psi)
    qx = q @ x
    u = np.outer(a_s, qx)
    u_dot = np.outer(a_s_dot, qx) + np.outer(a_s, q_dot @ x)
    return UMatrix(u=u, u_dot=u_dot)


@dataclass(frozen=True, eq=False)
class FisherMatrix:
    """Real symmetric 3x3 Fisher matrix ordered ``(theta, Re alpha_s, Im alpha_s)``."""

    f: NDArray[np.float64]

    @property
    def f_tt(self) -> float:
        return float(self.f[0, 0])

    @property
    def f_ta(self) -> NDArray[np.float64]:
        """Angle/gain coupling row, length 2."""
        return self.f[0, 1:]

    @property
    def f_aa(self) -> float:
        """Scalar ``c`` with ``F_aa = c I_2``."""
        return float(self.f[1, 1])

    @property
    def schur(self) -> float:
        """``F_tt - F_ta F_aa^{-1} F_ta^T`` with the gain block inverted as a scalar."""
        f_aa = self.f_aa
        if f_aa <= SINGULAR_THRESHOLD:
            raise SingularInformation(f_aa)
        return self.f_tt - float(self.f_ta @ self.f_ta) / f_aa


def fisher_matrix(
    theta: float,
    alpha_s: complex,
    x: ComplexMatrix,
    sigma2: float,
    *,
    theta_bi: float,
    n_ses: int,
) -> FisherMatrix:
    """Fisher information of ``(theta, Re alpha_s, Im alpha_s)`` from one echo block.

    Raises:
        ValueError: If ``sigma2 <= 0``.
    """
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    um = u_matrix(theta, x, theta_bi=theta_bi, n_ses=n_ses)
    scale = 2.0 / sigma2
    coupling = np.conj(alpha_s) * um.cross
    f = np.empty((3, 3), dtype=np.float64)
    f[0, 0] = scale * abs(alpha_s) ** 2 * um.derivative_energy
    f[0, 1] = f[1, 0] = scale * coupling.real
    f[0, 2] = f[2, 0] = scale * (1j * coupling).real
    f[1, 1] = f[2, 2] = scale * um.energy
    f[1, 2] = f[2, 1] = 0.0
    return FisherMatrix(f)


def crb_general(fm: FisherMatrix) -> CrbResult:
    """Angle CRB as the inverse Schur complement of the gain block.

    Raises:
        SingularInformation: If the Schur complement is not positive.
    """
    schur = fm.schur
    if schur <= SINGULAR_THRESHOLD:
        raise SingularInformation(schur)
    return CrbResult(1.0 / schur, CrbMethod.GENERAL)


def crb_trace_form(
    theta: float,
    alpha_s: complex,
    x: ComplexMatrix,
    sigma2: float,
    *,
    theta_bi: float,
    n_ses: int,
) -> float:
    """``sigma^2 / (2 |alpha_s|^2 (tr(u'u'^H) - |tr(u u'^H)|^2 / tr(u u^H)))``.

    Raises:
        SingularInformation: If the bracketed information is not positive.
    """
    um = u_matrix(theta, x, theta_bi=theta_bi, n_ses=n_ses)
    energy = um.energy
    if energy <= SINGULAR_THRESHOLD:
        raise SingularInformation(energy)
    info = 2.0 * abs(alpha_s) ** 2 * (um.derivative_energy - abs(um.cross) ** 2 / energy)
    if info / sigma2 <= SINGULAR_THRESHOLD:
        raise SingularInformation(info / sigma2)
    return sigma2 / info


def _scan_power(cfg: SystemConfig, codebook_size: int | None) -> float:
    """``tau N P_t |alpha_s|^2 |alpha_g|^2`` where ``tau`` counts the probing columns."""
    n_beams = cfg.codebook_size if codebook_size is None else codebook_size
    if n_beams < cfg.n_res:
        raise InvalidSize(f"codebook size {n_beams} smaller than n_res {cfg.n_res}")
    lam = cfg.wavelength
    alpha_g = path_gain_one_way(cfg.d_bs_irs, lam).power
    alpha_s = path_gain_roundtrip(cfg.d_irs_target, lam, cfg.rcs).power
    tau = cfg.symbols_per_beam * n_beams
    return tau * cfg.n_bs_antennas * cfg.tx_power * alpha_s * alpha_g


def _check_bound_angle(theta: float) -> None:
    if not math.isfinite(theta) or abs(theta) > math.pi / 2:
        raise InvalidAngle(theta)
    if endfire_cos(theta) == 0.0:
        raise SingularInformation(0.0)


def crb_simplified(
    cfg: SystemConfig, theta: float, *, codebook_size: int | None = None
) -> CrbResult:
    """STAS bound using the DFT covariance identity.

    ``codebook_size`` evaluates the bound for another sweep length than ``cfg``'s.

    Raises:
        SingularInformation: At ``|theta| = pi/2``.
        InvalidSize: If the codebook is smaller than the reflecting array.
    """
    _check_bound_angle(theta)
    power = _scan_power(cfg, codebook_size)
    norms = cfg.n_res * derivative_norm_sq(theta, cfg.n_ses) + cfg.n_ses * derivative_norm_sq(
        theta, cfg.n_res
    )
    info = 2.0 * power * norms / cfg.noise_power
    if info <= SINGULAR_THRESHOLD:
        raise SingularInformation(info)
    return CrbResult(1.0 / info, CrbMethod.SIMPLIFIED)


def crb_closed_form(
    cfg: SystemConfig, theta: float, *, codebook_size: int | None = None
) -> CrbResult:
    """``6 sigma^2 / (tau N P_t |a_s|^2 |a_g|^2 pi^2 cos^2 M M_s (M^2 + M_s^2 - 2))``.

    Raises:
        SingularInformation: At ``|theta| = pi/2``.
        InvalidSize: If the codebook is smaller than the reflecting array.
    """
    _check_bound_angle(theta)
    m, m_s = cfg.n_res, cfg.n_ses
    denom = (
        _scan_power(cfg, codebook_size)
        * math.pi**2
        * math.cos(theta) ** 2
        * m
        * m_s
        * (m * m + m_s * m_s - 2)
    )
    if denom <= SINGULAR_THRESHOLD:
        raise SingularInformation(denom)
    return CrbResult(6.0 * cfg.noise_power / denom, CrbMethod.CLOSED_FORM)


def crb_general_from_config(
    cfg: SystemConfig, theta: float | None = None, *, codebook_size: int | None = None
) -> CrbResult:
    """Build the DFT probing matrix and Fisher matrix of ``cfg``, then apply :func:`crb_general`."""
    channels = build_channels(cfg)
    n_beams = cfg.codebook_size if codebook_size is None else codebook_size
    x = probing_matrix(cfg, channels, dft_codebook(cfg.n_res, n_beams))
    fm = fisher_matrix(
        cfg.theta_it if theta is None else theta,
        channels.alpha_s.value,
        x,
        cfg.noise_power,
        theta_bi=cfg.theta_bi,
        n_ses=cfg.n_ses,
    )
    return crb_general(fm)
