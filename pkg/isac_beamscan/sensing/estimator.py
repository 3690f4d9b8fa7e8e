"""Maximum-likelihood target angle estimation from an echo block.

With white Gaussian noise and the complex gain concentrated out, the likelihood
of ``theta`` reduces to ``|a_s^H(theta) Y X^H q*(theta)|^2``. It is maximised by
an exhaustive grid over ``[-pi/2, pi/2]`` followed by golden-section refinement
inside the bracket around the best grid point. A maximum on either endpoint is
refined at both ends, since ``+-pi/2`` alias.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from isac_beamscan.errors import DegenerateBlock, InvalidSize
from isac_beamscan.model.geometry import steering_matrix, steering_vector
from isac_beamscan.sensing.echo import EchoBlock, reflected_steering

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 2048
REFINE_TOLERANCE = 1e-7

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EstimationResult:
    """Outcome of one MLE search.

    Attributes:
        theta_hat: Estimated angle in radians.
        alpha_hat: Least-squares complex gain at ``theta_hat``.
        objective: Likelihood objective at ``theta_hat``.
        grid_points: Size of the coarse grid.
        refined: Whether golden-section refinement ran.
    """

    theta_hat: float
    alpha_hat: complex
    objective: float
    grid_points: int
    refined: bool


def mle_objective(theta: float, block: EchoBlock) -> float:
    """``|a_s^H(theta) Y X^H q*(theta)|^2`` for one candidate angle."""
    a_s = steering_vector(theta, block.n_ses).elements
    q = reflected_steering(theta, block.theta_bi, block.n_res)
    return float(abs(a_s.conj() @ block.correlation @ q.conj()) ** 2)


def gain_estimate(theta: float, block: EchoBlock) -> complex:
    """``vec(u)^H vec(Y) / ||vec(u)||^2`` with ``u = a_s q^T X``: the best gain for ``theta``."""
    a_s = steering_vector(theta, block.n_ses).elements
    q = reflected_steering(theta, block.theta_bi, block.n_res)
    projection = a_s.conj() @ block.correlation @ q.conj()
    u_energy = block.n_ses * float(np.sum(np.abs(q @ block.x) ** 2))
    return complex(projection / u_energy)


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = REFINE_TOLERANCE
) -> float:
    """Maximise a unimodal ``f`` on ``[lo, hi]`` until the bracket is narrower than ``tol``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2.0


class AngleEstimator:
    """Grid + golden-section MLE with the grid steering matrices computed once.

    One instance serves any number of echo blocks sharing ``theta_bi`` and the
    array sizes, which is what Monte Carlo trials need.

    Args:
        theta_bi: BS direction seen from the IRS, radians.
        n_res: Reflecting elements M.
        n_ses: Sensing elements M_s.
        grid_points: Coarse grid size over ``[-pi/2, pi/2]`` (at least 3).
        refine: Run golden-section refinement after the grid search.
    """

    def __init__(
        self,
        theta_bi: float,
        n_res: int,
        n_ses: int,
        grid_points: int = DEFAULT_GRID_POINTS,
        refine: bool = True,
    ) -> None:
        if grid_points < 3:
            raise InvalidSize(f"grid_points must be >= 3, got {grid_points}")
        self.theta_bi = theta_bi
        self.n_res = n_res
        self.n_ses = n_ses
        self.grid_points = grid_points
        self.refine = refine
        self.grid: NDArray[np.float64] = np.linspace(-np.pi / 2, np.pi / 2, grid_points)
        sines = np.sin(self.grid)
        # rows: conj(a_s(theta_g))^T and conj(q(theta_g))^T
        self._a_s_h = steering_matrix(sines, n_ses).conj().T
        self._q_h = steering_matrix(math.sin(theta_bi) - sines, n_res).conj().T

    def grid_objective(self, block: EchoBlock) -> NDArray[np.float64]:
        """Objective on every grid angle at once."""
        values = np.sum((self._a_s_h @ block.correlation) * self._q_h, axis=1)
        return np.abs(values) ** 2

    def _brackets(self, k: int) -> list[tuple[int, int]]:
        """Grid index pairs to refine between for a coarse maximum at ``k``.

        At +-pi/2 the spatial frequencies of ``a_s`` and ``q`` both shift by 2, so the
        two endpoints score the same and a maximum at either may belong to the other end.
        """
        last = self.grid_points - 1
        if k in (0, last):
            return [(0, 1), (last - 1, last)]
        return [(k - 1, k + 1)]

    def estimate(self, block: EchoBlock) -> EstimationResult:
        """Estimate the target angle of one block.

        Raises:
            DegenerateBlock: If the block carries no energy.
            InvalidSize: If the block dimensions do not match the estimator.
        """
        if block.n_ses != self.n_ses or block.n_res != self.n_res:
            raise InvalidSize(
                f"block is ({block.n_ses}, {block.n_res}), estimator ({self.n_ses}, {self.n_res})"
            )
        if not np.any(block.y):
            raise DegenerateBlock("echo block is identically zero")

        coarse = self.grid_objective(block)
        k = int(np.argmax(coarse))
        theta_hat = float(self.grid[k])
        coarse_best = float(coarse[k])

        if self.refine:
            for lo, hi in self._brackets(k):
                candidate = golden_section_max(
                    lambda t: mle_objective(t, block), float(self.grid[lo]), float(self.grid[hi])
                )
                value = mle_objective(candidate, block)
                if value >= coarse_best:
                    theta_hat, coarse_best = candidate, value
        objective = mle_objective(theta_hat, block)

        return EstimationResult(
            theta_hat=theta_hat,
            alpha_hat=gain_estimate(theta_hat, block),
            objective=objective,
            grid_points=self.grid_points,
            refined=self.refine,
        )


def estimate_angle(
    block: EchoBlock, grid_points: int = DEFAULT_GRID_POINTS, refine: bool = True
) -> EstimationResult:
    """One-shot MLE of the target angle; see :class:`AngleEstimator`."""
    estimator = AngleEstimator(block.theta_bi, block.n_res, block.n_ses, grid_points, refine)
    return estimator.estimate(block)


def concentrated_residual(theta: float, block: EchoBlock) -> float:
    """``||Y - alpha_hat u(theta)||_F^2`` with the gain set to its least-squares value."""
    a_s = steering_vector(theta, block.n_ses).elements
    q = reflected_steering(theta, block.theta_bi, block.n_res)
    u = np.outer(a_s, q @ block.x)
    residual = block.y - gain_estimate(theta, block) * u
    return float(np.sum(np.abs(residual) ** 2))
