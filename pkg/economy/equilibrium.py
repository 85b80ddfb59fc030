"""Finite-difference Jacobians and equilibrium search on the price sphere."""

import logging
from typing import Optional

import numpy as np

from economy.economies import Economy, JacobianMatrix, PriceVector, excess_demand, price_vector
from geometry.sphere import tangent_basis
from utils.config import config
from utils.errors import DomainError, NoConvergence
from utils.float_utils import to_array

logger = logging.getLogger(__name__)

MIN_LINE_SEARCH_STEP = 1.0 / 2 ** 30


def default_step(p) -> float:
    """Finite-difference step: FD_RELATIVE_STEP times the smallest price."""
    return config.FD_RELATIVE_STEP * float(np.min(to_array(p)))


def jacobian(economy: Economy, p, h: Optional[float] = None) -> JacobianMatrix:
    """Central finite-difference Jacobian D xi(p), one column per commodity."""
    p = to_array(p)
    h = default_step(p) if h is None else float(h)
    if not h > 0:
        raise DomainError(f"Finite-difference step must be positive, got {h}")
    if np.any(p - h <= 0):
        raise DomainError(
            f"Step h={h} leaves the positive orthant at p={p.tolist()}", last_valid=p
        )
    n = p.shape[0]
    columns = np.empty((n, n))
    for i in range(n):
        offset = np.zeros(n)
        offset[i] = h
        columns[:, i] = (excess_demand(economy, p + offset) - excess_demand(economy, p - offset)) / (2 * h)
    return columns


def find_equilibrium(economy: Economy, p0, tol: float = None, max_iter: int = None) -> PriceVector:
    """Newton iteration in the tangent plane of the unit sphere.

    At each iterate the residual B^T xi(p) and the reduced Jacobian B^T J B are
    formed from an orthonormal tangent basis B (n - 1 unknowns); the step is
    backtracked until the iterate stays positive and |xi| decreases.
    """
    tol = config.EQUILIBRIUM_TOL if tol is None else tol
    max_iter = config.EQUILIBRIUM_MAX_ITER if max_iter is None else max_iter
    p = price_vector(p0)
    xi = excess_demand(economy, p)
    residual = float(np.linalg.norm(xi))

    for iteration in range(max_iter):
        if residual <= tol:
            logger.debug(f"Equilibrium of {economy.name} found after {iteration} iterations")
            return p

        basis = tangent_basis(p)
        reduced_jacobian = basis.T @ jacobian(economy, p) @ basis
        step, *_ = np.linalg.lstsq(reduced_jacobian, -(basis.T @ xi), rcond=None)
        direction = basis @ step

        t = 1.0
        any_positive = False
        while t >= MIN_LINE_SEARCH_STEP:
            candidate = p + t * direction
            if np.all(candidate > 0):
                any_positive = True
                candidate = candidate / np.linalg.norm(candidate)
                candidate_xi = excess_demand(economy, candidate)
                candidate_residual = float(np.linalg.norm(candidate_xi))
                if candidate_residual < residual:
                    p, xi, residual = candidate, candidate_xi, candidate_residual
                    break
            t /= 2
        else:
            if not any_positive:
                raise DomainError(
                    f"Equilibrium search for {economy.name} left the positive orthant",
                    last_valid=p,
                    details={"iteration": iteration, "residual": residual},
                )
            raise NoConvergence(
                f"Line search stalled at |xi| = {residual:.3e}",
                last_iterate=p,
                details={"iteration": iteration},
            )

    if residual <= tol:
        return p
    raise NoConvergence(
        f"No equilibrium for {economy.name} within {max_iter} iterations (|xi| = {residual:.3e})",
        last_iterate=p,
        details={"max_iter": max_iter, "residual": residual},
    )
