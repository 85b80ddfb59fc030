"""Checks of the defining excess-demand properties: Walras' law and homogeneity."""

import logging

import numpy as np

from economy.economies import Economy, excess_demand
from utils.config import config
from utils.errors import DomainError
from utils.float_utils import to_array

logger = logging.getLogger(__name__)


def walras_residual(economy: Economy, p) -> float:
    """|p . xi(p)| at the given (possibly unnormalized) price."""
    p = to_array(p)
    return float(abs(np.dot(p, excess_demand(economy, p))))


def check_walras(economy: Economy, p, tol: float = None) -> bool:
    """True iff |p . xi(p)| <= tol * max(1, |xi(p)|)."""
    tol = config.WALRAS_TOL if tol is None else tol
    p = to_array(p)
    xi = excess_demand(economy, p)
    residual = abs(float(np.dot(p, xi)))
    passed = residual <= tol * max(1.0, float(np.linalg.norm(xi)))
    if not passed:
        logger.debug(f"Walras' law violated for {economy.name}: |p.xi| = {residual:.3e}")
    return passed


def check_homogeneity(economy: Economy, p, scale: float, tol: float = None) -> bool:
    """True iff |xi(scale * p) - xi(p)| <= tol componentwise."""
    tol = config.HOMOGENEITY_TOL if tol is None else tol
    if not scale > 0:
        raise DomainError(f"Homogeneity scale must be positive, got {scale}")
    p = to_array(p)
    difference = excess_demand(economy, scale * p) - excess_demand(economy, p)
    return bool(np.all(np.abs(difference) <= tol))
