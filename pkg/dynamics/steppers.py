"""Discrete price-adjustment steps.

The classical step moves along k |p| xi(p) dt. The second-order step keeps a
damped memory of the previous move, projects it onto the tangent plane at the
current price and renormalizes back onto the sphere.
"""

import logging
from typing import Optional

import numpy as np

from economy.economies import Economy, excess_demand
from geometry.sphere import project_tangent, renormalize
from utils.errors import DomainError
from dynamics.shared import DynamicsState

logger = logging.getLogger(__name__)

MAGNITUDE_TOL = 1e-10


def _check_positive(candidate: np.ndarray, last_valid: np.ndarray, step_index: Optional[int] = None) -> None:
    if not np.all(np.isfinite(candidate)) or np.any(candidate <= 0):
        where = "Step" if step_index is None else f"Step {step_index}"
        raise DomainError(
            f"{where} left the positive orthant: {candidate.tolist()}",
            last_valid=last_valid,
            details={"step": step_index},
        )


def step_classical_discrete(p: np.ndarray, economy: Economy, k: float, dt: float,
                            normalize: bool = True) -> np.ndarray:
    """p + k |p| xi(p) dt, scaled back to the sphere unless normalize=False."""
    candidate = p + k * np.linalg.norm(p) * excess_demand(economy, p) * dt
    _check_positive(candidate, p)
    if normalize:
        return renormalize(candidate)[0]
    return candidate


def magnitude_closed_form(p_current: np.ndarray, p_previous: np.ndarray, xi_hat: np.ndarray,
                          k: float, gamma_hat: float) -> float:
    """|p~_{N+1}| from the angle between successive prices and |xi_hat|.

    |p~|^2 = |p|^2 (1 + (1 - g)^2 sin^2(theta) + k^2 |xi_hat|^2 - 2 (1 - g) k (p_prev/|p|) . xi_hat)
    for |p_current| = |p_previous|. Relies on p . xi = 0.
    """
    norm = float(np.linalg.norm(p_current))
    cos_theta = float(np.clip(np.dot(p_current, p_previous) / (norm * np.linalg.norm(p_previous)), -1.0, 1.0))
    sin_sq = 1.0 - cos_theta * cos_theta
    memory = 1.0 - gamma_hat
    inner = (
        1.0
        + memory * memory * sin_sq
        + k * k * float(np.dot(xi_hat, xi_hat))
        - 2.0 * memory * k * float(np.dot(p_previous / norm, xi_hat))
    )
    return norm * float(np.sqrt(max(inner, 0.0)))


def step_second_order_discrete(state: DynamicsState, economy: Economy, k: float, gamma_hat: float,
                               dt: float = 1.0) -> DynamicsState:
    """One damped second-order step on the sphere.

    t = P_p[(1 - g)(p_N cos(theta) - p_{N-1}) + k |p_N| xi_hat(p_N)], xi_hat = dt^2 xi;
    p_{N+1} = A (p_N + t) with A = |p_N| / |p_N + t|.
    """
    p = state.p_current
    q = state.p_previous if state.p_previous is not None else p
    norm = float(np.linalg.norm(p))
    unit = p / norm
    cos_theta = float(np.clip(np.dot(p, q) / (norm * np.linalg.norm(q)), -1.0, 1.0))
    xi_hat = dt * dt * excess_demand(economy, p)

    memory = (1.0 - gamma_hat) * (p * cos_theta - q)
    step = project_tangent(memory + k * norm * xi_hat, unit).components
    p_tilde = p + step
    _check_positive(p_tilde, p, state.step_index + 1)

    tilde_norm = float(np.linalg.norm(p_tilde))
    residual = abs(tilde_norm - magnitude_closed_form(p, q, xi_hat, k, gamma_hat))
    if residual > MAGNITUDE_TOL * max(1.0, tilde_norm):
        logger.warning(
            f"Step {state.step_index + 1}: |p~| differs from closed form by {residual:.3e}"
        )
    scale = norm / tilde_norm
    return DynamicsState(
        p_current=scale * p_tilde,
        p_previous=p,
        step_index=state.step_index + 1,
        scale=scale,
        magnitude_residual=residual,
        velocity_reversal=gamma_hat > 1,
    )
