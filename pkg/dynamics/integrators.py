"""Fixed-step RK4 integration of the continuous price-adjustment processes."""

import logging
from typing import Callable, Optional

import numpy as np

from economy.economies import Economy, excess_demand
from geometry.sphere import project_tangent
from utils.errors import DomainError
from dynamics.shared import Mechanism, RunStatus, Trajectory

logger = logging.getLogger(__name__)


def rk4_step(f: Callable[[np.ndarray], np.ndarray], y: np.ndarray, dt: float) -> np.ndarray:
    """Classical fourth-order Runge-Kutta step for an autonomous system."""
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _n_steps(dt: float, t_end: float) -> int:
    if not dt > 0 or not t_end > 0:
        raise ValueError(f"dt and t_end must be positive, got dt={dt}, t_end={t_end}")
    return max(1, int(round(t_end / dt)))


def _record(trajectory: Trajectory, time: float, p: np.ndarray, xi_norm: float) -> None:
    norm = np.linalg.norm(p)
    trajectory.append(time, p / norm, xi_norm, norm=norm)


def _run(trajectory: Trajectory, f, y0: np.ndarray, n: int, dt: float, economy: Economy) -> Trajectory:
    dim = trajectory.n_commodities
    y = y0
    _record(trajectory, 0.0, y[:dim], np.linalg.norm(excess_demand(economy, y[:dim])))
    for step in range(1, n + 1):
        try:
            y = rk4_step(f, y, dt)
            xi = excess_demand(economy, y[:dim])
        except DomainError as e:
            trajectory.status = RunStatus.DOMAIN_EXIT
            raise DomainError(
                f"{trajectory.mechanism.value} left the positive orthant at step {step}",
                last_valid=trajectory.final_price,
                trajectory=trajectory,
                details={"step": step},
            ) from e
        _record(trajectory, step * dt, y[:dim], np.linalg.norm(xi))
    trajectory.status = RunStatus.COMPLETED
    return trajectory


def integrate_classical_continuous(p0: np.ndarray, economy: Economy, k: float, dt: float, t_end: float,
                                   p_star: Optional[np.ndarray] = None) -> Trajectory:
    """dp/dt = k |p| xi(p). The flow is tangent to the sphere, so |p| drifts only by integration error."""

    def f(p):
        return k * np.linalg.norm(p) * excess_demand(economy, p)

    trajectory = Trajectory(Mechanism.CLASSICAL_CONTINUOUS, economy.n_commodities, p_star=p_star)
    return _run(trajectory, f, np.array(p0, dtype=np.float64), _n_steps(dt, t_end), dt, economy)


def integrate_second_order_continuous(p0: np.ndarray, v0: Optional[np.ndarray], economy: Economy, k: float,
                                      gamma: float, dt: float, t_end: float,
                                      p_star: Optional[np.ndarray] = None) -> Trajectory:
    """p'' = k |p| xi(p) - gamma p' - p |p'|^2 / |p|^2, integrated on (p, v).

    The centripetal term keeps the motion on the sphere; v0 is projected onto
    the tangent plane at p0 (zero when omitted).
    """
    n = economy.n_commodities
    p0 = np.array(p0, dtype=np.float64)
    unit0 = p0 / np.linalg.norm(p0)
    v0 = np.zeros(n) if v0 is None else project_tangent(v0, unit0).components

    def f(y):
        p, v = y[:n], y[n:]
        norm_sq = float(np.dot(p, p))
        acceleration = k * np.sqrt(norm_sq) * excess_demand(economy, p) - gamma * v - p * (np.dot(v, v) / norm_sq)
        return np.concatenate([v, acceleration])

    trajectory = Trajectory(Mechanism.SECOND_ORDER_CONTINUOUS, n, p_star=p_star)
    return _run(trajectory, f, np.concatenate([p0, v0]), _n_steps(dt, t_end), dt, economy)
