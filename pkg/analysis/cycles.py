"""Two-point limit cycles of the discrete second-order process.

A two-point cycle alternates between prices a and b separated by the angle
alpha. One transition of the cycle constrains alpha through

    (1 - cos^2 alpha) (1 + (1 - g) cos alpha)^2 = k^2 cos^2 alpha |xi_hat(a)|^2

and for large damping g the first root behaves like alpha = k |xi_hat| / g.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from economy.economies import Economy, excess_demand, price_vector
from geometry.sphere import angle_between
from utils.config import config
from utils.errors import TatonnementError
from dynamics.runner import run
from dynamics.shared import DynamicsConfig, Mechanism, Trajectory

logger = logging.getLogger(__name__)

LARGE_DAMPING = 5.0
ROOT_GRID_POINTS = 4096


@dataclass
class CycleReport:
    """A detected two-point cycle; alpha is symmetric in (a, b)."""
    a: np.ndarray
    b: np.ndarray
    alpha: float
    repeats: int
    xi_norm_at_a: float
    xi_hat_norm_at_a: Optional[float] = None
    eq21_residual: Optional[float] = None
    alpha_predicted: Optional[float] = None


@dataclass
class SweepRow:
    """One damping value of a cycle-angle sweep."""
    gamma_hat: float
    alpha_measured: float = float("nan")
    alpha_predicted: float = float("nan")
    eq21_residual: float = float("nan")
    converged: bool = False
    final_angle_eq: float = float("nan")
    error: Optional[str] = None


def cycle_relation(alpha: float, k: float, gamma_hat: float, xi_hat_norm: float) -> float:
    """Left minus right side of the cycle-angle relation."""
    c = math.cos(alpha)
    return (1.0 - c * c) * (1.0 + (1.0 - gamma_hat) * c) ** 2 - k * k * c * c * xi_hat_norm * xi_hat_norm


def cycle_residual(a, alpha: float, k: float, gamma_hat: float, economy: Economy, dt: float = 1.0) -> float:
    """Cycle-angle relation evaluated with xi_hat = dt^2 xi(a)."""
    xi_hat_norm = dt * dt * float(np.linalg.norm(excess_demand(economy, a)))
    return cycle_relation(alpha, k, gamma_hat, xi_hat_norm)


def predicted_cycle_angle(k: float, gamma_hat: float, xi_hat_norm: float) -> float:
    """Large-damping cycle angle k |xi_hat| / gamma_hat; NaN without damping."""
    if gamma_hat <= 0:
        logger.warning("No large-damping prediction without damping (gamma_hat = 0)")
        return float("nan")
    if gamma_hat < LARGE_DAMPING:
        logger.warning(f"gamma_hat = {gamma_hat} is below {LARGE_DAMPING}; k|xi_hat|/gamma_hat is a rough estimate")
    return k * xi_hat_norm / gamma_hat


def solve_cycle_angle(k: float, gamma_hat: float, xi_hat_norm: float) -> Optional[float]:
    """First positive root of the cycle-angle relation in (0, pi/2].

    A grid scan brackets the first sign change, brentq refines it. Returns None
    when no root exists.
    """
    if xi_hat_norm == 0:
        return 0.0
    grid = np.linspace(0.0, math.pi / 2, ROOT_GRID_POINTS + 1)[1:]
    values = np.array([cycle_relation(x, k, gamma_hat, xi_hat_norm) for x in grid])
    lower_value = cycle_relation(0.0, k, gamma_hat, xi_hat_norm)
    lower = 0.0
    for x, value in zip(grid, values):
        if value == 0.0:
            return float(x)
        if np.sign(value) != np.sign(lower_value):
            return float(brentq(cycle_relation, lower, x, args=(k, gamma_hat, xi_hat_norm), xtol=1e-15, rtol=1e-15))
        lower, lower_value = x, value
    return None


def detect_two_point_cycle(trajectory: Trajectory, tol: Optional[float] = None,
                           min_repeats: Optional[int] = None) -> Optional[CycleReport]:
    """Check whether the tail of a trajectory alternates between two distinct prices.

    The last 2 * min_repeats + 2 states must satisfy angle(p_i, p_{i+2}) <= tol
    while successive states stay more than tol apart.
    """
    tol = config.CYCLE_TOL if tol is None else tol
    min_repeats = config.CYCLE_MIN_REPEATS if min_repeats is None else min_repeats
    window = 2 * min_repeats + 2
    if len(trajectory) < window:
        logger.debug(f"Trajectory of {len(trajectory)} states is too short for cycle detection")
        return None
    prices = trajectory.unit_prices[-window:]
    for i in range(window - 2):
        if angle_between(prices[i], prices[i + 2]) > tol:
            return None
    for i in range(window - 1):
        if angle_between(prices[i], prices[i + 1]) <= tol:
            return None
    a, b = prices[-2], prices[-1]
    return CycleReport(
        a=a,
        b=b,
        alpha=angle_between(a, b),
        repeats=min_repeats,
        xi_norm_at_a=trajectory.xi_norm[-2],
    )


def annotate_cycle(report: CycleReport, k: float, gamma_hat: float, dt: float = 1.0) -> CycleReport:
    """Fill in the residual and the large-damping prediction for a detected cycle."""
    report.xi_hat_norm_at_a = dt * dt * report.xi_norm_at_a
    report.eq21_residual = cycle_relation(report.alpha, k, gamma_hat, report.xi_hat_norm_at_a)
    if gamma_hat > 0:
        report.alpha_predicted = predicted_cycle_angle(k, gamma_hat, report.xi_hat_norm_at_a)
    return report


def detect_period(trajectory: Trajectory, max_period: int = 8, tol: Optional[float] = None,
                  min_repeats: Optional[int] = None) -> Optional[int]:
    """Smallest period P <= max_period repeated over the trajectory tail (best effort)."""
    tol = config.CYCLE_TOL if tol is None else tol
    min_repeats = config.CYCLE_MIN_REPEATS if min_repeats is None else min_repeats
    prices = trajectory.unit_prices
    for period in range(1, max_period + 1):
        window = period * (min_repeats + 1)
        if len(prices) < window:
            return None
        tail = prices[-window:]
        if all(angle_between(tail[i], tail[i + period]) <= tol for i in range(window - period)):
            return period
    return None


def _sweep_row(economy: Economy, k: float, gamma_hat: float, p0: np.ndarray, dt: float, steps: int,
               p_star: Optional[np.ndarray], tol: float, min_repeats: int) -> SweepRow:
    row = SweepRow(gamma_hat=gamma_hat)
    dynamics = DynamicsConfig(mechanism=Mechanism.SECOND_ORDER_DISCRETE, k=k, gamma_hat=gamma_hat, dt=dt,
                              steps=steps)
    try:
        trajectory = run(dynamics, economy, p0, p_star=p_star)
    except TatonnementError as e:
        logger.warning(f"Sweep row gamma_hat={gamma_hat} failed: {e.message}")
        row.error = f"{e.type}: {e.message}"
        return row
    row.final_angle_eq = trajectory.angle_eq[-1]
    row.converged = trajectory.angle_prev[-1] <= tol
    report = detect_two_point_cycle(trajectory, tol, min_repeats)
    if report is not None:
        annotate_cycle(report, k, gamma_hat, dt)
        row.alpha_measured = report.alpha
        row.eq21_residual = report.eq21_residual
        if report.alpha_predicted is not None:
            row.alpha_predicted = report.alpha_predicted
    return row


def cycle_angle_sweep(economy: Economy, k: float, gamma_hat_list: Sequence[float], p0, dt: float = 1.0,
                      steps: int = 2000, p_star=None, tol: Optional[float] = None,
                      min_repeats: Optional[int] = None, workers: Optional[int] = None) -> List[SweepRow]:
    """Run the discrete second-order process once per damping value and tabulate cycles.

    Rows are independent and may run on several threads; results keep the order
    of `gamma_hat_list`. A failing row records its error and the sweep continues.
    """
    tol = config.CYCLE_TOL if tol is None else tol
    min_repeats = config.CYCLE_MIN_REPEATS if min_repeats is None else min_repeats
    workers = config.SWEEP_WORKERS if workers is None else workers
    p0 = price_vector(p0)
    p_star = price_vector(p_star) if p_star is not None else None
    logger.info(f"Sweeping {len(gamma_hat_list)} damping values on {economy.name} with {workers} worker(s)")

    def task(gamma_hat):
        return _sweep_row(economy, k, float(gamma_hat), p0, dt, steps, p_star, tol, min_repeats)

    if workers <= 1:
        return [task(g) for g in gamma_hat_list]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(task, gamma_hat_list))
