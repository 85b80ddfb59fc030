"""Linear damped-oscillator reference solutions near a stable equilibrium."""

import cmath
import math
from typing import Union

import numpy as np


def decay_rate(gamma: float, k: float, lambda_m: float) -> complex:
    """Slowest root r = -gamma/2 + sqrt(gamma^2/4 - k lambda_m) of r^2 + gamma r + k lambda_m.

    Re(r) is the exponential decay rate of the angle to p*; a nonzero imaginary
    part is the oscillation frequency.
    """
    discriminant = gamma * gamma / 4.0 - k * lambda_m
    if discriminant >= 0:
        return complex(-gamma / 2.0 + math.sqrt(discriminant), 0.0)
    return -gamma / 2.0 + cmath.sqrt(discriminant)


def classical_rate(k: float, lambda_m: float) -> float:
    """Decay rate of the classical continuous process, k lambda_m."""
    return k * lambda_m


def linearized_second_order_angle(t: Union[float, np.ndarray], theta0: float, gamma: float,
                                  k: float, lambda_m: float, omega0_dot: float = 0.0):
    """Signed solution of theta'' + gamma theta' + k lambda_m theta = 0."""
    t = np.asarray(t, dtype=np.float64)
    beta = gamma / 2.0
    omega_sq = k * lambda_m - beta * beta
    if omega_sq > 0:
        omega = math.sqrt(omega_sq)
        return np.exp(-beta * t) * (
            theta0 * np.cos(omega * t) + (omega0_dot + beta * theta0) / omega * np.sin(omega * t)
        )
    if omega_sq == 0:
        return np.exp(-beta * t) * (theta0 + (omega0_dot + beta * theta0) * t)
    root = math.sqrt(-omega_sq)
    r1, r2 = -beta + root, -beta - root
    c1 = (omega0_dot - r2 * theta0) / (r1 - r2)
    c2 = theta0 - c1
    return c1 * np.exp(r1 * t) + c2 * np.exp(r2 * t)
