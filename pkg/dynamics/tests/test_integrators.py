"""Tests for the RK4 integrators."""

import numpy as np
import pytest

from economy.economies import (
    LinearizedEconomy,
    cobb_douglas_symmetric_2good,
    linearized_from_spectrum,
    price_vector,
    scarf_economy,
)
from geometry.sphere import tangent_basis
from utils.errors import DomainError
from dynamics.integrators import integrate_classical_continuous, integrate_second_order_continuous, rk4_step
from dynamics.oscillator import linearized_second_order_angle
from dynamics.shared import RunStatus


def test_rk4_exponential():
    """y' = -y integrated to t = 1."""
    y = np.array([1.0])
    for _ in range(100):
        y = rk4_step(lambda v: -v, y, 0.01)
    assert abs(y[0] - np.exp(-1.0)) < 1e-10


def test_classical_continuous_converges_at_linear_rate():
    """Cobb-Douglas angle decays like exp(-k lambda_m t) with lambda_m = sqrt(2)."""
    economy = cobb_douglas_symmetric_2good()
    p_star = price_vector([1.0, 1.0])
    trajectory = integrate_classical_continuous(price_vector([2.0, 1.0]), economy, k=1.0, dt=0.01, t_end=10.0,
                                                p_star=p_star)
    assert trajectory.status == RunStatus.COMPLETED
    assert len(trajectory) == 1001
    angles = trajectory.angle_eq
    ratio = angles[1000] / angles[500]
    assert abs(ratio / np.exp(-5.0 * np.sqrt(2.0)) - 1.0) < 1e-2
    assert max(abs(n - 1.0) for n in trajectory.norms) <= 1e-8


def test_second_order_continuous_matches_linear_oscillator():
    """Small-angle motion follows the damped oscillator over one period."""
    economy = linearized_from_spectrum([1.0, 1.0], [-1.0])
    p_star = economy.p_star
    u = tangent_basis(p_star)[:, 0]
    theta0 = 0.01
    p0 = p_star * np.cos(theta0) + u * np.sin(theta0)
    gamma = 0.5
    period = 2 * np.pi / np.sqrt(1.0 - gamma ** 2 / 4)
    trajectory = integrate_second_order_continuous(p0, None, economy, k=1.0, gamma=gamma, dt=1e-3, t_end=period,
                                                   p_star=p_star)
    expected = np.abs(linearized_second_order_angle(np.array(trajectory.times), theta0, gamma, 1.0, 1.0))
    assert np.max(np.abs(np.array(trajectory.angle_eq) - expected)) <= 0.01 * theta0


def test_second_order_continuous_stays_on_sphere():
    """The centripetal term keeps |p| = 1 up to integration error."""
    economy = cobb_douglas_symmetric_2good()
    trajectory = integrate_second_order_continuous(price_vector([2.0, 1.0]), [0.1, -0.3], economy, k=1.0, gamma=1.0,
                                                   dt=1e-3, t_end=5.0)
    assert max(abs(n - 1.0) for n in trajectory.norms) <= 1e-8


def test_equilibrium_is_fixed():
    """Starting at p* with zero velocity never moves."""
    economy = cobb_douglas_symmetric_2good()
    p_star = price_vector([1.0, 1.0])
    trajectory = integrate_second_order_continuous(p_star, None, economy, k=1.0, gamma=0.5, dt=0.01, t_end=1.0,
                                                   p_star=p_star)
    assert all(np.allclose(p, p_star, rtol=0.0, atol=1e-15) for p in trajectory.prices)


def test_domain_exit_keeps_partial_trajectory():
    """An expanding unprojected economy drives a price to zero."""
    economy = LinearizedEconomy([1.0, 1.0], [[10.0, 0.0], [0.0, 10.0]], project=False)
    with pytest.raises(DomainError) as excinfo:
        integrate_classical_continuous(np.array([0.8, 0.6]), economy, k=1.0, dt=0.01, t_end=2.0)
    trajectory = excinfo.value.trajectory
    assert trajectory.status == RunStatus.DOMAIN_EXIT
    assert len(trajectory) > 1
    assert np.all(excinfo.value.last_valid > 0)


def test_scarf_classical_orbit_stays_away_from_equilibrium():
    """Classical adjustment circles Scarf's equilibrium without approaching it."""
    economy = scarf_economy()
    p_star = price_vector([1.0, 1.0, 1.0])
    trajectory = integrate_classical_continuous(price_vector([1.0, 1.1, 0.9]), economy, k=1.0, dt=0.01,
                                                t_end=50.0, p_star=p_star)
    assert trajectory.status == RunStatus.COMPLETED
    assert min(trajectory.angle_eq) >= 0.5 * trajectory.angle_eq[0]
