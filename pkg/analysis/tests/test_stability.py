"""Tests for eigen-analysis and decay-rate fits."""

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
from utils.errors import NotAnEquilibrium, NotConverging
from analysis.stability import eigen_analysis, fit_decay_rate, fit_decay_rate_series, fit_oscillation_frequency
from dynamics.integrators import integrate_second_order_continuous
from dynamics.oscillator import decay_rate
from dynamics.shared import Mechanism, Trajectory


def _characteristic_roots(J):
    """Eigenvalues from the Faddeev-LeVerrier characteristic polynomial."""
    n = J.shape[0]
    coefficients = [1.0]
    M = np.zeros_like(J)
    for k in range(1, n + 1):
        M = J @ M + coefficients[-1] * np.eye(n)
        coefficients.append(-np.trace(J @ M) / k)
    return np.roots(coefficients)


def _sort(values):
    return sorted(values, key=lambda v: (round(v.real, 6), round(v.imag, 6)))


def test_cobb_douglas_spectrum():
    """Tangent eigenvalue -sqrt(2) and a zero mode along p*."""
    report = eigen_analysis(cobb_douglas_symmetric_2good(), [1.0, 1.0], k=1.0, gamma=1.0)
    assert report.stable
    assert report.zero_mode_ok
    assert report.lambda_m == pytest.approx(np.sqrt(2.0), rel=1e-6)
    assert report.classical_rate == pytest.approx(np.sqrt(2.0), rel=1e-6)
    assert report.predicted_rate == pytest.approx(decay_rate(1.0, 1.0, np.sqrt(2.0)), rel=1e-6)
    assert min(abs(v) for v in report.eigenvalues) < 1e-8


def test_constructed_spectrum():
    """Linearized economy with tangent eigenvalues {-2, -5} gives lambda_m = 2."""
    economy = linearized_from_spectrum([1.0, 2.0, 2.0], [-2.0, -5.0], rotation_seed=4)
    report = eigen_analysis(economy, economy.p_star)
    assert report.lambda_m == pytest.approx(2.0, rel=1e-6)
    assert report.zero_mode_residual < 1e-8
    assert not report.complex_modes


def test_eigenvalues_match_characteristic_polynomial():
    """Full spectrum agrees with an independent polynomial root computation."""
    for economy, p_star in [
        (scarf_economy(), [1.0, 1.0, 1.0]),
        (linearized_from_spectrum([1.0, 2.0, 3.0], [-1.0, -3.0], rotation_seed=2), [1.0, 2.0, 3.0]),
    ]:
        report = eigen_analysis(economy, p_star)
        expected = _characteristic_roots(report.jacobian)
        assert np.allclose(_sort(report.eigenvalues), _sort(expected), atol=1e-6)


def test_scarf_is_not_stable():
    """Scarf's equilibrium has purely imaginary tangent modes +-0.75i."""
    report = eigen_analysis(scarf_economy(), [1.0, 1.0, 1.0])
    assert not report.stable
    assert report.complex_modes
    assert report.lambda_m is None
    assert sorted(v.imag for v in report.tangent_eigenvalues) == pytest.approx([-0.75, 0.75], abs=1e-6)
    assert all(v.real >= -1e-6 for v in report.tangent_eigenvalues)


def test_corrupted_jacobian_fails_zero_mode():
    """An unprojected Jacobian does not annihilate p*."""
    economy = LinearizedEconomy([1.0, 1.0], [[-1.0, 0.3], [0.2, -1.0]], project=False)
    report = eigen_analysis(economy, [1.0, 1.0])
    assert not report.zero_mode_ok


def test_not_an_equilibrium():
    with pytest.raises(NotAnEquilibrium):
        eigen_analysis(cobb_douglas_symmetric_2good(), [2.0, 1.0])


def _circle_trajectory(times, thetas):
    """Trajectory on the two-good circle at signed angles theta from (1,1)/sqrt(2)."""
    p_star = price_vector([1.0, 1.0])
    u = np.array([1.0, -1.0]) / np.sqrt(2.0)
    trajectory = Trajectory(Mechanism.SECOND_ORDER_CONTINUOUS, 2, p_star=p_star)
    for t, theta in zip(times, thetas):
        trajectory.append(t, p_star * np.cos(theta) + u * np.sin(theta), 0.0)
    return trajectory, p_star


def test_fit_pure_exponential():
    """Monotone decay is recovered to 1e-6."""
    times = np.linspace(0.0, 20.0, 2001)
    trajectory, p_star = _circle_trajectory(times, 0.1 * np.exp(-0.7 * times))
    assert fit_decay_rate(trajectory, p_star) == pytest.approx(0.7, abs=1e-6)


def test_fit_damped_oscillation():
    """Envelope fit of exp(-gamma t / 2) cos(omega t) returns gamma / 2."""
    times = np.linspace(0.0, 30.0, 3001)
    trajectory, p_star = _circle_trajectory(times, 0.1 * np.exp(-0.25 * times) * np.cos(2.0 * times))
    assert fit_decay_rate(trajectory, p_star) == pytest.approx(0.25, rel=0.02)


def test_fit_rejects_growth():
    times = np.linspace(0.0, 5.0, 50)
    with pytest.raises(NotConverging):
        fit_decay_rate_series(times, 0.01 * np.exp(0.3 * times))


def _linearized_run(gamma, t_end, theta0=0.05):
    economy = linearized_from_spectrum([1.0, 1.0], [-1.0])
    p_star = economy.p_star
    u = tangent_basis(p_star)[:, 0]
    p0 = p_star * np.cos(theta0) + u * np.sin(theta0)
    return integrate_second_order_continuous(p0, None, economy, k=1.0, gamma=gamma, dt=1e-3, t_end=t_end,
                                             p_star=p_star), p_star


@pytest.mark.parametrize("gamma,t_end", [(0.5, 40.0), (1.0, 30.0), (1.5, 24.0)])
def test_second_order_decay_matches_prediction(gamma, t_end):
    """Fitted decay of the continuous second-order run is within 5% of -Re(r)."""
    trajectory, p_star = _linearized_run(gamma, t_end)
    predicted = -decay_rate(gamma, 1.0, 1.0).real
    assert fit_decay_rate(trajectory, p_star) == pytest.approx(predicted, rel=0.05)


def test_undamped_frequency():
    """Without damping the angle oscillates at sqrt(k lambda_m) with constant amplitude."""
    trajectory, p_star = _linearized_run(0.0, 20.0)
    assert fit_oscillation_frequency(trajectory, p_star) == pytest.approx(1.0, rel=0.01)
    assert max(trajectory.angle_eq[len(trajectory) // 2:]) == pytest.approx(0.05, rel=0.01)


def test_fit_ignores_rounding_floor():
    """Points after the angle reaches rounding noise do not bias the fit."""
    times = np.linspace(0.0, 60.0, 6001)
    angles = 0.1 * np.exp(-times) + 1e-17 * (1.0 + np.sin(13.0 * times))
    assert fit_decay_rate_series(times, angles) == pytest.approx(1.0, rel=1e-3)
