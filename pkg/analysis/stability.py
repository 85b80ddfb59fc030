"""Linear stability of an equilibrium and decay-rate fits."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import eigvals

from economy.economies import Economy, excess_demand, price_vector
from economy.equilibrium import jacobian
from geometry.sphere import tangent_basis
from utils.errors import NotAnEquilibrium, NotConverging
from dynamics.oscillator import classical_rate, decay_rate
from dynamics.shared import Trajectory

logger = logging.getLogger(__name__)

EQUILIBRIUM_RESIDUAL_TOL = 1e-8
ZERO_MODE_RELATIVE_TOL = 1e-6
# finite-difference noise floor for real parts, relative to |J|
SPECTRAL_TOL = 1e-8
# angles below this fraction of the largest one are rounding noise
FIT_FLOOR_RELATIVE = 1e-10


@dataclass
class StabilityReport:
    """Spectrum of D xi at p* and derived decay rates."""
    equilibrium: np.ndarray
    jacobian: np.ndarray
    eigenvalues: List[complex]
    tangent_eigenvalues: List[complex]
    zero_mode_residual: float
    zero_mode_ok: bool
    stable: bool
    complex_modes: bool
    lambda_m: Optional[float] = None
    classical_rate: Optional[float] = None
    predicted_rate: Optional[complex] = None
    fitted_rate: Optional[float] = None
    notes: List[str] = field(default_factory=list)


def eigen_analysis(economy: Economy, p_star, h: Optional[float] = None, k: Optional[float] = None,
                   gamma: Optional[float] = None) -> StabilityReport:
    """Eigen-decompose the finite-difference Jacobian at p*.

    The zero mode along p* (homogeneity) is deflated by restricting to the tangent
    plane. lambda_m is the smallest decay |Re| among tangent modes, reported only
    when all of them have negative real part.
    """
    p_star = price_vector(p_star)
    residual = float(np.linalg.norm(excess_demand(economy, p_star)))
    if residual > EQUILIBRIUM_RESIDUAL_TOL:
        raise NotAnEquilibrium(
            f"|xi(p*)| = {residual:.3e} exceeds {EQUILIBRIUM_RESIDUAL_TOL}",
            details={"residual": residual},
        )

    J = jacobian(economy, p_star, h)
    J_norm = float(np.linalg.norm(J, 2))
    zero_mode_residual = float(np.linalg.norm(J @ p_star))
    zero_mode_ok = zero_mode_residual <= ZERO_MODE_RELATIVE_TOL * max(J_norm, np.finfo(float).tiny)
    if not zero_mode_ok:
        logger.warning(f"J p* = {zero_mode_residual:.3e}: excess demand is not homogeneous at p*")

    basis = tangent_basis(p_star)
    tangent = eigvals(basis.T @ J @ basis)
    full = eigvals(J)
    stable = bool(np.all(tangent.real < -SPECTRAL_TOL * max(J_norm, 1.0)))
    complex_modes = bool(np.any(np.abs(tangent.imag) > 1e-12 * max(J_norm, 1.0)))

    report = StabilityReport(
        equilibrium=p_star,
        jacobian=J,
        eigenvalues=[complex(v) for v in full],
        tangent_eigenvalues=[complex(v) for v in tangent],
        zero_mode_residual=zero_mode_residual,
        zero_mode_ok=zero_mode_ok,
        stable=stable,
        complex_modes=complex_modes,
    )
    if stable:
        report.lambda_m = float(np.min(-tangent.real)) * float(np.linalg.norm(p_star))
        if k is not None:
            report.classical_rate = classical_rate(k, report.lambda_m)
            if gamma is not None:
                report.predicted_rate = decay_rate(gamma, k, report.lambda_m)
    else:
        report.notes.append("tangent spectrum has eigenvalues with non-negative real part")
    if complex_modes:
        report.notes.append("complex tangent modes: oscillatory approach or orbiting")
    logger.info(
        f"Stability of {economy.name}: stable={stable}, lambda_m={report.lambda_m}, "
        f"tangent eigenvalues={report.tangent_eigenvalues}"
    )
    return report


def _local_maxima(values: np.ndarray) -> np.ndarray:
    inner = np.arange(1, len(values) - 1)
    mask = (values[inner] > values[inner - 1]) & (values[inner] >= values[inner + 1])
    return inner[mask]


def fit_decay_rate_series(times, angles) -> float:
    """Exponential decay rate of an angle series.

    Oscillating series are fitted through the envelope of local maxima in the
    second half; monotone ones through all positive points of that half. The
    series is cut after its last point above the rounding floor.
    """
    times = np.asarray(times, dtype=np.float64)
    angles = np.asarray(angles, dtype=np.float64)
    if len(angles) < 4 or not angles[-1] < angles[0]:
        raise NotConverging("Angle to equilibrium does not decrease over the run")
    above = np.nonzero(angles > FIT_FLOOR_RELATIVE * angles.max())[0]
    end = above[-1] + 1
    if end < 4:
        raise NotConverging("Angle falls to the rounding floor too quickly to fit")
    times, angles = times[:end], angles[:end]
    half = len(angles) // 2
    t_tail, a_tail = times[half:], angles[half:]
    peaks = _local_maxima(a_tail)
    if len(peaks) >= 2:
        t_fit, a_fit = t_tail[peaks], a_tail[peaks]
    else:
        positive = a_tail > 0
        t_fit, a_fit = t_tail[positive], a_tail[positive]
    if len(a_fit) < 2:
        raise NotConverging("Too few points to fit a decay rate")
    slope, _ = np.polyfit(t_fit, np.log(a_fit), 1)
    if not slope < 0:
        raise NotConverging(f"Fitted growth rate {slope:.3e} is not a decay")
    return float(-slope)


def fit_decay_rate(trajectory: Trajectory, p_star) -> float:
    """Decay rate of the angle to p* along a trajectory."""
    return fit_decay_rate_series(trajectory.times, trajectory.angles_to(price_vector(p_star)))


def fit_oscillation_frequency(trajectory: Trajectory, p_star) -> float:
    """Angular frequency from the spacing of successive maxima of the angle to p*.

    Maxima of |theta| for a damped oscillation are half a period apart.
    """
    angles = trajectory.angles_to(price_vector(p_star))
    peaks = _local_maxima(angles)
    if len(peaks) < 2:
        raise NotConverging("Fewer than two oscillation maxima in the trajectory")
    spacing = float(np.mean(np.diff(np.asarray(trajectory.times)[peaks])))
    return float(np.pi / spacing)
