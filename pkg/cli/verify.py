"""Property battery for an economy: Walras' law, homogeneity, zero mode, sphere preservation."""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from economy.economies import Economy, LinearizedEconomy, random_price
from economy.equilibrium import find_equilibrium, jacobian
from economy.properties import check_homogeneity, check_walras
from geometry.sphere import project_tangent
from utils.errors import TatonnementError
from dynamics.shared import DynamicsState
from dynamics.steppers import MAGNITUDE_TOL, step_second_order_discrete

logger = logging.getLogger(__name__)

HOMOGENEITY_SCALES = (1e-3, 1.0, 1e3)
ZERO_MODE_RELATIVE_TOL = 1e-6
SPHERE_TOL = 1e-12
INTERIOR_FLOOR = 0.05
# small second-order steps for the sphere check
STEP_K = 1.0
STEP_GAMMA_HAT = 0.5
STEP_DT = 0.1


@dataclass
class CheckResult:
    """Outcome of one property check."""
    name: str
    passed: bool
    detail: str


def interior_price(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit price with every component at least INTERIOR_FLOOR."""
    while True:
        p = random_price(n, rng)
        if np.min(p) >= INTERIOR_FLOOR:
            return p


def locate_equilibrium(economy: Economy, p0: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
    """Known p* for linearized economies, otherwise Newton from the uniform price then from p0."""
    if isinstance(economy, LinearizedEconomy):
        return economy.p_star
    starts = [np.ones(economy.n_commodities)]
    if p0 is not None:
        starts.append(p0)
    for start in starts:
        try:
            return find_equilibrium(economy, start)
        except TatonnementError as e:
            logger.info(f"Equilibrium search from {np.asarray(start).tolist()} failed: {e.message}")
    return None


def check_walras_battery(economy: Economy, rng: np.random.Generator, samples: int) -> CheckResult:
    failures = sum(not check_walras(economy, random_price(economy.n_commodities, rng)) for _ in range(samples))
    return CheckResult("walras", failures == 0, f"{samples - failures}/{samples} points")


def check_homogeneity_battery(economy: Economy, rng: np.random.Generator, samples: int) -> CheckResult:
    failures = 0
    for _ in range(samples):
        p = random_price(economy.n_commodities, rng)
        failures += sum(not check_homogeneity(economy, p, scale) for scale in HOMOGENEITY_SCALES)
    total = samples * len(HOMOGENEITY_SCALES)
    return CheckResult("homogeneity", failures == 0, f"{total - failures}/{total} evaluations")


def check_zero_mode(economy: Economy, p_star: Optional[np.ndarray]) -> CheckResult:
    if p_star is None:
        return CheckResult("zero_mode", False, "no equilibrium found")
    J = jacobian(economy, p_star)
    residual = float(np.linalg.norm(J @ p_star))
    bound = ZERO_MODE_RELATIVE_TOL * float(np.linalg.norm(J, 2))
    return CheckResult("zero_mode", residual <= bound, f"|J p*| = {residual:.3e} (bound {bound:.3e})")


def check_sphere_preservation(economy: Economy, rng: np.random.Generator, steps: int) -> CheckResult:
    """One second-order step from each of `steps` random states stays on the sphere."""
    worst_norm = 0.0
    worst_residual = 0.0
    for _ in range(steps):
        p = interior_price(economy.n_commodities, rng)
        velocity = project_tangent(0.01 * rng.standard_normal(economy.n_commodities), p).components
        q = p - velocity
        if np.any(q <= 0):
            q = p
        state = DynamicsState.initial_discrete(p, q / np.linalg.norm(q))
        try:
            state = step_second_order_discrete(state, economy, STEP_K, STEP_GAMMA_HAT, STEP_DT)
        except TatonnementError as e:
            return CheckResult("sphere", False, f"{e.type}: {e.message}")
        worst_norm = max(worst_norm, abs(float(np.linalg.norm(state.p_current)) - 1.0))
        worst_residual = max(worst_residual, state.magnitude_residual)
    passed = worst_norm <= SPHERE_TOL and worst_residual <= MAGNITUDE_TOL
    return CheckResult(
        "sphere", passed, f"max ||p|-1| = {worst_norm:.1e}, max closed-form residual = {worst_residual:.1e}"
    )


def run_property_battery(economy: Economy, seed: int, samples: int = 1000, steps: int = 100) -> List[CheckResult]:
    """All property checks with one seeded generator."""
    rng = np.random.default_rng(seed)
    results = [
        check_walras_battery(economy, rng, samples),
        check_homogeneity_battery(economy, rng, samples),
        check_zero_mode(economy, locate_equilibrium(economy)),
        check_sphere_preservation(economy, rng, steps),
    ]
    for result in results:
        log = logger.info if result.passed else logger.warning
        log(f"{result.name}: {'pass' if result.passed else 'FAIL'} ({result.detail})")
    return results
