"""Run any price-adjustment mechanism from a DynamicsConfig."""

import logging
from typing import Optional

import numpy as np

from economy.economies import Economy, excess_demand, price_vector
from utils.errors import DomainError
from dynamics.agents import step_agent_model
from dynamics.integrators import integrate_classical_continuous, integrate_second_order_continuous
from dynamics.shared import DynamicsConfig, DynamicsState, Mechanism, RunStatus, SellerPopulation, Trajectory
from dynamics.steppers import step_classical_discrete, step_second_order_discrete

logger = logging.getLogger(__name__)


def _domain_exit(trajectory: Trajectory, error: DomainError, step: int) -> DomainError:
    trajectory.status = RunStatus.DOMAIN_EXIT
    return DomainError(
        f"{trajectory.mechanism.value} left the positive orthant at step {step}",
        last_valid=trajectory.final_price,
        trajectory=trajectory,
        details={"step": step, "cause": error.message},
    )


def _run_classical_discrete(config: DynamicsConfig, economy: Economy, p0: np.ndarray,
                            p_star: Optional[np.ndarray]) -> Trajectory:
    trajectory = Trajectory(config.mechanism, economy.n_commodities, p_star=p_star)
    p = p0
    trajectory.append(0.0, p, np.linalg.norm(excess_demand(economy, p)))
    for step in range(1, config.n_steps + 1):
        try:
            p = step_classical_discrete(p, economy, config.k, config.dt, normalize=config.normalize)
            xi = excess_demand(economy, p)
        except DomainError as e:
            raise _domain_exit(trajectory, e, step) from e
        trajectory.append(step * config.dt, p / np.linalg.norm(p), np.linalg.norm(xi), norm=np.linalg.norm(p))
    return trajectory


def _run_second_order_discrete(config: DynamicsConfig, economy: Economy, p0: np.ndarray,
                               p_previous: Optional[np.ndarray], p_star: Optional[np.ndarray]) -> Trajectory:
    trajectory = Trajectory(config.mechanism, economy.n_commodities, p_star=p_star)
    if config.velocity_reversal:
        trajectory.flags.append("velocity_reversal")
        logger.info(f"gamma_hat = {config.gamma_hat} > 1: the memory term reverses the previous move")
    state = DynamicsState.initial_discrete(p0, p_previous)
    trajectory.append(0.0, p0, np.linalg.norm(excess_demand(economy, p0)), scale=1.0, magnitude_residual=0.0)
    for step in range(1, config.n_steps + 1):
        try:
            state = step_second_order_discrete(state, economy, config.k, config.gamma_hat, config.dt)
            xi = excess_demand(economy, state.p_current)
        except DomainError as e:
            raise _domain_exit(trajectory, e, step) from e
        trajectory.append(step * config.dt, state.p_current, np.linalg.norm(xi), scale=state.scale,
                          magnitude_residual=state.magnitude_residual)
    return trajectory


def _run_agent_model(config: DynamicsConfig, economy: Economy, p0: np.ndarray,
                     p_star: Optional[np.ndarray], seed: int) -> Trajectory:
    n_a = int(round(config.f_a * config.n_sellers))
    population = SellerPopulation.create(
        p0, n_a, config.n_sellers - n_a, config.mu, config.nu,
        heterogeneous=config.heterogeneous, spread=config.price_spread,
        rng=np.random.default_rng(seed),
    )
    if abs(population.f_a - config.f_a) > 1e-12:
        logger.warning(f"f_a = {config.f_a} rounded to {population.f_a} with {config.n_sellers} sellers")
    trajectory = Trajectory(config.mechanism, economy.n_commodities, p_star=p_star)
    mean = population.mean_price
    trajectory.append(0.0, mean / np.linalg.norm(mean), np.linalg.norm(excess_demand(economy, mean)),
                      norm=np.linalg.norm(mean))
    max_gap = 0.0
    for step in range(1, config.n_steps + 1):
        try:
            population = step_agent_model(population, economy)
            mean = population.mean_price
            xi = excess_demand(economy, mean)
        except DomainError as e:
            raise _domain_exit(trajectory, e, step) from e
        max_gap = max(max_gap, population.xi_gap)
        norm = np.linalg.norm(mean)
        trajectory.append(step * config.dt, mean / norm, np.linalg.norm(xi), norm=norm)
    if config.heterogeneous:
        logger.info(f"Largest gap between mean seller signal and xi(mean price): {max_gap:.3e}")
    return trajectory


def run(config: DynamicsConfig, economy: Economy, p0, p_star=None, v0=None, p_previous=None,
        seed: int = 0) -> Trajectory:
    """Integrate or iterate the configured mechanism from p0.

    On leaving the positive orthant a DomainError is raised carrying the
    partial trajectory (status DOMAIN_EXIT).
    """
    p0 = price_vector(p0)
    p_star = price_vector(p_star) if p_star is not None else None
    if p_previous is not None:
        p_previous = price_vector(p_previous)
    logger.info(
        f"Running {config.mechanism.value} on {economy.name} for {config.n_steps} steps (k={config.k}, dt={config.dt})"
    )

    if config.mechanism == Mechanism.CLASSICAL_CONTINUOUS:
        trajectory = integrate_classical_continuous(p0, economy, config.k, config.dt, config.n_steps * config.dt,
                                                    p_star=p_star)
    elif config.mechanism == Mechanism.SECOND_ORDER_CONTINUOUS:
        trajectory = integrate_second_order_continuous(p0, v0, economy, config.k, config.gamma, config.dt,
                                                       config.n_steps * config.dt, p_star=p_star)
    elif config.mechanism == Mechanism.CLASSICAL_DISCRETE:
        trajectory = _run_classical_discrete(config, economy, p0, p_star)
    elif config.mechanism == Mechanism.SECOND_ORDER_DISCRETE:
        trajectory = _run_second_order_discrete(config, economy, p0, p_previous, p_star)
    else:
        trajectory = _run_agent_model(config, economy, p0, p_star, seed)

    trajectory.status = RunStatus.COMPLETED
    logger.info(
        f"Finished {config.mechanism.value}: {len(trajectory)} states, final |xi| = {trajectory.xi_norm[-1]:.3e}"
    )
    return trajectory
