"""Two-type seller model whose mean price follows the damped second-order recurrence.

Type-a sellers move their price by mu * xi (inventory signal); type-b sellers
repeat nu times the previous mean change (trend following). The mean change
obeys dp_t = f_a mu xi(p_{t-1}) + f_b nu dp_{t-1}.
"""

import logging
from typing import Tuple

import numpy as np

from economy.economies import Economy, excess_demand
from utils.errors import DomainError
from dynamics.shared import SellerPopulation

logger = logging.getLogger(__name__)


def step_agent_model(population: SellerPopulation, economy: Economy) -> SellerPopulation:
    """Advance every seller by one period.

    Individual type-b prices may leave the orthant; the run stops only when the
    mean price does, or when a type-a seller in heterogeneous mode needs xi at a
    non-positive price.
    """
    mean_price = population.mean_price
    xi_mean = excess_demand(economy, mean_price)
    trend = population.nu * population.mean_change

    if population.heterogeneous:
        own_prices = population.prices[population.type_a]
        if np.any(own_prices <= 0):
            raise DomainError(
                f"A type-a seller price is not positive at period {population.step_index + 1}",
                last_valid=mean_price,
                details={"step": population.step_index + 1},
            )
        xi_each = np.array([excess_demand(economy, p) for p in own_prices])
        changes_a = population.mu * xi_each
        xi_gap = float(np.linalg.norm(xi_each.mean(axis=0) - xi_mean)) if len(xi_each) else 0.0
    else:
        changes_a = np.tile(population.mu * xi_mean, (population.n_a, 1))
        xi_gap = 0.0

    changes = np.empty_like(population.prices)
    changes[population.type_a] = changes_a
    changes[~population.type_a] = trend
    prices = population.prices + changes
    if np.any(prices.mean(axis=0) <= 0):
        raise DomainError(
            f"Mean price left the positive orthant at period {population.step_index + 1}",
            last_valid=mean_price,
            details={"step": population.step_index + 1},
        )
    return population.advanced(prices, changes, xi_gap)


def step_aggregate(mean_price: np.ndarray, mean_change: np.ndarray, economy: Economy, f_a: float, mu: float,
                   nu: float) -> Tuple[np.ndarray, np.ndarray]:
    """Aggregate recurrence written as a damped second-order update.

    dp_t = dp_{t-1} + f_a mu xi(p_{t-1}) - (1 - f_b nu) dp_{t-1}.
    """
    f_b = 1.0 - f_a
    change = mean_change + f_a * mu * excess_demand(economy, mean_price) - (1.0 - f_b * nu) * mean_change
    return mean_price + change, change


def aggregate_equivalence_check(population: SellerPopulation, economy: Economy, steps: int) -> float:
    """Largest deviation between the seller mean price and the aggregate recurrence."""
    if population.heterogeneous:
        raise ValueError("The aggregate recurrence only holds for homogeneous type-a sellers")
    mean_price, mean_change = population.mean_price, population.mean_change
    deviation = 0.0
    for _ in range(steps):
        population = step_agent_model(population, economy)
        mean_price, mean_change = step_aggregate(
            mean_price, mean_change, economy, population.f_a, population.mu, population.nu
        )
        deviation = max(deviation, float(np.max(np.abs(population.mean_price - mean_price))))
    logger.debug(f"Aggregate equivalence over {steps} steps: max deviation {deviation:.3e}")
    return deviation
