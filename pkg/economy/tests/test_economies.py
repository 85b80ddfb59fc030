"""Tests for the bundled economies and their excess demand."""

import numpy as np
import pytest

from economy.economies import (
    CobbDouglasEconomy,
    Consumer,
    LeontiefEconomy,
    LinearizedEconomy,
    cobb_douglas_symmetric_2good,
    excess_demand,
    linearized_from_spectrum,
    price_vector,
    random_price,
    scarf_economy,
)
from utils.errors import DimensionMismatch, DomainError


def test_price_vector_normalizes():
    """Positive inputs are scaled to unit norm."""
    p = price_vector([3.0, 4.0])
    assert np.allclose(p, [0.6, 0.8])
    assert abs(np.linalg.norm(p) - 1.0) < 1e-15


def test_price_vector_rejects_non_positive():
    """Zero or negative components are outside the domain."""
    with pytest.raises(DomainError):
        price_vector([1.0, 0.0])
    with pytest.raises(DomainError):
        price_vector([1.0, -2.0])
    with pytest.raises(DimensionMismatch):
        price_vector([1.0])


def test_random_price_is_on_positive_sphere():
    """Seeded draws land on the positive part of the unit sphere."""
    rng = np.random.default_rng(7)
    for _ in range(50):
        p = random_price(4, rng)
        assert np.all(p > 0)
        assert abs(np.linalg.norm(p) - 1.0) < 1e-12


def test_cobb_douglas_2good_values():
    """Two-good Cobb-Douglas excess demand at p proportional to (2, 1)."""
    economy = cobb_douglas_symmetric_2good()
    xi = excess_demand(economy, price_vector([2.0, 1.0]))
    assert np.allclose(xi, [-0.25, 0.5], atol=1e-14)

    # Homogeneous of degree zero: same value off the sphere
    assert np.allclose(economy.excess_demand([20.0, 10.0]), [-0.25, 0.5], atol=1e-14)


def test_cobb_douglas_equilibrium_is_symmetric():
    """xi vanishes at equal prices."""
    economy = cobb_douglas_symmetric_2good()
    assert np.array_equal(economy.excess_demand(price_vector([1.0, 1.0])), [0.0, 0.0])


def test_cobb_douglas_rejects_bad_weights():
    """Weights that do not sum to one are refused."""
    with pytest.raises(ValueError):
        CobbDouglasEconomy([Consumer(np.array([0.5, 0.6]), np.array([1.0, 1.0]))])


def test_missing_supply_is_rejected():
    """Every commodity needs a positive total supply."""
    with pytest.raises(ValueError):
        CobbDouglasEconomy([Consumer(np.array([0.5, 0.5]), np.array([1.0, 0.0]))])


def test_scarf_excess_demand_formula():
    """Scarf demand matches the closed form p_i/(p_i+p_{i+1}) + p_{i-1}/(p_{i-1}+p_i) - 1."""
    economy = scarf_economy()
    p = price_vector([1.0, 2.0, 3.0])
    expected = np.array([
        p[i] / (p[i] + p[(i + 1) % 3]) + p[i - 1] / (p[i - 1] + p[i]) - 1.0 for i in range(3)
    ])
    assert isinstance(economy, LeontiefEconomy)
    assert np.allclose(economy.excess_demand(p), expected, atol=1e-15)
    assert np.allclose(economy.excess_demand(price_vector([1.0, 1.0, 1.0])), 0.0, atol=1e-15)


def test_domain_and_dimension_errors():
    """Evaluation outside the orthant or with the wrong length raises."""
    economy = cobb_douglas_symmetric_2good()
    with pytest.raises(DomainError):
        economy.excess_demand([1.0, 0.0])
    with pytest.raises(DomainError):
        economy.excess_demand([1.0, float("nan")])
    with pytest.raises(DimensionMismatch):
        economy.excess_demand([1.0, 1.0, 1.0])


def test_linearized_projected_is_tangent():
    """Projected linearized economies satisfy Walras' law exactly and vanish at p*."""
    economy = linearized_from_spectrum([1.0, 2.0, 2.0], [-1.0, -3.0], rotation_seed=3)
    assert np.allclose(economy.excess_demand(economy.p_star), 0.0, atol=1e-15)
    p = price_vector([2.0, 1.0, 1.5])
    xi = economy.excess_demand(p)
    assert abs(np.dot(p, xi)) < 1e-14


def test_linearized_circle_reduction():
    """On the two-good circle xi = -lambda sin(theta) cos(theta) along the tangent."""
    lam = 2.0
    economy = linearized_from_spectrum([1.0, 1.0], [-lam])
    theta = 0.3
    u = np.array([1.0, -1.0]) / np.sqrt(2.0)
    p = economy.p_star * np.cos(theta) + u * np.sin(theta)
    tau = -economy.p_star * np.sin(theta) + u * np.cos(theta)
    xi = economy.excess_demand(p)
    assert np.allclose(xi, -lam * np.sin(theta) * np.cos(theta) * tau, atol=1e-14)


def test_linearized_unprojected_breaks_walras():
    """The unprojected variant keeps J verbatim and is a negative control."""
    economy = LinearizedEconomy([1.0, 1.0], [[-1.0, 0.0], [0.0, -1.0]], project=False)
    p = price_vector([2.0, 1.0])
    assert abs(np.dot(p, economy.excess_demand(p))) > 1e-3


def test_linearized_shape_mismatch():
    """Jacobian shape must match p*."""
    with pytest.raises(DimensionMismatch):
        LinearizedEconomy([1.0, 1.0], [[1.0, 0.0, 0.0]])


def _cobb_douglas_by_hand(alphas, endowments, p):
    """Budget and demand consumer by consumer, good by good."""
    n = len(p)
    demand = [0.0] * n
    supply = [0.0] * n
    for weights, holdings in zip(alphas, endowments):
        budget = sum(p[i] * holdings[i] for i in range(n))
        for i in range(n):
            demand[i] += weights[i] * budget / p[i]
            supply[i] += holdings[i]
    return [demand[i] - supply[i] for i in range(n)]


def test_cobb_douglas_matches_consumer_by_consumer_sum():
    """Vectorised excess demand agrees with the per-consumer sum to 1e-12."""
    rng = np.random.default_rng(21)
    for n_goods, n_consumers in [(2, 1), (3, 4), (5, 7)]:
        alphas = rng.dirichlet(np.ones(n_goods), size=n_consumers)
        endowments = rng.uniform(0.1, 2.0, size=(n_consumers, n_goods))
        economy = CobbDouglasEconomy([Consumer(a, w) for a, w in zip(alphas, endowments)])
        for _ in range(20):
            p = random_price(n_goods, rng)
            expected = _cobb_douglas_by_hand(alphas.tolist(), endowments.tolist(), p.tolist())
            assert np.allclose(economy.excess_demand(p), expected, rtol=1e-12, atol=1e-12)
