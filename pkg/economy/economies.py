"""Exchange economies and their excess-demand functions.

Every economy is defined on the open positive orthant. Excess demand is
continuous there, homogeneous of degree zero and satisfies Walras' law
p . xi(p) = 0. Economies are immutable after construction.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from economy.schemas import EconomyKind
from geometry.sphere import tangent_basis
from utils.errors import DegenerateVector, DimensionMismatch, DomainError
from utils.float_utils import to_array

logger = logging.getLogger(__name__)

# Type aliases for the domain vocabulary
PriceVector = np.ndarray
ExcessDemand = np.ndarray
JacobianMatrix = np.ndarray

ALPHA_SUM_TOL = 1e-12


def price_vector(components, normalize: bool = True) -> PriceVector:
    """Validate a strictly positive price vector and, by default, scale it to unit norm."""
    p = to_array(components).copy()
    if p.shape[0] < 2:
        raise DimensionMismatch(f"A price vector needs at least 2 commodities, got {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise DomainError(f"Non-finite price vector {p.tolist()}")
    if np.any(p <= 0):
        raise DomainError(f"Prices must be strictly positive, got {p.tolist()}")
    if normalize:
        norm = float(np.linalg.norm(p))
        if norm < 1e-300:
            raise DegenerateVector("Price vector has zero norm")
        p = p / norm
    return p


def random_price(n: int, rng: np.random.Generator) -> PriceVector:
    """Uniform draw on the positive part of the unit sphere (normalized |Gaussian|)."""
    while True:
        draw = np.abs(rng.standard_normal(n))
        if np.all(draw > 0):
            return draw / np.linalg.norm(draw)


@dataclass(frozen=True)
class Consumer:
    """Preference parameters and endowment of one consumer."""
    alphas: np.ndarray
    endowments: np.ndarray


class Economy(ABC):
    """An excess-demand function on the positive orthant."""

    kind: EconomyKind

    def __init__(self, n_commodities: int, name: Optional[str] = None):
        if n_commodities < 2:
            raise DimensionMismatch(f"Economies need at least 2 commodities, got {n_commodities}")
        self.n_commodities = n_commodities
        self.name = name or self.kind.value
        # positive-orthant domain flag
        self.positive_orthant = True

    def excess_demand(self, p) -> ExcessDemand:
        """Evaluate xi(p) after checking the domain; p need not be normalized."""
        p = to_array(p)
        if p.shape[0] != self.n_commodities:
            raise DimensionMismatch(
                f"Economy '{self.name}' has {self.n_commodities} commodities, price has {p.shape[0]}"
            )
        if not np.all(np.isfinite(p)) or np.any(p <= 0):
            raise DomainError(f"Price outside the positive orthant: {p.tolist()}", last_valid=None)
        return self._excess_demand(p)

    @abstractmethod
    def _excess_demand(self, p: np.ndarray) -> ExcessDemand:
        """Raw evaluation on a validated positive price."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, n_commodities={self.n_commodities})"


class _ConsumerEconomy(Economy):
    """Shared storage for economies built from consumer primitives."""

    def __init__(self, consumers: Sequence[Consumer], name: Optional[str] = None):
        if not consumers:
            raise ValueError("An economy needs at least one consumer")
        alphas = np.array([to_array(c.alphas) for c in consumers])
        endowments = np.array([to_array(c.endowments) for c in consumers])
        if alphas.shape != endowments.shape:
            raise DimensionMismatch("Consumer alphas and endowments must have the same shape")
        super().__init__(alphas.shape[1], name)
        if np.any(alphas < 0):
            raise ValueError("Consumer weights must be non-negative")
        if np.any(endowments < 0):
            raise ValueError("Endowments must be non-negative")
        total_supply = endowments.sum(axis=0)
        if np.any(total_supply <= 0):
            missing = np.flatnonzero(total_supply <= 0).tolist()
            raise ValueError(f"Commodities {missing} have no positive total supply")
        alphas.setflags(write=False)
        endowments.setflags(write=False)
        total_supply.setflags(write=False)
        self.alphas = alphas
        self.endowments = endowments
        self.total_supply = total_supply

    @property
    def consumers(self) -> List[Consumer]:
        return [Consumer(a.copy(), w.copy()) for a, w in zip(self.alphas, self.endowments)]

    def wealth(self, p: np.ndarray) -> np.ndarray:
        """Value of each consumer's endowment at prices p."""
        return self.endowments @ p


class CobbDouglasEconomy(_ConsumerEconomy):
    """Consumers maximize prod x_i^alpha_i; demand x_i = alpha_i * (p . w) / p_i."""

    kind = EconomyKind.COBB_DOUGLAS

    def __init__(self, consumers: Sequence[Consumer], name: Optional[str] = None):
        super().__init__(consumers, name)
        sums = self.alphas.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ALPHA_SUM_TOL):
            raise ValueError(f"Cobb-Douglas weights must sum to 1 per consumer, got {sums.tolist()}")

    def _excess_demand(self, p: np.ndarray) -> ExcessDemand:
        spending = self.alphas.T @ self.wealth(p)
        return spending / p - self.total_supply


class LeontiefEconomy(_ConsumerEconomy):
    """Consumers need goods in fixed proportions a; demand x = a * (p . w) / (p . a).

    The corner solution of max min_i x_i / a_i is computed in closed form.
    """

    kind = EconomyKind.SCARF_LEONTIEF

    def __init__(self, consumers: Sequence[Consumer], name: Optional[str] = None):
        super().__init__(consumers, name)
        if np.any(self.alphas.sum(axis=1) <= 0):
            raise ValueError("Each Leontief consumer needs at least one positive proportion")

    def _excess_demand(self, p: np.ndarray) -> ExcessDemand:
        scale = self.wealth(p) / (self.alphas @ p)
        return self.alphas.T @ scale - self.total_supply


class LinearizedEconomy(Economy):
    """Excess demand specified by its equilibrium and Jacobian.

    With `project=True` the Jacobian is replaced by P J P, P = I - p* p*^T, and
    xi(p) = (I - u u^T) J (u - p*) with u = p/|p|. This keeps homogeneity and
    Walras' law exact and gives D xi(p*) = P J P. With `project=False` the input
    is used verbatim, xi(p) = J (p - p*), which breaks both properties unless J
    already has the structure (negative controls).
    """

    kind = EconomyKind.LINEARIZED

    def __init__(self, p_star, jacobian, project: bool = True, name: Optional[str] = None):
        p_star_input = to_array(p_star).copy()
        jacobian_input = np.array(jacobian, dtype=np.float64)
        super().__init__(p_star_input.shape[0], name)
        if jacobian_input.shape != (self.n_commodities, self.n_commodities):
            raise DimensionMismatch(
                f"Jacobian shape {jacobian_input.shape} does not match {self.n_commodities} commodities"
            )
        self.p_star = price_vector(p_star_input)
        self.project = project
        if project:
            projector = np.eye(self.n_commodities) - np.outer(self.p_star, self.p_star)
            self.jacobian = projector @ jacobian_input @ projector
        else:
            self.jacobian = jacobian_input.copy()
        for array in (p_star_input, jacobian_input, self.p_star, self.jacobian):
            array.setflags(write=False)
        self.p_star_input = p_star_input
        self.jacobian_input = jacobian_input

    def _excess_demand(self, p: np.ndarray) -> ExcessDemand:
        if not self.project:
            return self.jacobian @ (p - self.p_star)
        u = p / np.linalg.norm(p)
        raw = self.jacobian @ (u - self.p_star)
        return raw - u * np.dot(u, raw)


def excess_demand(economy: Economy, p) -> ExcessDemand:
    """xi(p) for any economy kind."""
    return economy.excess_demand(p)


# Factories for the bundled economies

def cobb_douglas_symmetric_2good() -> CobbDouglasEconomy:
    """Two consumers with weights (0.5, 0.5); consumer 1 owns good 1, consumer 2 owns good 2."""
    return CobbDouglasEconomy(
        [
            Consumer(np.array([0.5, 0.5]), np.array([1.0, 0.0])),
            Consumer(np.array([0.5, 0.5]), np.array([0.0, 1.0])),
        ],
        name="cobb-douglas-2good",
    )


def scarf_economy(n: int = 3) -> LeontiefEconomy:
    """Scarf's example: consumer j owns one unit of good j and needs goods j and j+1 one-for-one."""
    consumers = []
    for j in range(n):
        needs = np.zeros(n)
        needs[j] = 1.0
        needs[(j + 1) % n] = 1.0
        owns = np.zeros(n)
        owns[j] = 1.0
        consumers.append(Consumer(needs, owns))
    return LeontiefEconomy(consumers, name=f"scarf-{n}good")


def linearized_from_spectrum(p_star, tangent_eigenvalues: Sequence[float],
                             rotation_seed: Optional[int] = None) -> LinearizedEconomy:
    """Symmetric linearized economy whose tangent-space spectrum is `tangent_eigenvalues`.

    The tangent basis is the orthonormal complement of p*, optionally rotated by a
    seeded random orthogonal matrix.
    """
    p_unit = price_vector(p_star)
    n = p_unit.shape[0]
    eigenvalues = to_array(tangent_eigenvalues)
    if eigenvalues.shape[0] != n - 1:
        raise DimensionMismatch(f"Need {n - 1} tangent eigenvalues, got {eigenvalues.shape[0]}")
    basis = tangent_basis(p_unit)
    if rotation_seed is not None:
        rng = np.random.default_rng(rotation_seed)
        q, _ = np.linalg.qr(rng.standard_normal((n - 1, n - 1)))
        basis = basis @ q
    jacobian = basis @ np.diag(eigenvalues) @ basis.T
    return LinearizedEconomy(p_unit, jacobian, project=True, name=f"linearized-{n}good")
