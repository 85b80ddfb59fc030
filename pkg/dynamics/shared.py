"""Shared types for the price-adjustment processes."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from geometry.sphere import angle_between


class Mechanism(str, Enum):
    """Price-adjustment processes."""
    CLASSICAL_CONTINUOUS = "classical_continuous"
    CLASSICAL_DISCRETE = "classical_discrete"
    SECOND_ORDER_CONTINUOUS = "second_order_continuous"
    SECOND_ORDER_DISCRETE = "second_order_discrete"
    AGENT_MODEL = "agent_model"


class DynamicsConfig(BaseModel):
    """Mechanism choice, constants and horizon.

    k carries units [demand]^-1 [T]^-1. Continuous second-order runs take gamma
    ([T]^-1); discrete second-order runs take the dimensionless gamma_hat = gamma * dt
    and use xi_hat = dt^2 * xi. The horizon is either `steps` or `t_end`.
    """
    model_config = ConfigDict(frozen=True)

    mechanism: Mechanism
    k: float = Field(1.0, gt=0)
    gamma: Optional[float] = Field(None, ge=0)
    gamma_hat: Optional[float] = Field(None, ge=0)
    dt: float = Field(0.01, gt=0)
    steps: Optional[int] = Field(None, gt=0)
    t_end: Optional[float] = Field(None, gt=0)
    # classical discrete: False follows p_{N+1} = p_N + k|p|xi dt verbatim
    normalize: bool = False
    # agent model
    mu: float = Field(0.1, ge=0)
    nu: float = Field(0.5, ge=0)
    f_a: float = Field(0.5, ge=0, le=1)
    n_sellers: int = Field(100, gt=0)
    heterogeneous: bool = False
    price_spread: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def check_damping_and_horizon(self):
        if self.mechanism == Mechanism.SECOND_ORDER_CONTINUOUS:
            if self.gamma is None or self.gamma_hat is not None:
                raise ValueError("second_order_continuous needs gamma (and no gamma_hat)")
        elif self.mechanism == Mechanism.SECOND_ORDER_DISCRETE:
            if self.gamma_hat is None or self.gamma is not None:
                raise ValueError("second_order_discrete needs gamma_hat (and no gamma)")
        elif self.gamma is not None or self.gamma_hat is not None:
            raise ValueError(f"{self.mechanism.value} takes no damping coefficient")
        if self.steps is None and self.t_end is None:
            raise ValueError("Set either steps or t_end")
        if self.steps is not None and self.t_end is not None:
            raise ValueError("Set only one of steps and t_end")
        return self

    @property
    def n_steps(self) -> int:
        if self.steps is not None:
            return self.steps
        return max(1, int(round(self.t_end / self.dt)))

    @property
    def velocity_reversal(self) -> bool:
        return self.gamma_hat is not None and self.gamma_hat > 1


@dataclass(frozen=True)
class DynamicsState:
    """State of the discrete second-order process: current and previous price.

    The velocity is implicit in (p_current, p_previous); `scale` is the last
    renormalization factor A.
    """
    p_current: np.ndarray
    p_previous: Optional[np.ndarray] = None
    step_index: int = 0
    scale: float = 1.0
    magnitude_residual: float = 0.0
    velocity_reversal: bool = False

    @classmethod
    def initial_discrete(cls, p0: np.ndarray, p_previous: Optional[np.ndarray] = None) -> "DynamicsState":
        """Zero initial velocity unless a previous price is given."""
        return cls(p_current=p0, p_previous=p0.copy() if p_previous is None else p_previous)


class RunStatus(str, Enum):
    """Run states."""
    RUNNING = "running"
    COMPLETED = "completed"
    DOMAIN_EXIT = "domain_exit"


@dataclass
class Trajectory:
    """Time-ordered prices with per-step diagnostics.

    Angles are computed on unit vectors. `scale` holds the renormalization factor A
    (discrete second-order runs, NaN otherwise); `norms` the norm of each iterate as
    produced by the stepper.
    """
    mechanism: Mechanism
    n_commodities: int
    p_star: Optional[np.ndarray] = None
    times: List[float] = field(default_factory=list)
    prices: List[np.ndarray] = field(default_factory=list)
    xi_norm: List[float] = field(default_factory=list)
    angle_prev: List[float] = field(default_factory=list)
    angle_eq: List[float] = field(default_factory=list)
    scale: List[float] = field(default_factory=list)
    norms: List[float] = field(default_factory=list)
    magnitude_residual: List[float] = field(default_factory=list)
    status: RunStatus = RunStatus.RUNNING
    flags: List[str] = field(default_factory=list)

    def append(self, time: float, price: np.ndarray, xi_norm: float, scale: float = float("nan"),
               norm: Optional[float] = None, magnitude_residual: float = float("nan")) -> None:
        if self.times and not time > self.times[-1]:
            raise ValueError(f"Trajectory times must increase: {time} after {self.times[-1]}")
        price = np.array(price, dtype=np.float64)
        norm = float(np.linalg.norm(price)) if norm is None else float(norm)
        unit = price / np.linalg.norm(price)
        self.angle_prev.append(
            angle_between(self._unit(self.prices[-1]), unit) if self.prices else float("nan")
        )
        self.angle_eq.append(
            angle_between(unit, self.p_star) if self.p_star is not None else float("nan")
        )
        self.times.append(float(time))
        self.prices.append(price)
        self.xi_norm.append(float(xi_norm))
        self.scale.append(float(scale))
        self.norms.append(norm)
        self.magnitude_residual.append(float(magnitude_residual))

    @staticmethod
    def _unit(price: np.ndarray) -> np.ndarray:
        return price / np.linalg.norm(price)

    def __len__(self) -> int:
        return len(self.prices)

    @property
    def price_array(self) -> np.ndarray:
        return np.array(self.prices).reshape(len(self.prices), self.n_commodities)

    @property
    def unit_prices(self) -> np.ndarray:
        prices = self.price_array
        return prices / np.linalg.norm(prices, axis=1, keepdims=True)

    @property
    def final_price(self) -> np.ndarray:
        return self.prices[-1]

    def angles_to(self, p_star: np.ndarray) -> np.ndarray:
        """Angle of every recorded price to a reference point."""
        return np.array([angle_between(u, p_star) for u in self.unit_prices])


@dataclass(frozen=True)
class SellerPopulation:
    """Type-a sellers respond to excess demand, type-b sellers follow the average trend.

    Row i of `prices` / `last_changes` belongs to seller i; `type_a` marks the
    inventory-watching sellers. The mean price change of the previous period is
    the mean of `last_changes`.
    """
    prices: np.ndarray
    last_changes: np.ndarray
    type_a: np.ndarray
    mu: float
    nu: float
    heterogeneous: bool = False
    step_index: int = 0
    xi_gap: float = float("nan")

    def __post_init__(self):
        if self.prices.shape[0] == 0:
            raise ValueError("A seller population needs at least one seller")
        if self.prices.shape != self.last_changes.shape or self.type_a.shape[0] != self.prices.shape[0]:
            raise ValueError("Seller arrays must agree in shape")
        if self.mu < 0 or self.nu < 0:
            raise ValueError("mu and nu must be non-negative")

    @classmethod
    def create(cls, p0: np.ndarray, n_a: int, n_b: int, mu: float, nu: float,
               initial_change: Optional[np.ndarray] = None, heterogeneous: bool = False,
               spread: float = 0.0, rng: Optional[np.random.Generator] = None) -> "SellerPopulation":
        """All sellers start at p0 (optionally jittered) with the same last change."""
        if n_a < 0 or n_b < 0 or n_a + n_b == 0:
            raise ValueError(f"Invalid seller counts n_a={n_a}, n_b={n_b}")
        n_sellers = n_a + n_b
        p0 = np.asarray(p0, dtype=np.float64)
        prices = np.tile(p0, (n_sellers, 1))
        if spread > 0:
            rng = rng or np.random.default_rng(0)
            prices = prices * np.exp(spread * rng.standard_normal(prices.shape))
        change = np.zeros_like(p0) if initial_change is None else np.asarray(initial_change, dtype=np.float64)
        last_changes = np.tile(change, (n_sellers, 1))
        type_a = np.zeros(n_sellers, dtype=bool)
        type_a[:n_a] = True
        return cls(prices=prices, last_changes=last_changes, type_a=type_a, mu=mu, nu=nu,
                   heterogeneous=heterogeneous)

    @property
    def n_a(self) -> int:
        return int(np.count_nonzero(self.type_a))

    @property
    def n_b(self) -> int:
        return int(self.type_a.shape[0] - self.n_a)

    @property
    def f_a(self) -> float:
        return self.n_a / self.type_a.shape[0]

    @property
    def f_b(self) -> float:
        return self.n_b / self.type_a.shape[0]

    @property
    def mean_price(self) -> np.ndarray:
        return self.prices.mean(axis=0)

    @property
    def mean_change(self) -> np.ndarray:
        return self.last_changes.mean(axis=0)

    def advanced(self, prices: np.ndarray, changes: np.ndarray, xi_gap: float) -> "SellerPopulation":
        return replace(self, prices=prices, last_changes=changes, step_index=self.step_index + 1,
                       xi_gap=xi_gap)
