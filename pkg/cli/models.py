"""Scenario file and CLI output models."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from utils.config import config
from utils.errors import ConfigError
from dynamics.shared import DynamicsConfig


class AnalysisRequest(BaseModel):
    """Analyses to run after a simulation."""
    stability: bool = False
    cycles: bool = False
    sweep: Optional[List[float]] = Field(None, min_length=1)
    max_period: int = Field(8, gt=0)


class ScenarioConfig(BaseModel):
    """Scenario file: economy reference, dynamics and requested analyses.

    `economy` is resolved relative to the scenario file. Without `initial_price`
    a random interior price is drawn from `seed`.
    """
    economy: str
    dynamics: DynamicsConfig
    analysis: AnalysisRequest = Field(default_factory=AnalysisRequest)
    initial_price: Optional[List[float]] = Field(None, min_length=2)
    initial_velocity: Optional[List[float]] = None
    output_dir: str = "out"
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED, ge=0)
    verify_samples: int = Field(1000, gt=0)
    verify_steps: int = Field(100, gt=0)

    def economy_path(self, base_dir: Path) -> Path:
        path = Path(self.economy)
        return path if path.is_absolute() else base_dir / path


class SimulationSummary(BaseModel):
    """Contents of summary.json."""
    mechanism: str
    economy: str
    constants: Dict[str, Any]
    seed: int
    steps: int
    n_states: int
    status: str
    final_xi_norm: float
    final_angle_eq: Optional[float] = None
    converged: bool
    equilibrium: Optional[List[float]] = None
    flags: List[str] = Field(default_factory=list)
    cycle: Optional[Dict[str, Any]] = None
    period: Optional[int] = None
    stability: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None


def load_scenario(path: Union[str, Path]) -> Tuple[ScenarioConfig, Path]:
    """Read and validate a scenario file; returns it with its directory."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Scenario file not found: {path}")
    try:
        scenario = ScenarioConfig.model_validate(json.loads(path.read_text()))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Scenario file {path} is not valid JSON: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"Invalid scenario file {path}: {e}") from e
    return scenario, path.parent
