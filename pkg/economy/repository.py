"""Repository for economy definition files (JSON)."""

import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from economy.economies import (
    CobbDouglasEconomy,
    Consumer,
    Economy,
    LeontiefEconomy,
    LinearizedEconomy,
)
from economy.schemas import ConsumerDefinition, EconomyDefinition, EconomyKind
from utils.errors import ConfigError, TatonnementError
from utils.float_utils import to_float_list

logger = logging.getLogger(__name__)

class EconomyRepository:
    """Build economies from definition files and write them back losslessly."""

    @staticmethod
    def from_definition(definition: EconomyDefinition) -> Economy:
        """Construct the economy described by a validated definition."""
        try:
            if definition.kind == EconomyKind.LINEARIZED:
                return LinearizedEconomy(
                    definition.p_star,
                    definition.jacobian,
                    project=definition.project,
                    name=definition.name,
                )
            consumers = [Consumer(c.alphas, c.endowments) for c in definition.consumers]
            if definition.kind == EconomyKind.COBB_DOUGLAS:
                return CobbDouglasEconomy(consumers, name=definition.name)
            return LeontiefEconomy(consumers, name=definition.name)
        except (ValueError, TatonnementError) as e:
            raise ConfigError(f"Invalid {definition.kind.value} economy: {e}") from e

    @staticmethod
    def to_definition(economy: Economy) -> EconomyDefinition:
        """Definition that rebuilds an identical economy."""
        if isinstance(economy, LinearizedEconomy):
            return EconomyDefinition(
                kind=EconomyKind.LINEARIZED,
                name=economy.name,
                p_star=to_float_list(economy.p_star_input),
                jacobian=[to_float_list(row) for row in economy.jacobian_input],
                project=economy.project,
            )
        return EconomyDefinition(
            kind=economy.kind,
            name=economy.name,
            consumers=[
                ConsumerDefinition(alphas=to_float_list(a), endowments=to_float_list(w))
                for a, w in zip(economy.alphas, economy.endowments)
            ],
        )

    @staticmethod
    def load(path: Union[str, Path]) -> Economy:
        """Load an economy definition file."""
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Economy file not found: {path}")
        try:
            definition = EconomyDefinition.model_validate_json(path.read_text())
        except ValidationError as e:
            raise ConfigError(f"Invalid economy file {path}: {e}") from e
        economy = EconomyRepository.from_definition(definition)
        logger.info(f"Loaded {definition.kind.value} economy '{economy.name}' from {path}")
        return economy

    @staticmethod
    def save(economy: Economy, path: Union[str, Path]) -> Path:
        """Write an economy definition file."""
        path = Path(path)
        definition = EconomyRepository.to_definition(economy)
        payload = definition.model_dump(mode="json", exclude_none=True)
        path.write_text(json.dumps(payload, indent=2) + "\n")
        logger.info(f"Saved economy '{economy.name}' to {path}")
        return path
