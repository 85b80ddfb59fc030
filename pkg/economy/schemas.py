"""Economy definition file schemas."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

# Enums
class EconomyKind(str, Enum):
    COBB_DOUGLAS = "cobb_douglas"
    SCARF_LEONTIEF = "scarf_leontief"
    LINEARIZED = "linearized"

# Consumer Schema
class ConsumerDefinition(BaseModel):
    """One consumer: preference weights (Cobb-Douglas) or need proportions (Leontief)."""
    alphas: List[float] = Field(..., min_length=2)
    endowments: List[float] = Field(..., min_length=2)

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.alphas) != len(self.endowments):
            raise ValueError(
                f"alphas has {len(self.alphas)} entries but endowments has {len(self.endowments)}"
            )
        if any(a < 0 for a in self.alphas):
            raise ValueError("alphas must be non-negative")
        if any(w < 0 for w in self.endowments):
            raise ValueError("endowments must be non-negative")
        return self

# Economy definition file
class EconomyDefinition(BaseModel):
    """Top-level economy definition file.

    Consumer economies: {"kind": "cobb_douglas" | "scarf_leontief", "consumers": [...]}
    Linearized economies: {"kind": "linearized", "p_star": [...], "jacobian": [[...]]}
    """
    kind: EconomyKind
    name: Optional[str] = None
    consumers: Optional[List[ConsumerDefinition]] = None
    p_star: Optional[List[float]] = None
    jacobian: Optional[List[List[float]]] = None
    # False keeps the Jacobian as given (negative controls only)
    project: bool = True

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind == EconomyKind.LINEARIZED:
            if self.p_star is None or self.jacobian is None:
                raise ValueError("linearized economies need p_star and jacobian")
            n = len(self.p_star)
            if n < 2:
                raise ValueError("p_star needs at least 2 commodities")
            if len(self.jacobian) != n or any(len(row) != n for row in self.jacobian):
                raise ValueError(f"jacobian must be {n}x{n}")
        else:
            if not self.consumers:
                raise ValueError(f"{self.kind.value} economies need a non-empty consumers list")
            n = len(self.consumers[0].alphas)
            if any(len(c.alphas) != n for c in self.consumers):
                raise ValueError("all consumers must cover the same commodities")
        return self

    @property
    def n_commodities(self) -> int:
        if self.kind == EconomyKind.LINEARIZED:
            return len(self.p_star)
        return len(self.consumers[0].alphas)
