"""Geometry on the unit price hypersphere: tangent projection, angles, renormalization."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.linalg import null_space

from utils.errors import DegenerateVector, DimensionMismatch
from utils.float_utils import to_array

DEGENERATE_NORM = 1e-14


@dataclass(frozen=True)
class TangentVector:
    """A vector in the tangent plane of the sphere at `base_point`."""
    components: np.ndarray
    base_point: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def _check_dims(v: np.ndarray, p: np.ndarray) -> None:
    if v.shape != p.shape:
        raise DimensionMismatch(f"Dimension mismatch: {v.shape[0]} vs {p.shape[0]}")


def project_tangent(v, p) -> TangentVector:
    """Return (I - p p^T) v for a unit vector p."""
    v = to_array(v)
    p = to_array(p)
    _check_dims(v, p)
    components = v - p * np.dot(p, v)
    return TangentVector(components=components, base_point=p)


def angle_between(p, q) -> float:
    """Unsigned angle in [0, pi] between two unit vectors.

    Computed as atan2(|q - (p.q) p|, p.q); same value as arccos(clamp(p.q, -1, 1))
    but keeps full relative precision for tiny angles.
    """
    p = to_array(p)
    q = to_array(q)
    _check_dims(p, q)
    cos_theta = float(np.clip(np.dot(p, q), -1.0, 1.0))
    sin_theta = float(np.linalg.norm(q - cos_theta * p))
    return float(np.arctan2(sin_theta, cos_theta))


def renormalize(p_tilde) -> Tuple[np.ndarray, float]:
    """Scale onto the unit sphere; returns (unit vector, A = 1/|p_tilde|)."""
    p_tilde = to_array(p_tilde)
    norm = float(np.linalg.norm(p_tilde))
    if not np.isfinite(norm) or norm < DEGENERATE_NORM:
        raise DegenerateVector(f"Cannot renormalize vector with norm {norm!r}")
    return p_tilde / norm, 1.0 / norm


def tangent_basis(p) -> np.ndarray:
    """Orthonormal basis (n x (n-1) columns) of the plane perpendicular to p."""
    p = to_array(p)
    return null_space(p.reshape(1, -1))
