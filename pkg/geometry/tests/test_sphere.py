"""Tests for sphere geometry helpers."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from geometry.sphere import angle_between, project_tangent, renormalize, tangent_basis
from utils.errors import DegenerateVector, DimensionMismatch


def test_project_tangent_is_orthogonal():
    """Projected vectors are perpendicular to the base point."""
    p = np.array([0.6, 0.8])
    t = project_tangent([1.0, 2.0], p)
    assert abs(np.dot(t.components, p)) < 1e-15
    assert np.array_equal(t.base_point, p)


def test_project_tangent_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        project_tangent([1.0, 2.0, 3.0], [0.6, 0.8])


def test_angle_between():
    """Known angles, including tiny ones."""
    p = np.array([1.0, 0.0])
    assert angle_between(p, p) == 0.0
    assert abs(angle_between(p, [0.0, 1.0]) - np.pi / 2) < 1e-15
    tiny = 1e-9
    q = np.array([np.cos(tiny), np.sin(tiny)])
    assert abs(angle_between(p, q) - tiny) < 1e-20
    assert angle_between(p, q) == angle_between(q, p)


def test_renormalize():
    """Returns the unit vector and A = 1/|p~|."""
    unit, scale = renormalize([3.0, 4.0])
    assert np.allclose(unit, [0.6, 0.8])
    assert scale == 0.2
    with pytest.raises(DegenerateVector):
        renormalize([0.0, 0.0])
    with pytest.raises(DegenerateVector):
        renormalize([np.inf, 1.0])


def test_tangent_basis_is_orthonormal():
    p = np.ones(4) / 2.0
    basis = tangent_basis(p)
    assert basis.shape == (4, 3)
    assert np.allclose(basis.T @ basis, np.eye(3), atol=1e-14)
    assert np.allclose(p @ basis, 0.0, atol=1e-14)


unit_coordinate = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
coordinate = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


@given(p=arrays(np.float64, 4, elements=unit_coordinate), v=arrays(np.float64, 4, elements=coordinate))
def test_projection_properties(p, v):
    """Projection is idempotent and a tangent step never shrinks the price vector."""
    p = p / np.linalg.norm(p)
    t = project_tangent(v, p).components
    again = project_tangent(t, p).components
    scale = max(1.0, float(np.linalg.norm(v)))
    assert np.allclose(again, t, rtol=0.0, atol=1e-13 * scale)
    assert np.linalg.norm(p + t) >= 1.0 - 1e-13 * scale


@given(v=arrays(np.float64, 3, elements=unit_coordinate))
def test_renormalize_output_is_unit(v):
    unit, scale = renormalize(v)
    assert abs(np.linalg.norm(unit) - 1.0) <= 1e-14
    assert scale * np.linalg.norm(v) == pytest.approx(1.0, rel=1e-14)


def test_project_tangent_examples():
    """Projecting (1, 0) at the diagonal gives (0.5, -0.5); projecting p itself gives 0."""
    p = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert np.allclose(project_tangent([1.0, 0.0], p).components, [0.5, -0.5], rtol=0.0, atol=1e-15)
    assert np.allclose(project_tangent(p, p).components, 0.0, rtol=0.0, atol=1e-15)
