"""Geometry tests package."""
