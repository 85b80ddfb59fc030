"""Hypersphere geometry package."""
