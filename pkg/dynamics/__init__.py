"""Dynamics package."""
