"""Dynamics tests package."""
