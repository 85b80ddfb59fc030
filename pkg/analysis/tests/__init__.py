"""Analysis tests package."""
