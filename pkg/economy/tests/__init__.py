"""Economy tests package."""
