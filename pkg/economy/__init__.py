"""Economy package."""
