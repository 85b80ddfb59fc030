"""Analysis of equilibria, decay rates and cycles."""
