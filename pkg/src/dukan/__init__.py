"""Exact Dold-Kan and Dwyer-Kan correspondences for free (du)plicial abelian groups."""

__version__ = "0.1.0"
