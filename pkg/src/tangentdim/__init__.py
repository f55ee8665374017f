"""Monoid-valued dimensions for tangent categories."""

__version__ = "0.1.0"
