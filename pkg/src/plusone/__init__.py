"""Exact separation and membership for successor-enriched fragments of first-order logic on words."""

__version__ = "0.1.0"
