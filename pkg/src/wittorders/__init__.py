"""Exact computations with orders over truncated Witt rings."""
__version__ = "0.1.0"
