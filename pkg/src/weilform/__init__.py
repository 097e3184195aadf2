"""Exact Frobenius-module, duality and lambda-ring computations."""

__version__ = "0.1.0"
