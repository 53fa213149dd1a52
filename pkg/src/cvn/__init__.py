"""Exact computations in Outer Space with the asymmetric Lipschitz metric."""

__version__ = "0.1.0"
