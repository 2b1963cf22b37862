"""Partition and Brauer algebra centralizers, multidigraph censuses and Schur-Weyl checks."""

__version__ = "0.1.0"
