"""Monogenicity and Galois classification of x^{2p} + a x^p + b^p."""

__version__ = "0.1.0"
