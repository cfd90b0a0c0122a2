"""Generalized Wu kernels: exact construction, verification and interpolation."""

__version__ = "0.1.0"
