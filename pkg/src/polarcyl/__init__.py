"""Exact verification tools for polar cylinders on del Pezzo surfaces."""

__version__ = "0.1.0"
