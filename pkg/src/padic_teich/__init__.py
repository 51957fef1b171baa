"""Exact p-adic analysis: numbers, series diffeomorphisms, integration and Tate theta functions."""
from .padic import PadicNumber, PrimeContext

__all__ = ["PadicNumber", "PrimeContext"]
