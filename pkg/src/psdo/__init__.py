"""Finite-section laboratory for order-0 pseudodifferential operators on the circle and the 2-torus."""

__version__ = "0.1.0"
