"""Formal group laws of Weierstrass curves and the theta-stability check at p = 2."""

__version__ = "0.1.0"
