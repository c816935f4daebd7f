"""Coefficient and L-value toolkit for Saito-Kurokawa lifts, half-integral
weight forms and imaginary quadratic class groups."""

__version__ = "0.1.0"
