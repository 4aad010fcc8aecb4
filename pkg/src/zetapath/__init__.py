"""Toolkit for a level-15 genus-one modular curve and its 96 avatar
functions, with a numerical tracer that follows avatar values through the
Riemann zeta function to connect consecutive critical-line zeros."""

__version__ = "0.1.0"
