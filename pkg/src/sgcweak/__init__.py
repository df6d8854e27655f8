"""Sparse-grid stochastic collocation for weak integration of SDE and SPDE."""

__version__ = "0.1.0"
