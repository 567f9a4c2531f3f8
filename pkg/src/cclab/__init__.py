"""cclab: a workbench for a symmetric lambda calculus and its combinatory twin."""

__version__ = "0.1.0"
