"""Exact invariants of G2-structures on closed spin 7-manifolds."""

from ._backend import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
