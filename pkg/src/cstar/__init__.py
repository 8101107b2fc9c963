"""Exact combinatorics of homogeneous deformations of rational C*-surfaces."""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
