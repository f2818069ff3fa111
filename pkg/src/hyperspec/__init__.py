"""Spectral invariants of k-uniform hypergraphs: traces, characteristic
polynomial coefficients, spectral radii and eigenvector constructions."""

from hyperspec.kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
