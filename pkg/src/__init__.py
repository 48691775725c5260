"""
opcontour

Contour-integral solution operators for abstract Schrödinger, wave and
semilinear wave problems on finite-dimensional model operators.
"""

__version__ = "0.1.0"
