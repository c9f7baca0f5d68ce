"""Exact and modular q-series arithmetic for the third-order mock theta
function xi(q) and the partition-like coefficients p_xi(n) it generates.
"""

__version__ = "1.0.0"
