"""Weighted flag varieties - exact Hilbert series, constructions and verification"""

__version__ = "1.0.0"
