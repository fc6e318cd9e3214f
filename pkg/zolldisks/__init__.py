"""Holomorphic disks and moduli of Zoll projective structures on the sphere."""

__version__ = "0.1.0"
