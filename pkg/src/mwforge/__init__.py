"""Exact arithmetic and verification tools for elliptic curves over
function fields arising from Berger's construction."""

__version__ = "0.1.0"
