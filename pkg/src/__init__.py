"""
Gonality Census
===============

Maximal numbers of rational points on curves over F_2 of genus at most 5 with
fixed gonality: finite field and bit-matrix arithmetic, quadratic form
classification, orthogonal groups, Gröbner bases, curve certificates and the
exhaustive census of canonical genus-5 curves of gonality at least 5.
"""

__version__ = "1.0.0"
