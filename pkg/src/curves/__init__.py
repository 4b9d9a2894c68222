"""
Curves
======

Gröbner bases and Hilbert polynomials over F_2, smoothness of complete
intersections, point counts and gonality certificates for genus 1 to 5.
"""

from .curvekit import CurveRecord, GonalityCertificate, count_points, genus5_certificate
from .groebner import Ideal, groebner_basis, hilbert_polynomial, smooth_curve_check

__all__ = [
    'CurveRecord',
    'GonalityCertificate',
    'count_points',
    'genus5_certificate',
    'Ideal',
    'groebner_basis',
    'hilbert_polynomial',
    'smooth_curve_check',
]
