"""
Common Components
=================

Shared building blocks: F_{2^k} arithmetic, bit-packed linear algebra over F_2,
sparse polynomials over F_2, configuration, script logging and the error
hierarchy.
"""

from .binfield import FieldDesc, FieldElem, get_field, projective_points
from .bitlinalg import BinMatrix, BinVector, kernel, rank, solve_affine
from .config import CensusSettings, load_census_settings
from .errors import GonalityCensusError
from .polynomials import MultiPoly

__all__ = [
    'FieldDesc',
    'FieldElem',
    'get_field',
    'projective_points',
    'BinMatrix',
    'BinVector',
    'kernel',
    'rank',
    'solve_affine',
    'CensusSettings',
    'load_census_settings',
    'GonalityCensusError',
    'MultiPoly',
]
