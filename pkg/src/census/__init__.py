"""
Census
======

Exhaustive, resumable search for canonical genus-5 curves over F_2 whose
pencil of quadrics contains only forms of type III and IV.
"""

from .census_pipeline import CensusConfig, build_A, build_B, pencil_filter, run_census
from .census_records import CensusSummary, derive_theorems, read_census_file, write_census_file

__all__ = [
    'CensusConfig',
    'build_A',
    'build_B',
    'pencil_filter',
    'run_census',
    'CensusSummary',
    'derive_theorems',
    'read_census_file',
    'write_census_file',
]
