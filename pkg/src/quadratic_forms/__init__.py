"""
Quadratic Forms
===============

Quadratic forms over F_2: classification into types I-IV, normal forms,
orthogonal groups and their action on forms.
"""

from .group_strategies import get_orthogonal_group_strategy
from .orthgroup import OrthGroup, act, orbit_representatives, orthogonal_group, span_discard
from .quadform import FormType, QuadraticForm, classify, get_type_table

__all__ = [
    'FormType',
    'QuadraticForm',
    'classify',
    'get_type_table',
    'OrthGroup',
    'act',
    'orbit_representatives',
    'orthogonal_group',
    'span_discard',
    'get_orthogonal_group_strategy',
]
