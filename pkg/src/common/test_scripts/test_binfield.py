"""
Binary Field Tests
==================

Arithmetic in F_{2^k}, element serialization and projective point enumeration.
"""

import numpy as np
import pytest

from src.common.binfield import (
    FieldElem, frobenius, get_field, inv, is_irreducible, projective_points,
)
from src.common.errors import FieldMismatchError, ZeroInverseError


def test_moduli_are_irreducible():
    for k in range(1, 9):
        assert is_irreducible(get_field(k).modulus)


def test_f16_multiplication_uses_t4_t_1():
    f16 = get_field(4)
    # t * t^3 = t^4 = t + 1
    assert f16.mul_bits(0b10, 0b1000) == 0b11


@pytest.mark.parametrize("k", [1, 2, 3, 4, 8])
def test_every_nonzero_element_has_an_inverse(k):
    field = get_field(k)
    for a in field.elements()[1:]:
        assert (a * inv(a)).bits == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverseError):
        inv(get_field(3).zero)


def test_elements_are_fixed_by_the_full_frobenius():
    field = get_field(4)
    for a in field.elements():
        assert (a ** 16) == a
        assert frobenius(a) == a * a


def test_mixed_fields_are_rejected():
    a = get_field(2).elem(1)
    b = get_field(4).elem(1)
    with pytest.raises(FieldMismatchError):
        a + b
    with pytest.raises(FieldMismatchError):
        a * b


def test_element_serialization():
    a = get_field(4).elem(0b1011)
    assert str(a) == "F16:0b"
    assert FieldElem.parse("F16:0b") == a
    with pytest.raises(ValueError):
        FieldElem.parse("F12:01")


def test_out_of_range_element_is_rejected():
    with pytest.raises(ValueError):
        FieldElem(4, get_field(2))


def test_unknown_extension_degree():
    with pytest.raises(ValueError):
        get_field(9)


def test_projective_plane_over_f2():
    points = projective_points(3, 1)
    assert points.shape == (7, 3)
    assert len({tuple(row) for row in points}) == 7
    for row in points:
        assert row[np.flatnonzero(row)[0]] == 1


def test_projective_point_counts():
    assert projective_points(5, 1).shape[0] == 31
    assert projective_points(5, 4).shape[0] == (16 ** 5 - 1) // 15
    assert projective_points(3, 2).shape[0] == 21


def test_projective_points_are_read_only():
    points = projective_points(4, 1)
    with pytest.raises(ValueError):
        points[0, 0] = 0
