"""
Linear Algebra over F_2 Tests
=============================
"""

import random

from src.common.bitlinalg import (
    BinMatrix, BinVector, in_span, invert, kernel, rank, random_invertible, solve_affine,
    span_basis, span_members,
)


def test_random_invertible_matrices_invert():
    rng = random.Random(0)
    for n in (2, 3, 5, 8):
        m = random_invertible(n, rng)
        inverse = invert(m)
        assert inverse is not None
        assert m @ inverse == BinMatrix.identity(n)
        assert inverse @ m == BinMatrix.identity(n)


def test_singular_matrix_has_no_inverse():
    singular = BinMatrix(3, (0b011, 0b011, 0b100))
    assert rank(singular) == 2
    assert invert(singular) is None


def test_kernel_vectors_are_annihilated():
    m = BinMatrix(4, (0b0011, 0b0110, 0b0101, 0b0000))
    basis = kernel(m)
    assert len(basis) == 4 - rank(m)
    for v in basis:
        assert m.apply(v.bits) == 0


def test_hex_round_trip_of_identity():
    identity = BinMatrix.identity(5)
    assert BinMatrix.from_hex(identity.to_hex()) == identity


def test_inconsistent_system():
    system = [(BinVector(2, 0b11), 1), (BinVector(2, 0b11), 0)]
    assert solve_affine(system) is None


def test_affine_solution_space():
    space = solve_affine([(BinVector(3, 0b001), 1)])
    assert space is not None
    assert space.dimension == 2
    assert space.contains(BinVector(3, 0b111))
    assert not space.contains(BinVector(3, 0b110))
    members = list(space.iter_bits())
    assert sorted(members) == [0b001, 0b011, 0b101, 0b111]


def test_empty_system_needs_the_unknown_count():
    space = solve_affine([], m=3)
    assert space.dimension == 3


def test_span_helpers():
    assert span_members([1, 2]) == [0, 1, 2, 3]
    basis = span_basis([0b011, 0b110, 0b101])
    assert len(basis) == 2
    assert in_span(basis, 0b101)
    assert not in_span(basis, 0b111)


def test_transpose_and_columns():
    m = BinMatrix(3, (0b001, 0b011, 0b110))
    assert m.transpose().rows == tuple(m.columns())
    assert m.transpose().transpose() == m
    assert BinMatrix.from_columns(m.columns()) == m
    assert m.entry(2, 1) == m.transpose().entry(1, 2) == 1


def test_dot_product():
    assert BinVector(4, 0b1011).dot(BinVector(4, 0b0011)) == 0
    assert BinVector(4, 0b1011).dot(BinVector(4, 0b1110)) == 0
    assert BinVector(4, 0b1011).dot(BinVector(4, 0b0001)) == 1
