"""
Binary Field Arithmetic
=======================

Arithmetic in F_{2^k} for 1 <= k <= 8 on bit-packed elements in the power basis
1, t, ..., t^{k-1}. Each degree has one fixed modulus so that coordinates written
in terms of t always mean the same element; F_16 uses t^4 + t + 1.

Elements serialize as ``F16:0b`` (field tag, lowercase hex of the bit pattern).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List

import numpy as np

from src.common.errors import FieldMismatchError, ZeroInverseError

# k -> bit-packed irreducible modulus
MODULI = {
    1: 0b11,          # t + 1
    2: 0b111,         # t^2 + t + 1
    3: 0b1011,        # t^3 + t + 1
    4: 0b10011,       # t^4 + t + 1
    5: 0b100101,      # t^5 + t^2 + 1
    6: 0b1000011,     # t^6 + t + 1
    7: 0b10000011,    # t^7 + t + 1
    8: 0b100011011,   # t^8 + t^4 + t^3 + t + 1
}

MAX_DEGREE = 8


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed F_2 polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m as F_2 polynomials."""
    deg_m = m.bit_length() - 1
    while a and a.bit_length() - 1 >= deg_m:
        a ^= m << (a.bit_length() - 1 - deg_m)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    for divisor_degree in range(1, degree // 2 + 1):
        for divisor in range(1 << divisor_degree, 1 << (divisor_degree + 1)):
            if poly_mod(poly, divisor) == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldDesc:
    """The field F_{2^k} = F_2[t]/(modulus)."""
    k: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_DEGREE:
            raise ValueError(f"Extension degree must be in 1..{MAX_DEGREE}, got {self.k}")
        if self.modulus.bit_length() - 1 != self.k:
            raise ValueError(f"Modulus {self.modulus:#x} does not have degree {self.k}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"Modulus {self.modulus:#x} is reducible over F_2")

    @property
    def size(self) -> int:
        return 1 << self.k

    @property
    def tag(self) -> str:
        return f"F{self.size}"

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    def elem(self, bits: int) -> "FieldElem":
        return FieldElem(bits, self)

    def elements(self) -> List["FieldElem"]:
        return [FieldElem(bits, self) for bits in range(self.size)]

    # Integer-level kernels; the census and point counters work on raw bits.

    def mul_bits(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.modulus)

    def pow_bits(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul_bits(result, base)
            base = self.mul_bits(base, base)
            e >>= 1
        return result

    def inv_bits(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError(f"0 has no inverse in {self.tag}")
        return self.pow_bits(a, self.size - 2)

    def mul_table(self) -> np.ndarray:
        """(2^k, 2^k) multiplication table, read-only."""
        return _mul_table(self.k)

    def power_table(self, e: int) -> np.ndarray:
        """Vector a -> a^e over all 2^k elements (0^0 = 1), read-only."""
        return _power_table(self.k, e)


@dataclass(frozen=True)
class FieldElem:
    """An element of a FieldDesc, stored as its power-basis bit pattern."""
    bits: int
    field: FieldDesc

    def __post_init__(self):
        if not 0 <= self.bits < self.field.size:
            raise ValueError(f"{self.bits:#x} is not an element of {self.field.tag}")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return add(self, other)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return mul(self, other)

    def __pow__(self, e: int) -> "FieldElem":
        return power(self, e)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return f"{self.field.tag}:{self.bits:02x}"

    @classmethod
    def parse(cls, text: str) -> "FieldElem":
        """Parse the ``F16:0b`` serialization."""
        try:
            tag, hex_bits = text.strip().split(":")
            size = int(tag.lstrip("Ff"))
        except ValueError:
            raise ValueError(f"Malformed field element: {text!r}")
        k = size.bit_length() - 1
        if size != 1 << k:
            raise ValueError(f"Field size {size} is not a power of 2")
        return FieldElem(int(hex_bits, 16), get_field(k))


@lru_cache(maxsize=None)
def get_field(k: int) -> FieldDesc:
    """The field F_{2^k} with its fixed modulus."""
    if k not in MODULI:
        raise ValueError(f"Extension degree must be in 1..{MAX_DEGREE}, got {k}")
    return FieldDesc(k, MODULI[k])


def _check_same_field(a: FieldElem, b: FieldElem):
    if a.field != b.field:
        raise FieldMismatchError(f"Cannot combine {a.field.tag} and {b.field.tag} elements")


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same_field(a, b)
    return FieldElem(a.bits ^ b.bits, a.field)


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same_field(a, b)
    return FieldElem(a.field.mul_bits(a.bits, b.bits), a.field)


def power(a: FieldElem, e: int) -> FieldElem:
    if e < 0:
        return power(inv(a), -e)
    return FieldElem(a.field.pow_bits(a.bits, e), a.field)


def inv(a: FieldElem) -> FieldElem:
    """Inverse via a^(2^k - 2)."""
    return FieldElem(a.field.inv_bits(a.bits), a.field)


def frobenius(a: FieldElem) -> FieldElem:
    return FieldElem(a.field.mul_bits(a.bits, a.bits), a.field)


@lru_cache(maxsize=None)
def _mul_table(k: int) -> np.ndarray:
    field = get_field(k)
    q = field.size
    table = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(a, q):
            table[a, b] = table[b, a] = field.mul_bits(a, b)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _power_table(k: int, e: int) -> np.ndarray:
    field = get_field(k)
    table = np.array([field.pow_bits(a, e) for a in range(field.size)], dtype=np.uint8)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def projective_points(nvars: int, k: int) -> np.ndarray:
    """
    Normalized representatives of P^{nvars-1}(F_{2^k}).

    Rows are points, columns coordinates (as bit patterns). The first nonzero
    coordinate of every row is 1. Rows are grouped by the position of that
    leading 1, and within a group ordered by the remaining coordinates read as a
    base-2^k number.
    """
    q = 1 << k
    blocks = []
    for lead in range(nvars):
        rest = nvars - lead - 1
        count = q ** rest
        block = np.zeros((count, nvars), dtype=np.uint8)
        block[:, lead] = 1
        index = np.arange(count, dtype=np.int64)
        for j in range(rest):
            block[:, lead + 1 + j] = (index // q ** (rest - 1 - j)) % q
        blocks.append(block)
    points = np.concatenate(blocks)
    points.setflags(write=False)
    return points
