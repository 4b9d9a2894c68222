"""
Linear Algebra over F_2
=======================

Dense bit-packed vectors and matrices for dimensions <= 8. A vector is an int
whose bit j is coordinate j; a matrix stores one such int per row, so row
reduction is XOR of machine words.

Matrices serialize as their row masks in hex, e.g. ``01.02.04`` for I_3.
"""

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

MAX_DIMENSION = 8


def parity(bits: int) -> int:
    return bits.bit_count() & 1


@dataclass(frozen=True)
class BinVector:
    """A vector in F_2^n."""
    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"{self.bits:#x} does not fit in dimension {self.n}")

    def __getitem__(self, j: int) -> int:
        return (self.bits >> j) & 1

    def __add__(self, other: "BinVector") -> "BinVector":
        if other.n != self.n:
            raise ValueError("Dimension mismatch")
        return BinVector(self.n, self.bits ^ other.bits)

    def dot(self, other: "BinVector") -> int:
        return parity(self.bits & other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "(" + ",".join(str(self[j]) for j in range(self.n)) + ")"


@dataclass(frozen=True)
class BinMatrix:
    """An n x n matrix over F_2; rows[i] bit j is entry (i, j)."""
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"Matrix dimension must be in 1..{MAX_DIMENSION}")
        if len(self.rows) != self.n or any(not 0 <= r < (1 << self.n) for r in self.rows):
            raise ValueError(f"Rows {self.rows} do not form a {self.n}x{self.n} matrix")

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "BinMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def from_columns(cls, columns: Sequence[int], n: Optional[int] = None) -> "BinMatrix":
        n = len(columns) if n is None else n
        rows = tuple(
            sum(((columns[j] >> i) & 1) << j for j in range(n)) for i in range(n)
        )
        return cls(n, rows)

    @classmethod
    def from_hex(cls, text: str) -> "BinMatrix":
        rows = tuple(int(part, 16) for part in text.split("."))
        return cls(len(rows), rows)

    def to_hex(self) -> str:
        return ".".join(f"{row:02x}" for row in self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BinVector:
        return BinVector(self.n, self.rows[i])

    def column(self, j: int) -> int:
        return sum(((self.rows[i] >> j) & 1) << i for i in range(self.n))

    def columns(self) -> List[int]:
        return [self.column(j) for j in range(self.n)]

    def transpose(self) -> "BinMatrix":
        return BinMatrix(self.n, tuple(self.columns()))

    def apply(self, vector: int) -> int:
        """Matrix-vector product on a bit-packed column vector."""
        return sum(parity(row & vector) << i for i, row in enumerate(self.rows))

    def __matmul__(self, other: "BinMatrix") -> "BinMatrix":
        rows = []
        for row in self.rows:
            acc = 0
            j = 0
            while row:
                if row & 1:
                    acc ^= other.rows[j]
                row >>= 1
                j += 1
            rows.append(acc)
        return BinMatrix(self.n, tuple(rows))

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str(self.entry(i, j)) for j in range(self.n)) for i in range(self.n)
        )


@dataclass(frozen=True)
class AffineSolutionSpace:
    """All solutions particular + span(basis) of a linear system over F_2."""
    particular: BinVector
    basis: Tuple[BinVector, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def iter_bits(self) -> Iterator[int]:
        """Members as ints, in Gray-code order (one XOR per step)."""
        value = self.particular.bits
        yield value
        basis_bits = [b.bits for b in self.basis]
        for step in range(1, 1 << len(basis_bits)):
            value ^= basis_bits[(step & -step).bit_length() - 1]
            yield value

    def members(self) -> Iterator[BinVector]:
        m = self.particular.n
        for bits in self.iter_bits():
            yield BinVector(m, bits)

    def contains(self, vector: BinVector) -> bool:
        return in_span([b.bits for b in self.basis], vector.bits ^ self.particular.bits)


def _reduced_echelon(rows: Sequence[int], width: int) -> List[Tuple[int, int]]:
    """Reduced row echelon form over the low ``width`` columns: [(pivot, row)]."""
    remaining = [r for r in rows if r]
    pivots: List[Tuple[int, int]] = []
    for col in range(width):
        mask = 1 << col
        chosen = next((idx for idx, r in enumerate(remaining) if r & mask), None)
        if chosen is None:
            continue
        pivot_row = remaining.pop(chosen)
        remaining = [r ^ pivot_row if r & mask else r for r in remaining]
        pivots = [(p, r ^ pivot_row if r & mask else r) for p, r in pivots]
        pivots.append((col, pivot_row))
    return pivots


def rank_of_rows(rows: Sequence[int], width: int) -> int:
    return len(_reduced_echelon(rows, width))


def rank(matrix: BinMatrix) -> int:
    return rank_of_rows(matrix.rows, matrix.n)


def _null_space(pivots: List[Tuple[int, int]], width: int) -> List[int]:
    pivot_cols = {p for p, _ in pivots}
    basis = []
    for free in range(width):
        if free in pivot_cols:
            continue
        vector = 1 << free
        for p, row in pivots:
            if (row >> free) & 1:
                vector |= 1 << p
        basis.append(vector)
    return basis


def kernel(matrix: BinMatrix) -> List[BinVector]:
    """Basis of {x : M x = 0}, one vector per free column in ascending order."""
    pivots = _reduced_echelon(matrix.rows, matrix.n)
    return [BinVector(matrix.n, v) for v in _null_space(pivots, matrix.n)]


def solve_affine(system: Sequence[Tuple[BinVector, int]], m: Optional[int] = None) -> Optional[AffineSolutionSpace]:
    """
    Solve the constraints <a, x> = c over F_2.

    Args:
        system: (constraint vector, right-hand bit) pairs, all of length m
        m: number of unknowns; required when the system is empty

    Returns:
        AffineSolutionSpace, or None if the system is inconsistent
    """
    if m is None:
        if not system:
            raise ValueError("Number of unknowns is required for an empty system")
        m = system[0][0].n
    if any(vec.n != m for vec, _ in system):
        raise ValueError("All constraint vectors must have the same length")

    rhs_bit = 1 << m
    augmented = [vec.bits | (rhs_bit if c & 1 else 0) for vec, c in system]
    pivots = _reduced_echelon(augmented, m)

    # Rows reduced to "0 = 1" never become pivots; detect them directly.
    for row in augmented:
        reduced = row
        for p, prow in pivots:
            if (reduced >> p) & 1:
                reduced ^= prow
        if reduced == rhs_bit:
            return None

    particular = 0
    for p, row in pivots:
        if row & rhs_bit:
            particular |= 1 << p
    basis = tuple(BinVector(m, v) for v in _null_space([(p, r & (rhs_bit - 1)) for p, r in pivots], m))
    return AffineSolutionSpace(BinVector(m, particular), basis)


def invert(matrix: BinMatrix) -> Optional[BinMatrix]:
    n = matrix.n
    augmented = [row | (1 << (n + i)) for i, row in enumerate(matrix.rows)]
    pivots = _reduced_echelon(augmented, n)
    if len(pivots) < n:
        return None
    by_pivot = dict(pivots)
    return BinMatrix(n, tuple(by_pivot[i] >> n for i in range(n)))


def span_basis(vectors: Sequence[int], width: int = MAX_DIMENSION) -> List[int]:
    """Reduced echelon basis of the span of bit-packed vectors."""
    return [row for _, row in _reduced_echelon(vectors, width)]


def in_span(basis: Sequence[int], vector: int, width: int = 32) -> bool:
    pivots = _reduced_echelon(basis, width)
    for p, row in pivots:
        if (vector >> p) & 1:
            vector ^= row
    return vector == 0


def span_members(basis: Sequence[int]) -> List[int]:
    """All 2^d members of span(basis), zero first."""
    members = [0]
    for b in basis:
        members += [m ^ b for m in members]
    return members


def random_invertible(n: int, rng: random.Random) -> BinMatrix:
    while True:
        candidate = BinMatrix(n, tuple(rng.randrange(1 << n) for _ in range(n)))
        if rank(candidate) == n:
            return candidate
