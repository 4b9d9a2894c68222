"""
Quadratic Forms over F_2
========================

Forms Q(x) = sum_{i<=j} c_ij x_i x_j in n <= 5 variables, stored as a bit vector
of the c_ij in lexicographic (i, j) order with bit 0 = c_11. For n = 5 that is
15 bits and the 4-hex-digit form ids used in census files.

Provides the bilinear form and Gram matrix, radical and singular subspace,
point counts, the I-IV type classification, constructive normal forms, and the
type table over all 2^15 - 1 nonzero forms in five variables.
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.common.binfield import get_field, projective_points
from src.common.bitlinalg import BinMatrix, BinVector, kernel, span_basis, span_members
from src.common.errors import EnumerationBudgetError, ZeroFormError
from src.common.polynomials import AMBIENTS, MultiPoly, exponents, monomial_degree

logger = logging.getLogger("gonality-census")

VARIABLE_NAMES: Dict[int, Tuple[str, ...]] = {
    5: AMBIENTS["P4"],
    4: AMBIENTS["P3"],
    3: AMBIENTS["P2"],
    2: AMBIENTS["A2"],
}

POINT_BUDGET = 10_000_000


class FormType(IntEnum):
    """Form types, ordered so that 'type at least that of Q1' is a code comparison."""
    ZERO = 0
    NOT_GEOM_IRREDUCIBLE = 1
    I = 2
    II = 3
    III = 4
    IV = 5

    @property
    def label(self) -> str:
        return {0: "Zero", 1: "NotGeomIrreducible"}.get(self.value, self.name)


# (sing_proj_dim, proj_point_count) for the four geometrically irreducible classes
_TYPE_BY_INVARIANTS = {
    (1, 15): FormType.I,
    (0, 19): FormType.II,
    (0, 11): FormType.III,
    (-1, 15): FormType.IV,
}


@lru_cache(maxsize=None)
def index_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    """(i, j) with i <= j in coefficient-bit order."""
    return tuple((i, j) for i in range(n) for j in range(i, n))


def coefficient_bit(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    return index_pairs(n).index((i, j))


@lru_cache(maxsize=None)
def monomial_masks(n: int) -> Tuple[int, ...]:
    """For each vector x in F_2^n, the coefficient bits whose monomial is 1 at x."""
    pairs = index_pairs(n)
    return tuple(
        sum(1 << b for b, (i, j) in enumerate(pairs) if (x >> i) & 1 and (x >> j) & 1)
        for x in range(1 << n)
    )


@dataclass(frozen=True)
class QuadraticForm:
    """A quadratic form in n variables over F_2."""
    n: int
    coeffs: int

    def __post_init__(self):
        if not 1 <= self.n <= 5:
            raise ValueError(f"Forms must have 1..5 variables, got {self.n}")
        if not 0 <= self.coeffs < (1 << self.nbits):
            raise ValueError(f"Coefficient vector {self.coeffs:#x} too wide for n={self.n}")

    @property
    def nbits(self) -> int:
        return self.n * (self.n + 1) // 2

    @property
    def variables(self) -> Tuple[str, ...]:
        return VARIABLE_NAMES.get(self.n, AMBIENTS["P4"][: self.n])

    @property
    def hex_id(self) -> str:
        return f"{self.coeffs:04x}"

    @classmethod
    def from_hex(cls, text: str, n: int = 5) -> "QuadraticForm":
        return cls(n, int(text, 16))

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "QuadraticForm":
        """Convert a homogeneous quadratic MultiPoly (or zero) to a form."""
        n = len(poly.variables)
        coeffs = 0
        for t in poly.terms:
            if monomial_degree(t) != 2:
                raise ValueError(f"{poly} is not a quadratic form")
            support = [i for i, e in enumerate(exponents(t)) for _ in range(e)]
            coeffs |= 1 << coefficient_bit(support[0], support[1], n)
        return cls(n, coeffs)

    @classmethod
    def parse(cls, text: str, n: int = 5) -> "QuadraticForm":
        variables = VARIABLE_NAMES[n]
        return cls.from_poly(MultiPoly.parse(text, "".join(variables)))

    def to_poly(self) -> MultiPoly:
        exps = []
        for b, (i, j) in enumerate(index_pairs(self.n)):
            if (self.coeffs >> b) & 1:
                e = [0] * self.n
                e[i] += 1
                e[j] += 1
                exps.append(e)
        return MultiPoly.from_exponents(exps, self.variables)

    def is_zero(self) -> bool:
        return self.coeffs == 0

    def coefficient(self, i: int, j: int) -> int:
        return (self.coeffs >> coefficient_bit(i, j, self.n)) & 1

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.n != self.n:
            raise ValueError("Variable count mismatch")
        return QuadraticForm(self.n, self.coeffs ^ other.coeffs)

    def evaluate(self, x: int) -> int:
        """Q(x) for a bit-packed vector x in F_2^n."""
        return (self.coeffs & monomial_masks(self.n)[x]).bit_count() & 1

    def value_table(self) -> Tuple[int, ...]:
        return _value_table(self.n, self.coeffs)

    def bilinear(self, a: int, b: int) -> int:
        values = self.value_table()
        return values[a ^ b] ^ values[a] ^ values[b]

    def gram(self) -> BinMatrix:
        rows = []
        for i in range(self.n):
            row = 0
            for j in range(self.n):
                if i != j and self.coefficient(i, j):
                    row |= 1 << j
            rows.append(row)
        return BinMatrix(self.n, tuple(rows))

    def substitute(self, transform: BinMatrix) -> "QuadraticForm":
        """Coefficients of x -> Q(T x): c'_ii = Q(t_i), c'_ij = b(t_i, t_j) for columns t_i."""
        return QuadraticForm(self.n, substitute_coeffs(self.value_table(), transform.columns(), self.n))

    def __str__(self) -> str:
        if self.coeffs == 0:
            return "0"
        names = self.variables
        terms = []
        for b, (i, j) in enumerate(index_pairs(self.n)):
            if (self.coeffs >> b) & 1:
                terms.append(f"{names[i]}^2" if i == j else f"{names[i]}{names[j]}")
        return " + ".join(terms)


@lru_cache(maxsize=65536)
def _value_table(n: int, coeffs: int) -> Tuple[int, ...]:
    return tuple((coeffs & mask).bit_count() & 1 for mask in monomial_masks(n))


def substitute_coeffs(values: Sequence[int], columns: Sequence[int], n: int) -> int:
    """Integer kernel of QuadraticForm.substitute, given Q's value table."""
    coeffs = 0
    for b, (i, j) in enumerate(index_pairs(n)):
        ti = columns[i]
        if i == j:
            bit = values[ti]
        else:
            tj = columns[j]
            bit = values[ti ^ tj] ^ values[ti] ^ values[tj]
        coeffs |= bit << b
    return coeffs


@dataclass(frozen=True)
class FormAnatomy:
    """Bilinear data of a form: Gram matrix, radical, singular subspace, point count."""
    gram: BinMatrix
    radical_basis: Tuple[BinVector, ...]
    singular_basis: Tuple[BinVector, ...]
    proj_point_count: int
    sing_proj_dim: int

    @property
    def active_variables(self) -> int:
        """Number of variables the normal form needs: n - dim S."""
        return self.gram.n - len(self.singular_basis)


def anatomy(form: QuadraticForm) -> FormAnatomy:
    """
    Radical, singular subspace and point count of a nonzero form.

    Q is additive on rad, so S = {r in rad : Q(r) = 0} is the kernel of the
    linear functional r -> Q(r) restricted to rad.
    """
    if form.is_zero():
        raise ZeroFormError("Anatomy of the zero form is undefined")
    gram = form.gram()
    radical = kernel(gram)
    values = form.value_table()
    linear = [values[r.bits] for r in radical]
    if any(linear):
        pivot = linear.index(1)
        anchor = radical[pivot].bits
        singular = [
            BinVector(form.n, r.bits ^ (anchor if linear[idx] else 0))
            for idx, r in enumerate(radical) if idx != pivot
        ]
    else:
        singular = list(radical)
    points = sum(1 for x in range(1, 1 << form.n) if values[x] == 0)
    return FormAnatomy(
        gram=gram,
        radical_basis=tuple(radical),
        singular_basis=tuple(singular),
        proj_point_count=points,
        sing_proj_dim=len(singular) - 1,
    )


def quadratic_monomial_values(points: np.ndarray, k: int) -> np.ndarray:
    """(nbits, N) array: value of each quadratic monomial x_i x_j at each point."""
    table = get_field(k).mul_table()
    n = points.shape[1]
    return np.stack([table[points[:, i], points[:, j]] for i, j in index_pairs(n)])


def evaluate_on_monomials(coeffs: int, monomial_values: np.ndarray) -> np.ndarray:
    """Form values from precomputed monomial values (XOR of the selected rows)."""
    result = np.zeros(monomial_values.shape[1], dtype=np.uint8)
    b = 0
    while coeffs:
        if coeffs & 1:
            result ^= monomial_values[b]
        coeffs >>= 1
        b += 1
    return result


def count_proj_points(form: QuadraticForm, k: int = 1) -> int:
    """Number of points of V(Q) in P^{n-1}(F_{2^k})."""
    if k == 1:
        return sum(1 for x in range(1, 1 << form.n) if form.value_table()[x] == 0)
    q = 1 << k
    total = (q ** form.n - 1) // (q - 1)
    if total > POINT_BUDGET:
        raise EnumerationBudgetError(f"P^{form.n - 1}(F_{q}) has {total} points (budget {POINT_BUDGET})")
    values = evaluate_on_monomials(form.coeffs, quadratic_monomial_values(projective_points(form.n, k), k))
    return int(np.count_nonzero(values == 0))


def classify(form: QuadraticForm) -> FormType:
    """Type of a form: Zero, NotGeomIrreducible, or (for n = 5) I-IV."""
    if form.is_zero():
        return FormType.ZERO
    info = anatomy(form)
    if info.active_variables <= 2:
        return FormType.NOT_GEOM_IRREDUCIBLE
    if form.n != 5:
        raise ValueError(f"Types I-IV are defined for forms in 5 variables, got n={form.n}")
    key = (info.sing_proj_dim, info.proj_point_count)
    if key not in _TYPE_BY_INVARIANTS:
        raise ValueError(f"Form {form} has unexpected invariants {key}")
    return _TYPE_BY_INVARIANTS[key]


def norm_form() -> QuadraticForm:
    """The F_4/F_2 norm x^2 + xy + y^2, anisotropic in two variables."""
    return QuadraticForm(2, 0b111)


HYPERBOLIC = "hyperbolic"
NORM_TAIL = "norm-tail"
SQUARE_TAIL = "square-tail"


@dataclass(frozen=True)
class NormalFormReport:
    """Normal form shape, active variable count and the conjugating transform."""
    shape: str
    m: int
    transform: BinMatrix
    form: QuadraticForm


def normal_form_coeffs(n: int, shape: str, m: int) -> int:
    """Coefficient vector of x1x2 + x3x4 + ... followed by the named tail."""
    pairs = m // 2 if shape != NORM_TAIL else m // 2 - 1
    coeffs = 0
    for p in range(pairs):
        coeffs |= 1 << coefficient_bit(2 * p, 2 * p + 1, n)
    if shape == NORM_TAIL:
        a, b = m - 2, m - 1
        coeffs |= (1 << coefficient_bit(a, a, n)) | (1 << coefficient_bit(a, b, n)) | (1 << coefficient_bit(b, b, n))
    elif shape == SQUARE_TAIL:
        coeffs |= 1 << coefficient_bit(m - 1, m - 1, n)
    return coeffs


def _find_hyperbolic_pair(basis: List[int], values: Sequence[int]) -> Optional[Tuple[int, int]]:
    def b(u, v):
        return values[u ^ v] ^ values[u] ^ values[v]

    for u in span_members(basis)[1:]:
        if values[u]:
            continue
        for v in basis:
            if b(u, v):
                return u, (v ^ u) if values[v] else v
    return None


def _find_plane(basis: List[int], values: Sequence[int]) -> Optional[Tuple[int, int]]:
    for idx, u in enumerate(basis):
        for v in basis[idx + 1:]:
            if values[u ^ v] ^ values[u] ^ values[v]:
                return u, v
    return None


def normal_form(form: QuadraticForm) -> NormalFormReport:
    """
    Reduce a nonzero form to x1x2 + ... + x_{2r-1}x_{2r} + tail by a linear change of variables.

    Hyperbolic planes are split off while an isotropic vector pairs with
    something; a remaining non-degenerate plane is then anisotropic (norm tail).
    What is left is the radical, on which Q is linear: one vector with Q = 1
    becomes the square tail and the rest spans S.
    """
    if form.is_zero():
        raise ZeroFormError("Normal form of the zero form is undefined")
    n = form.n
    values = form.value_table()

    def b(u, v):
        return values[u ^ v] ^ values[u] ^ values[v]

    remaining = [1 << i for i in range(n)]
    columns: List[int] = []
    shape = HYPERBOLIC
    while True:
        pair = _find_hyperbolic_pair(remaining, values)
        if pair is None:
            pair = _find_plane(remaining, values)
            if pair is None:
                break
            shape = NORM_TAIL
        u, v = pair
        columns += [u, v]
        projected = [w ^ (u if b(w, v) else 0) ^ (v if b(w, u) else 0) for w in remaining]
        remaining = span_basis(projected, n)
        if shape == NORM_TAIL:
            break

    # remaining now spans the radical
    linear = [values[r] for r in remaining]
    if any(linear):
        if shape == NORM_TAIL:
            raise RuntimeError(f"Norm tail and square tail together in {form}")
        pivot = linear.index(1)
        anchor = remaining[pivot]
        columns.append(anchor)
        remaining = [r ^ (anchor if linear[idx] else 0) for idx, r in enumerate(remaining) if idx != pivot]
        shape = SQUARE_TAIL
    m = len(columns)
    transform = BinMatrix.from_columns(columns + remaining, n)
    reduced = form.substitute(transform)
    if reduced.coeffs != normal_form_coeffs(n, shape, m):
        raise RuntimeError(f"Normal form reduction of {form} produced {reduced}")
    return NormalFormReport(shape=shape, m=m, transform=transform, form=reduced)


def quadric_surface_kind(form: QuadraticForm) -> str:
    """Split (9 points), cone (7 points) or anisotropic (5 points) quadric surface in P^3."""
    if form.n != 4:
        raise ValueError("Quadric surface classification needs a form in 4 variables")
    report = normal_form(form)
    if report.shape == HYPERBOLIC and report.m == 4:
        return "split"
    if report.shape == SQUARE_TAIL and report.m == 3:
        return "cone"
    if report.shape == NORM_TAIL and report.m == 4:
        return "anisotropic"
    raise ValueError(f"Quadric {form} is geometrically reducible (m = {report.m})")


def _parity16(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return (v & 1).astype(np.uint8)


class TypeTable:
    """Type of every 5-variable form, indexed by its coefficient vector."""

    def __init__(self, codes: np.ndarray):
        self.codes = codes
        self.codes.setflags(write=False)

    def __len__(self) -> int:
        return len(self.codes) - 1

    def type_of(self, coeffs: int) -> FormType:
        return FormType(int(self.codes[coeffs]))

    def counts(self) -> Dict[FormType, int]:
        tally = np.bincount(self.codes[1:], minlength=len(FormType))
        return {t: int(tally[t]) for t in FormType if t != FormType.ZERO}

    def forms_of(self, types: Iterable[FormType]) -> np.ndarray:
        """Sorted coefficient vectors whose type is in ``types``."""
        wanted = np.isin(self.codes, [int(t) for t in types])
        return np.flatnonzero(wanted).astype(np.uint16)


def build_type_table() -> TypeTable:
    """Classify all 32767 nonzero forms in five variables with vectorized invariants."""
    n = 5
    size = 1 << 15
    coeffs = np.arange(size, dtype=np.uint16)
    masks = monomial_masks(n)
    values = np.stack([_parity16(coeffs & np.uint16(mask)) for mask in masks], axis=1)
    zeros = values == 0

    # x is in rad iff Q(x + e_i) = Q(x) + Q(e_i) for every basis vector e_i
    in_radical = np.ones_like(zeros)
    vectors = np.arange(1 << n)
    for i in range(n):
        e = 1 << i
        in_radical &= values[:, vectors ^ e] == (values ^ values[:, [e]])
    singular_size = np.count_nonzero(in_radical & zeros, axis=1)
    singular_dim = np.rint(np.log2(singular_size)).astype(np.int64)
    points = np.count_nonzero(zeros[:, 1:], axis=1)
    active = n - singular_dim

    codes = np.full(size, int(FormType.NOT_GEOM_IRREDUCIBLE), dtype=np.uint8)
    codes[0] = int(FormType.ZERO)
    irreducible = active >= 3
    assigned = np.zeros(size, dtype=bool)
    for (sing_dim, count), form_type in _TYPE_BY_INVARIANTS.items():
        hit = irreducible & (singular_dim - 1 == sing_dim) & (points == count)
        codes[hit] = int(form_type)
        assigned |= hit
    if np.any(irreducible & ~assigned):
        bad = int(np.flatnonzero(irreducible & ~assigned)[0])
        raise RuntimeError(f"Form {bad:04x} has invariants outside types I-IV")
    table = TypeTable(codes)
    logger.info(f"[TYPES] Classified {len(table)} forms: " + ", ".join(f"{t.label}={c}" for t, c in table.counts().items()))
    return table


@lru_cache(maxsize=1)
def get_type_table() -> TypeTable:
    return build_type_table()
