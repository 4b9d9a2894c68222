"""
Orthogonal Groups over F_2
==========================

O(Q) = {g in GL_n(F_2) : Q(g x) = Q(x)}, computed either by exhaustive search
over the matrix space or by the transitivity of O(Q) on the stratum product
Y built from the zero set of Q, its radical and its singular subspace.

Also provides the substitution action on forms, orbit decompositions with orbit
minima as representatives, and the span-discard rule used to pick A(Q1).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.common.bitlinalg import (
    BinMatrix, BinVector, in_span, invert, kernel, rank, rank_of_rows, solve_affine, span_members,
)
from src.common.errors import ActionClosureError, SingularMatrixError
from src.quadratic_forms.quadform import (
    FormType, QuadraticForm, TypeTable, anatomy, get_type_table, substitute_coeffs,
)

logger = logging.getLogger("gonality-census")

NAIVE = "naive"
TRANSITIVITY = "transitivity"


@dataclass(frozen=True)
class OrthGroup:
    """The full element set of O(Q)."""
    form: QuadraticForm
    elements: FrozenSet[BinMatrix]
    method: str

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: BinMatrix) -> bool:
        return g in self.elements

    def sorted_elements(self) -> List[BinMatrix]:
        return sorted(self.elements, key=lambda g: g.rows)

    def to_hex_list(self) -> List[str]:
        return [g.to_hex() for g in self.sorted_elements()]


@dataclass(frozen=True)
class WittStrata:
    """Zero set, projectivized radical and singular subspace of Q over F_2."""
    qset: Tuple[int, ...]
    rset: Tuple[int, ...]
    sset: Tuple[int, ...]
    y_factors: Tuple[Tuple[int, ...], ...]

    @property
    def i(self) -> int:
        return len(self.y_factors)

    @property
    def y_size(self) -> int:
        size = 1
        for factor in self.y_factors:
            size *= len(factor)
        return size if self.y_factors else 0

    def base_point(self) -> Tuple[int, ...]:
        """Lexicographically least member of Y."""
        return tuple(factor[0] for factor in self.y_factors)

    def members(self) -> Iterable[Tuple[int, ...]]:
        return product(*self.y_factors)


@dataclass(frozen=True)
class OrthSearchReport:
    """Bookkeeping of one transitivity search."""
    group: OrthGroup
    strata: WittStrata
    solution_space_dimension: int
    search_space_size: int
    enumerated_candidates: int


@dataclass
class OrbitPartition:
    """Orbits of a group on a set of forms; each representative is its orbit's minimum."""
    n: int
    representatives: List[QuadraticForm]
    orbit_of: Dict[int, int] = field(default_factory=dict)

    def orbit_sizes(self) -> List[int]:
        sizes = [0] * len(self.representatives)
        for index in self.orbit_of.values():
            sizes[index] += 1
        return sizes

    def representative_of(self, form: QuadraticForm) -> QuadraticForm:
        return self.representatives[self.orbit_of[form.coeffs]]


def act(g: BinMatrix, form: QuadraticForm) -> QuadraticForm:
    """The form x -> Q(g x)."""
    if g.n != form.n:
        raise ValueError(f"Matrix of size {g.n} cannot act on a form in {form.n} variables")
    if rank(g) != g.n:
        raise SingularMatrixError(f"Matrix {g.to_hex()} is not invertible")
    return form.substitute(g)


def witt_strata(form: QuadraticForm) -> WittStrata:
    n = form.n
    values = form.value_table()
    qset = tuple(x for x in range(1, 1 << n) if values[x] == 0)
    radical = [v.bits for v in kernel(form.gram())]
    rset = tuple(sorted(span_members(radical)[1:]))
    sset = tuple(sorted(set(qset) & set(rset)))
    singular = set(sset)
    candidates = (
        tuple(x for x in qset if x not in singular),
        tuple(x for x in rset if x not in singular),
        sset,
    )
    return WittStrata(qset=qset, rset=rset, sset=sset, y_factors=tuple(f for f in candidates if f))


def _orbit_constraints(n: int, base: Sequence[int], target: Sequence[int], with_scalars: bool):
    """
    Linear conditions g * base_j = lambda_j * target_j on a column-major flattened g.

    Unknown c*n + r is entry g[r][c]; with scalars, unknown n*n + j is lambda_j
    and the system is homogeneous.
    """
    width = n * n + (len(base) if with_scalars else 0)
    system = []
    for j, (src, dst) in enumerate(zip(base, target)):
        for r in range(n):
            vec = sum(1 << (c * n + r) for c in range(n) if (src >> c) & 1)
            dst_bit = (dst >> r) & 1
            if with_scalars:
                if dst_bit:
                    vec |= 1 << (n * n + j)
                system.append((BinVector(width, vec), 0))
            else:
                system.append((BinVector(width, vec), dst_bit))
    return system, width


def orth_fast_report(form: QuadraticForm) -> OrthSearchReport:
    """
    O(Q) via transitivity on Y.

    Every isometry sends the base point p0 of Y to some p in Y, so O(Q) is the
    union over p of the isometries inside the affine space {g : g p0 = p}.
    Over F_2 every scale factor is 1, which fixes lambda in the enumeration;
    the reported solution dimension counts the homogeneous (g, lambda) system.
    """
    n = form.n
    strata = witt_strata(form)
    if strata.y_size == 0:
        raise ValueError(f"Stratum product Y is empty for {form}")
    base = strata.base_point()
    homogeneous, width = _orbit_constraints(n, base, base, with_scalars=True)
    dimension = solve_affine(homogeneous, width).dimension
    search_space = strata.y_size * (1 << dimension)

    values = form.value_table()
    mask = (1 << n) - 1
    shifts = [c * n for c in range(n)]
    elements: Set[BinMatrix] = set()
    enumerated = 0
    for target in strata.members():
        system, width = _orbit_constraints(n, base, target, with_scalars=False)
        space = solve_affine(system, width)
        if space is None:
            continue
        for flat in space.iter_bits():
            enumerated += 1
            columns = [(flat >> s) & mask for s in shifts]
            if substitute_coeffs(values, columns, n) != form.coeffs:
                continue
            if rank_of_rows(columns, n) == n:
                elements.add(BinMatrix.from_columns(columns, n))
    logger.debug(f"[ORTH] {form}: |Y|={strata.y_size}, dim={dimension}, |O(Q)|={len(elements)}")
    group = OrthGroup(form=form, elements=frozenset(elements), method=TRANSITIVITY)
    return OrthSearchReport(
        group=group,
        strata=strata,
        solution_space_dimension=dimension,
        search_space_size=search_space,
        enumerated_candidates=enumerated,
    )


def orth_fast(form: QuadraticForm) -> OrthGroup:
    return orth_fast_report(form).group


def orth_naive(form: QuadraticForm) -> OrthGroup:
    """
    O(Q) by exhaustive search over all n x n matrices.

    Columns are chosen one at a time; a partial matrix is abandoned as soon as
    a diagonal value Q(g e_i), a polar value b(g e_i, g e_j) or linear
    independence fails, which never discards a member of O(Q).
    """
    n = form.n
    values = form.value_table()

    def b(u, v):
        return values[u ^ v] ^ values[u] ^ values[v]

    basis = [1 << i for i in range(n)]
    polar = [[b(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    candidates = [[x for x in range(1, 1 << n) if values[x] == values[basis[i]]] for i in range(n)]
    elements: Set[BinMatrix] = set()

    def extend(columns: List[int], span: Set[int]):
        i = len(columns)
        if i == n:
            elements.add(BinMatrix.from_columns(columns, n))
            return
        for x in candidates[i]:
            if x in span:
                continue
            if any(b(x, columns[j]) != polar[j][i] for j in range(i)):
                continue
            extend(columns + [x], span | {s ^ x for s in span})

    extend([], {0})
    return OrthGroup(form=form, elements=frozenset(elements), method=NAIVE)


@lru_cache(maxsize=32)
def orthogonal_group(form: QuadraticForm, method: str = TRANSITIVITY) -> OrthGroup:
    """Cached O(Q) by the named method."""
    if method == NAIVE:
        return orth_naive(form)
    if method in (TRANSITIVITY, "fast"):
        return orth_fast(form)
    raise ValueError(f"Unknown orthogonal group method: {method}")


def form_action_table(group: OrthGroup) -> np.ndarray:
    """
    Row per group element (sorted), column per coefficient bit: the image of
    that monomial under Q -> Q o g. Substitution is linear in the coefficients,
    so the image of any form is the XOR of the columns of its set bits.
    """
    n = group.form.n
    nbits = group.form.nbits
    monomial_tables = [QuadraticForm(n, 1 << b).value_table() for b in range(nbits)]
    rows = []
    for g in group.sorted_elements():
        columns = g.columns()
        rows.append([substitute_coeffs(table, columns, n) for table in monomial_tables])
    return np.array(rows, dtype=np.uint16)


def images_under(action_table: np.ndarray, coeffs: int) -> np.ndarray:
    """Images of one form under every group element."""
    bits = [b for b in range(action_table.shape[1]) if (coeffs >> b) & 1]
    if not bits:
        return np.zeros(action_table.shape[0], dtype=np.uint16)
    return np.bitwise_xor.reduce(action_table[:, bits], axis=1)


def orbit_representatives(group: OrthGroup, forms: Iterable[QuadraticForm]) -> OrbitPartition:
    """Orbit decomposition of a G-stable set; seeds are taken in increasing coeffs order."""
    n = group.form.n
    pool = sorted({f.coeffs for f in forms})
    member = np.zeros(1 << group.form.nbits, dtype=bool)
    member[pool] = True
    table = form_action_table(group)
    partition = OrbitPartition(n=n, representatives=[])
    for seed in pool:
        if seed in partition.orbit_of:
            continue
        orbit = np.unique(images_under(table, seed))
        if not member[orbit].all():
            stray = int(orbit[~member[orbit]][0])
            raise ActionClosureError(f"Form {seed:04x} maps to {stray:04x}, outside the acted-on set")
        index = len(partition.representatives)
        partition.representatives.append(QuadraticForm(n, seed))
        for image in orbit:
            partition.orbit_of[int(image)] = index
    logger.debug(f"[ORTH] {len(pool)} forms fall into {len(partition.representatives)} orbits")
    return partition


def span_discard(q1: QuadraticForm, reps: Sequence[QuadraticForm], allowed: Iterable[FormType],
                 table: Optional[TypeTable] = None) -> List[QuadraticForm]:
    """Drop Q1 itself and every Q whose span with Q1 contains a form of a disallowed type."""
    table = table or get_type_table()
    allowed_codes = {int(t) for t in allowed}

    def ok(coeffs: int) -> bool:
        return int(table.codes[coeffs]) in allowed_codes

    kept = []
    for rep in reps:
        if rep.coeffs == q1.coeffs:
            continue
        if ok(rep.coeffs) and ok(q1.coeffs) and ok(rep.coeffs ^ q1.coeffs):
            kept.append(rep)
    return kept


def stabilizer_order(group: OrthGroup, form: QuadraticForm) -> int:
    return int(np.count_nonzero(images_under(form_action_table(group), form.coeffs) == form.coeffs))


def orbit_minimum_transform(group: OrthGroup, form: QuadraticForm) -> Tuple[QuadraticForm, BinMatrix]:
    """The orbit minimum of ``form`` and the first (sorted) element g with Q o g equal to it."""
    elements = group.sorted_elements()
    images = images_under(form_action_table(group), form.coeffs)
    index = int(np.argmin(images))
    return QuadraticForm(form.n, int(images[index])), elements[index]


def adapted_basis(form: QuadraticForm) -> Tuple[BinMatrix, int]:
    """Basis matrix with a complement U first and the singular subspace S last; returns (B, dim S)."""
    n = form.n
    singular = [v.bits for v in anatomy(form).singular_basis]
    complement: List[int] = []
    for i in range(n):
        candidate = 1 << i
        if not in_span(complement + singular, candidate, n):
            complement.append(candidate)
    return BinMatrix.from_columns(complement + singular, n), len(singular)


def block_form(g: BinMatrix, form: QuadraticForm) -> Tuple[BinMatrix, int]:
    """g written in the U + S adapted basis, with dim S."""
    basis, s = adapted_basis(form)
    return invert(basis) @ g @ basis, s


def has_zero_upper_block(g: BinMatrix, form: QuadraticForm) -> bool:
    """True iff g maps S into S, i.e. the S-columns of g have no U-coordinates."""
    conjugated, s = block_form(g, form)
    u = form.n - s
    return all(conjugated.entry(r, c) == 0 for r in range(u) for c in range(u, form.n))
