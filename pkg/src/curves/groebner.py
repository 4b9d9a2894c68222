"""
Gröbner Bases over F_2
======================

Buchberger's algorithm in degrevlex (v > w > x > y > z) on the packed monomial
keys of ``src.common.polynomials``, plus what the curve checks need from it:

- projective dimension from the staircase of the leading-term ideal
- Hilbert function, Hilbert series numerator and Hilbert polynomial
- Hilbert function by rank of the degree-d Macaulay matrix
- projective emptiness, Jacobian minors, and the smooth complete intersection test

Coefficients are in F_2, so a polynomial is a set of monomial keys and every
reduction step is a symmetric difference.
"""

import heapq
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.common.binfield import projective_points
from src.common.config import default_step_budget
from src.common.errors import GroebnerBudgetExceeded, NonHomogeneousIdealError
from src.common.polynomials import (
    MultiPoly, coprime, divides, exponents, lcm, monomial_degree, monomials_of_degree, support, unit,
)

logger = logging.getLogger("gonality-census")

MAX_HILBERT_DEGREE = 12
MACAULAY_DEGREE_CAP = 12


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators in a common ring F_2[variables]."""
    generators: Tuple[MultiPoly, ...]
    variables: Tuple[str, ...]
    homogeneous: bool

    @classmethod
    def of(cls, generators: Iterable[MultiPoly]) -> "Ideal":
        gens = tuple(generators)
        if not gens:
            raise ValueError("An ideal needs at least one generator to fix its ring")
        variables = gens[0].variables
        if any(g.variables != variables for g in gens):
            raise ValueError("All generators must live in the same ring")
        nonzero = tuple(g for g in gens if not g.is_zero())
        return cls(nonzero, variables, all(g.is_homogeneous() for g in nonzero))

    @classmethod
    def parse(cls, texts: Sequence[str], ambient: str = "P4") -> "Ideal":
        return cls.of(MultiPoly.parse(text, ambient) for text in texts)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def require_homogeneous(self, operation: str):
        if not self.homogeneous:
            raise NonHomogeneousIdealError(f"{operation} needs homogeneous generators")

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal.of(self.generators + other.generators) if other.generators else self


@dataclass(frozen=True)
class SmoothCurveVerdict:
    """Outcome of the smooth complete intersection test; degree and genus only for curves."""
    proj_dim: int
    smooth: bool
    degree: Optional[int] = None
    arithmetic_genus: Optional[int] = None
    flagged: bool = False

    @property
    def is_curve(self) -> bool:
        return self.proj_dim == 1

    @property
    def is_smooth_curve(self) -> bool:
        return self.proj_dim == 1 and self.smooth


# Buchberger engine

class _StepCounter:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise GroebnerBudgetExceeded(self.steps, self.budget)


def _reduce_terms(terms: Iterable[int], leads: Sequence[int], polys: Sequence[FrozenSet[int]],
                  counter: _StepCounter) -> Set[int]:
    """Full normal form of a term set modulo polys (leads[i] = max(polys[i]))."""
    work = set(terms)
    remainder: Set[int] = set()
    while work:
        top = max(work)
        for lead, poly in zip(leads, polys):
            if divides(lead, top):
                shift = top - lead
                work ^= {t + shift for t in poly}
                counter.tick()
                break
        else:
            work.remove(top)
            remainder.add(top)
    return remainder


def _s_terms(f: FrozenSet[int], lead_f: int, g: FrozenSet[int], lead_g: int) -> Set[int]:
    common = lcm(lead_f, lead_g)
    a, b = common - lead_f, common - lead_g
    return {t + a for t in f} ^ {t + b for t in g}


class _Buchberger:
    """One run of the normal-selection Buchberger algorithm with both pair criteria."""

    def __init__(self, budget: int, stop: Optional[Callable[[List[int]], bool]] = None):
        self.counter = _StepCounter(budget)
        self.stop = stop
        self.polys: List[FrozenSet[int]] = []
        self.leads: List[int] = []
        self.queue: List[Tuple[int, int, int]] = []
        self.pending: Set[Tuple[int, int]] = set()
        self.stopped = False

    def _add(self, terms: Set[int]):
        index = len(self.polys)
        self.polys.append(frozenset(terms))
        self.leads.append(max(terms))
        for i in range(index):
            if coprime(self.leads[i], self.leads[index]):
                continue
            heapq.heappush(self.queue, (lcm(self.leads[i], self.leads[index]), i, index))
            self.pending.add((i, index))

    def _chain_redundant(self, common: int, i: int, j: int) -> bool:
        for k, lead in enumerate(self.leads):
            if k in (i, j) or not divides(lead, common):
                continue
            if (min(i, k), max(i, k)) not in self.pending and (min(j, k), max(j, k)) not in self.pending:
                return True
        return False

    def _absorb(self, terms: Iterable[int]) -> bool:
        remainder = _reduce_terms(terms, self.leads, self.polys, self.counter)
        if remainder:
            self._add(remainder)
            if self.stop is not None and self.stop(self.leads):
                self.stopped = True
                return True
        return False

    def run(self, generators: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
        for g in generators:
            if self._absorb(g):
                return self.polys
        while self.queue:
            common, i, j = heapq.heappop(self.queue)
            self.pending.discard((i, j))
            if self._chain_redundant(common, i, j):
                continue
            if self._absorb(_s_terms(self.polys[i], self.leads[i], self.polys[j], self.leads[j])):
                return self.polys
        return self._reduced_basis()

    def _reduced_basis(self) -> List[FrozenSet[int]]:
        order = sorted(range(len(self.polys)), key=lambda idx: self.leads[idx])
        kept: List[int] = []
        for idx in order:
            if not any(divides(self.leads[k], self.leads[idx]) for k in kept):
                kept.append(idx)
        leads = [self.leads[k] for k in kept]
        polys = [self.polys[k] for k in kept]
        reduced = []
        for lead, poly in zip(leads, polys):
            tail = _reduce_terms(poly - {lead}, leads, polys, self.counter)
            reduced.append(frozenset(tail | {lead}))
        return sorted(reduced, key=max, reverse=True)


def _compute_basis(ideal: Ideal, step_budget: Optional[int] = None,
                   stop: Optional[Callable[[List[int]], bool]] = None) -> Tuple[List[FrozenSet[int]], bool]:
    engine = _Buchberger(step_budget or default_step_budget(), stop)
    basis = engine.run(g.terms for g in ideal.generators)
    logger.debug(f"[GROEBNER] {len(ideal.generators)} generators -> {len(basis)} elements "
                 f"in {engine.counter.steps} reduction steps")
    return basis, engine.stopped


def groebner_basis(ideal: Ideal, step_budget: Optional[int] = None) -> List[MultiPoly]:
    """
    Reduced degrevlex Gröbner basis, largest leading monomial first.

    Raises:
        GroebnerBudgetExceeded: if more than ``step_budget`` reduction steps are needed
    """
    basis, _ = _compute_basis(ideal, step_budget)
    return [MultiPoly(terms, ideal.variables) for terms in basis]


def reduce(f: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Full normal form of f modulo basis (the remainder of multivariate division)."""
    polys = [b.terms for b in basis if not b.is_zero()]
    leads = [max(p) for p in polys]
    counter = _StepCounter(default_step_budget())
    return MultiPoly(frozenset(_reduce_terms(f.terms, leads, polys, counter)), f.variables)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial is undefined")
    return MultiPoly(frozenset(_s_terms(f.terms, max(f.terms), g.terms, max(g.terms))), f.variables)


def leading_monomials(basis: Iterable[MultiPoly]) -> List[int]:
    return [max(b.terms) for b in basis if not b.is_zero()]


# Dimension and Hilbert data of monomial ideals

def krull_dimension_of_leads(leads: Sequence[int], nvars: int) -> int:
    """
    Largest size of a variable subset containing the support of no lead.

    Returns -1 when a lead is constant (unit ideal).
    """
    supports = [support(m) for m in leads]
    best = -1
    for subset in range(1 << nvars):
        size = subset.bit_count()
        if size <= best:
            continue
        if all(s & ~subset for s in supports):
            best = size
    return best


def proj_dimension(ideal: Ideal, step_budget: Optional[int] = None) -> int:
    """Dimension of V(I) in P^{n-1}; -1 when only the origin (or nothing) vanishes."""
    ideal.require_homogeneous("proj_dimension")
    if not ideal.generators:
        return ideal.nvars - 1
    basis, _ = _compute_basis(ideal, step_budget)
    return max(krull_dimension_of_leads([max(p) for p in basis], ideal.nvars) - 1, -1)


def _standard_monomial_count(leads: Sequence[int], d: int, nvars: int) -> int:
    return sum(1 for m in monomials_of_degree(d, nvars) if not any(divides(lead, m) for lead in leads))


def hilbert_function(ideal: Ideal, d: int, step_budget: Optional[int] = None) -> int:
    """Number of degree-d standard monomials of the reduced Gröbner basis."""
    ideal.require_homogeneous("hilbert_function")
    if not 0 <= d <= MAX_HILBERT_DEGREE:
        raise ValueError(f"Hilbert function degree must be in 0..{MAX_HILBERT_DEGREE}")
    leads = leading_monomials(groebner_basis(ideal, step_budget)) if ideal.generators else []
    return _standard_monomial_count(leads, d, ideal.nvars)


def _minimalize(gens: Iterable[int]) -> List[int]:
    kept: List[int] = []
    for m in sorted(set(gens)):
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return kept


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: List[int], b: List[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return out


def _colon_by_variable(gens: Sequence[int], i: int) -> List[int]:
    step = unit(i)
    return _minimalize(m - step if exponents(m)[i] else m for m in gens)


def hilbert_series_numerator(leads: Sequence[int], nvars: int) -> List[int]:
    """
    K(t) with HS(S/M) = K(t) / (1 - t)^nvars for the monomial ideal M = (leads).

    Pivot recursion K(M) = K(M + (x)) + t K(M : x) on the variable shared by the
    most generators; pairwise coprime generators give prod (1 - t^deg).
    """
    gens = _minimalize(leads)
    if any(m == 0 for m in gens):
        return [0]
    overlapping = [m for m in gens if any(not coprime(m, other) for other in gens if other != m)]
    if not overlapping:
        result = [1]
        for m in gens:
            factor = [0] * (monomial_degree(m) + 1)
            factor[0], factor[-1] = 1, -1
            result = _poly_mul(result, factor)
        return result
    counts = [sum(1 for m in overlapping if exponents(m)[i]) for i in range(nvars)]
    pivot = max(range(nvars), key=lambda i: counts[i])
    plus = hilbert_series_numerator(gens + [unit(pivot)], nvars)
    colon = hilbert_series_numerator(_colon_by_variable(gens, pivot), nvars)
    return _trim(_poly_add(plus, [0] + colon))


def _trim(coeffs: List[int]) -> List[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


def _divide_by_one_minus_t(coeffs: List[int]) -> List[int]:
    """Exact quotient by (1 - t); raises if (1 - t) does not divide."""
    if sum(coeffs) != 0:
        raise ValueError("Polynomial is not divisible by 1 - t")
    quotient = []
    running = 0
    for c in coeffs[:-1]:
        running += c
        quotient.append(running)
    return _trim(quotient or [0])


def _binomial(x: int, m: int) -> int:
    """C(x, m) as a polynomial in x, valid for negative x."""
    product = 1
    for j in range(m):
        product *= x - j
    return product // factorial(m)


@dataclass(frozen=True)
class HilbertPolynomial:
    """P(d) = sum_i h_i C(d - i + k - 1, k - 1) with HS = h(t) / (1 - t)^k."""
    krull_dimension: int
    h: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.krull_dimension - 1

    def __call__(self, d: int) -> int:
        k = self.krull_dimension
        if k <= 0:
            return 0
        return sum(c * _binomial(d - i + k - 1, k - 1) for i, c in enumerate(self.h))

    @property
    def degree(self) -> int:
        return sum(self.h)

    @property
    def arithmetic_genus(self) -> int:
        return (-1) ** self.dimension * (self(0) - 1)


def hilbert_polynomial_of_leads(leads: Sequence[int], nvars: int) -> HilbertPolynomial:
    numerator = hilbert_series_numerator(leads, nvars)
    k = krull_dimension_of_leads(leads, nvars)
    h = numerator
    for _ in range(nvars - max(k, 0)):
        h = _divide_by_one_minus_t(h)
    return HilbertPolynomial(krull_dimension=k, h=tuple(h))


def hilbert_polynomial(ideal: Ideal, step_budget: Optional[int] = None) -> HilbertPolynomial:
    ideal.require_homogeneous("hilbert_polynomial")
    leads = leading_monomials(groebner_basis(ideal, step_budget)) if ideal.generators else []
    return hilbert_polynomial_of_leads(leads, ideal.nvars)


# Macaulay matrices

@lru_cache(maxsize=None)
def _column_index(d: int, nvars: int) -> Dict[int, int]:
    return {m: idx for idx, m in enumerate(monomials_of_degree(d, nvars))}


def _rank_of_bitrows(rows: Iterable[int]) -> int:
    pivots: Dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                break
            row ^= pivot
    return len(pivots)


def macaulay_rows(ideal: Ideal, d: int) -> List[int]:
    """Rows m * g for generators g of degree <= d and monomials m of degree d - deg g."""
    index = _column_index(d, ideal.nvars)
    rows = []
    for g in ideal.generators:
        gd = g.degree
        if gd > d:
            continue
        for m in monomials_of_degree(d - gd, ideal.nvars):
            row = 0
            for t in g.terms:
                row ^= 1 << index[t + m]
            rows.append(row)
    return rows


def truncated_hilbert_function(ideal: Ideal, d: int) -> int:
    """dim (S/I)_d as the corank of the degree-d Macaulay matrix; no Gröbner basis needed."""
    ideal.require_homogeneous("truncated_hilbert_function")
    total = len(monomials_of_degree(d, ideal.nvars))
    return total - _rank_of_bitrows(macaulay_rows(ideal, d))


def lazard_bound(degrees: Sequence[int], nvars: int) -> int:
    """Degree from which (S/I)_d vanishes whenever V(I) is projectively empty."""
    top = sorted(degrees, reverse=True)[:nvars]
    return sum(d - 1 for d in top) + 1


def _has_pure_powers(nvars: int) -> Callable[[List[int]], bool]:
    def check(leads: List[int]) -> bool:
        covered = 0
        for m in leads:
            s = support(m)
            if s == 0:
                return True
            if s & (s - 1) == 0:
                covered |= s
        return covered == (1 << nvars) - 1
    return check


def is_projectively_empty(ideal: Ideal, max_degree: int = MACAULAY_DEGREE_CAP,
                          step_budget: Optional[int] = None) -> bool:
    """
    True iff V(I) has no point in P^{n-1} over the algebraic closure.

    The Macaulay corank is tried in increasing degree; a zero proves emptiness
    and a nonzero value at the regularity bound disproves it. Past ``max_degree``
    a Gröbner basis run decides, stopping as soon as pure powers of all
    variables lead.
    """
    ideal.require_homogeneous("is_projectively_empty")
    nvars = ideal.nvars
    degrees = [g.degree for g in ideal.generators]
    if degrees and min(degrees) == 0:
        return True
    if len(ideal.generators) < nvars:
        return False
    bound = lazard_bound(degrees, nvars)
    for d in range(max(degrees), min(bound, max_degree) + 1):
        if truncated_hilbert_function(ideal, d) == 0:
            return True
    if bound <= max_degree:
        return False
    basis, _ = _compute_basis(ideal, step_budget, stop=_has_pure_powers(nvars))
    return _has_pure_powers(nvars)([max(p) for p in basis])


# Jacobians

def maximal_minors(forms: Sequence[MultiPoly]) -> List[MultiPoly]:
    """All r x r minors of the r x n Jacobian (no signs in characteristic 2)."""
    if not forms:
        raise ValueError("Need at least one form")
    variables = forms[0].variables
    n = len(variables)
    r = len(forms)
    if r > n:
        raise ValueError(f"{r} forms in {n} variables have no maximal minors")
    partials = [[f.partial(i) for i in range(n)] for f in forms]
    zero = MultiPoly.zero(variables)
    minors = []
    for columns in combinations(range(n), r):
        total = zero
        for perm in permutations(columns):
            term = MultiPoly.one(variables)
            for row, col in enumerate(perm):
                term = term * partials[row][col]
                if term.is_zero():
                    break
            total = total + term
        minors.append(total)
    return minors


def jacobian_minors(forms: Sequence[MultiPoly]) -> List[MultiPoly]:
    """The ten 3 x 3 minors of the Jacobian of three forms in five variables."""
    if len(forms) != 3 or any(len(f.variables) != 5 for f in forms):
        raise ValueError("jacobian_minors needs exactly 3 forms in 5 variables")
    return maximal_minors(forms)


def minors_2x2(forms: Sequence[MultiPoly]) -> List[MultiPoly]:
    """The six 2 x 2 minors of the Jacobian of two forms in four variables."""
    if len(forms) != 2 or any(len(f.variables) != 4 for f in forms):
        raise ValueError("minors_2x2 needs exactly 2 forms in 4 variables")
    return maximal_minors(forms)


# Smooth complete intersections

def singular_point_witness(forms: Sequence[MultiPoly], minors: Sequence[MultiPoly],
                           points: np.ndarray, k: int) -> Optional[np.ndarray]:
    """A row of ``points`` where every form and minor vanishes, if any."""
    mask = np.ones(points.shape[0], dtype=bool)
    for f in list(forms) + list(minors):
        if not mask.any():
            return None
        if f.is_zero():
            continue
        candidates = np.flatnonzero(mask)
        mask[candidates] = f.evaluate_array(points[candidates], k) == 0
    hits = np.flatnonzero(mask)
    return points[hits[0]] if hits.size else None


def smooth_complete_intersection(forms: Sequence[MultiPoly], sweep_degrees: Sequence[int] = (1, 2),
                                 sweep_points: Optional[Sequence[Tuple[np.ndarray, int]]] = None,
                                 step_budget: Optional[int] = None) -> SmoothCurveVerdict:
    """
    Dimension, smoothness and (for curves) degree and genus of V(forms).

    Smoothness is the Jacobian criterion: V(forms, maximal minors) is empty.
    Points over small fields where everything vanishes prove a singularity
    outright; otherwise projective emptiness decides.
    """
    ideal = Ideal.of(forms)
    ideal.require_homogeneous("smooth_complete_intersection")
    basis, _ = _compute_basis(ideal, step_budget)
    leads = [max(p) for p in basis]
    proj_dim = max(krull_dimension_of_leads(leads, ideal.nvars) - 1, -1)
    if proj_dim != 1:
        return SmoothCurveVerdict(proj_dim=proj_dim, smooth=False)

    minors = maximal_minors(list(forms))
    candidates = list(sweep_points or [])
    candidates += [(projective_points(ideal.nvars, k), k) for k in sweep_degrees]
    for points, k in candidates:
        if singular_point_witness(forms, minors, points, k) is not None:
            return SmoothCurveVerdict(proj_dim=1, smooth=False)

    if not is_projectively_empty(Ideal.of(list(forms) + minors), step_budget=step_budget):
        return SmoothCurveVerdict(proj_dim=1, smooth=False)
    polynomial = hilbert_polynomial_of_leads(leads, ideal.nvars)
    return SmoothCurveVerdict(
        proj_dim=1,
        smooth=True,
        degree=polynomial.degree,
        arithmetic_genus=polynomial.arithmetic_genus,
    )


def smooth_curve_check(q1, q2, q3, sweep_points: Optional[Sequence[Tuple[np.ndarray, int]]] = None,
                       step_budget: Optional[int] = None) -> SmoothCurveVerdict:
    """
    The census test on a triple of quadratic forms in v, w, x, y, z.

    A smooth complete intersection of dimension 1 is connected, hence
    irreducible, so dimension plus smoothness is the whole test.
    """
    forms = [q.to_poly() for q in (q1, q2, q3)]
    sweep_degrees = (1, 2) if sweep_points is None else ()
    return smooth_complete_intersection(forms, sweep_degrees=sweep_degrees, sweep_points=sweep_points,
                                        step_budget=step_budget)
