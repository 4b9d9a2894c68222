"""
Curve Toolkit
=============

Point counts over F_{2^k} for plane curves and complete intersections, the
hyperelliptic family with six rational points, smooth-model counts for plane
quintics with one double point, and gonality certificates for genus 1 to 5.

Every certificate names the criterion behind each bound, so a verification
report built from certificates documents itself.
"""

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.common.binfield import FieldDesc, FieldElem, get_field, projective_points
from src.common.bitlinalg import rank_of_rows
from src.common.errors import EnumerationBudgetError, SingularCurveError
from src.common.polynomials import MultiPoly, pack
from src.curves.groebner import (
    Ideal, SmoothCurveVerdict, groebner_basis, is_projectively_empty, krull_dimension_of_leads,
    leading_monomials, reduce, singular_point_witness, smooth_complete_intersection,
)
from src.quadratic_forms.quadform import FormType, QuadraticForm, get_type_table, quadric_surface_kind

logger = logging.getLogger("gonality-census")

POINT_BUDGET = 10_000_000
RADICAL_EXPONENT_LIMIT = 24

# Criterion tags carried by certificates
POSITIVE_GENUS = "positive-genus"
HYPERELLIPTIC_MAP = "hyperelliptic-x-map"
RATIONAL_POINT_PROJECTION = "projection-from-rational-point"
GENUS_PLUS_ONE = "gonality-at-most-genus-plus-one"
GENUS_BOUND = "gonality-bound-by-genus"
PLANE_QUARTIC_NOT_HYPERELLIPTIC = "smooth-plane-quartic-not-hyperelliptic"
TRIGONAL_NEEDS_RATIONAL_POINT = "plane-quartic-trigonal-maps-are-point-projections"
CANONICAL_NOT_HYPERELLIPTIC = "canonical-curve-not-hyperelliptic"
QUADRIC_RULING = "ruling-of-quadric-surface"
ANISOTROPIC_QUADRIC = "anisotropic-quadric-has-no-ruling"
HYPERPLANE_DEGREE4_DIVISOR = "degree-4-divisor-on-rational-hyperplane"
NO_HYPERPLANE_DIVISOR = "no-degree-4-divisor-on-rational-hyperplane"
PENCIL_TYPE_I_II = "pencil-contains-type-I-or-II-quadric"
PENCIL_TYPES_III_IV = "pencil-has-only-type-III-IV-quadrics"
CUBIC_POINT_PENCIL = "cubic-point-spans-plane-pencil"


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n(F_{2^k}) with first nonzero coordinate 1."""
    coords: Tuple[FieldElem, ...]
    field: FieldDesc

    def __post_init__(self):
        if all(c.is_zero() for c in self.coords):
            raise ValueError("The zero vector is not a projective point")
        lead = next(c for c in self.coords if not c.is_zero())
        if lead.bits != 1:
            raise ValueError("Coordinates must be normalized; use ProjectivePoint.normalize")

    @classmethod
    def normalize(cls, coords: Sequence[FieldElem]) -> "ProjectivePoint":
        field = coords[0].field
        lead = next((c for c in coords if not c.is_zero()), None)
        if lead is None:
            raise ValueError("The zero vector is not a projective point")
        scale = field.inv_bits(lead.bits)
        return cls(tuple(FieldElem(field.mul_bits(c.bits, scale), field) for c in coords), field)

    @classmethod
    def from_bits(cls, bits: Sequence[int], k: int) -> "ProjectivePoint":
        field = get_field(k)
        return cls.normalize([FieldElem(int(b), field) for b in bits])

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple(c.bits for c in self.coords)

    def __str__(self) -> str:
        return "(" + " : ".join(format_in_t(c.bits) for c in self.coords) + ")"


def format_in_t(bits: int) -> str:
    """Power-basis element as a polynomial in the generator t."""
    if bits == 0:
        return "0"
    terms = []
    for e in range(bits.bit_length() - 1, -1, -1):
        if (bits >> e) & 1:
            terms.append("1" if e == 0 else "t" if e == 1 else f"t^{e}")
    return " + ".join(terms)


@dataclass(frozen=True)
class GonalityCertificate:
    """Lower and upper gonality bounds, each with the criterion that proves it."""
    genus: int
    lower: int
    lower_criterion: str
    upper: int
    upper_criterion: str
    rational_points: Optional[int] = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"Lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def gonality(self) -> Optional[int]:
        return self.upper if self.exact else None


@dataclass(frozen=True)
class CurveRecord:
    """A genus-5 canonical curve V(q1, q2, q3) with its point counts over F_2, F_4, F_8, F_16."""
    q1: QuadraticForm
    q2: QuadraticForm
    q3: QuadraticForm
    counts: Tuple[int, int, int, int]
    smooth_verdict: Optional[SmoothCurveVerdict] = None

    @property
    def n1(self) -> int:
        return self.counts[0]

    def sort_key(self) -> Tuple[int, int, int]:
        return self.q1.coeffs, self.q2.coeffs, self.q3.coeffs

    def to_fields(self) -> List[str]:
        return [self.q1.hex_id, self.q2.hex_id, self.q3.hex_id] + [str(c) for c in self.counts]

    @classmethod
    def from_fields(cls, fields: Sequence[str]) -> "CurveRecord":
        if len(fields) != 7:
            raise ValueError(f"Census record needs 7 fields, got {len(fields)}")
        forms = [QuadraticForm.from_hex(f) for f in fields[:3]]
        counts = tuple(int(c) for c in fields[3:])
        return cls(forms[0], forms[1], forms[2], counts)

    def frobenius_consistent(self) -> bool:
        n1, n2, n3, n4 = self.counts
        return (n1 <= n2 and n1 <= n3 and (n2 - n1) % 2 == 0
                and (n3 - n1) % 3 == 0 and (n4 - n2) % 4 == 0)

    def weil_consistent(self, genus: int = 5) -> bool:
        for k, n in enumerate(self.counts, start=1):
            q = 1 << k
            # |n - (q + 1)| <= 2 g sqrt(q), squared to stay in integers
            if (n - q - 1) ** 2 > 4 * genus * genus * q:
                return False
        return True


# Point counting

def _ambient_points(nvars: int, k: int) -> np.ndarray:
    q = 1 << k
    total = (q ** nvars - 1) // (q - 1)
    if total > POINT_BUDGET:
        raise EnumerationBudgetError(f"P^{nvars - 1}(F_{q}) has {total} points (budget {POINT_BUDGET})")
    return projective_points(nvars, k)


def rational_points(forms: Sequence[MultiPoly], ambient_dim: int, k: int = 1) -> np.ndarray:
    """Rows of P^{ambient_dim}(F_{2^k}) (as coordinate bit patterns) where every form vanishes."""
    nvars = ambient_dim + 1
    if any(len(f.variables) != nvars for f in forms):
        raise ValueError(f"Forms must have {nvars} variables for P^{ambient_dim}")
    points = _ambient_points(nvars, k)
    for f in forms:
        if points.shape[0] == 0:
            break
        points = points[f.evaluate_array(points, k) == 0]
    return points


def count_points(forms: Sequence[MultiPoly], ambient_dim: int, k: int = 1) -> int:
    return int(rational_points(forms, ambient_dim, k).shape[0])


def find_points(forms: Sequence[MultiPoly], ambient_dim: int, k: int = 1) -> List[ProjectivePoint]:
    return [ProjectivePoint.from_bits(row, k) for row in rational_points(forms, ambient_dim, k)]


def weil_upper_bound(genus: int, q: int) -> int:
    """floor(q + 1 + 2 g sqrt(q))."""
    return q + 1 + isqrt(4 * genus * genus * q)


def gonality_point_bound(gonality: int, q: int = 2) -> int:
    """Rational points lie over the q + 1 points of P^1, at most ``gonality`` over each."""
    return (q + 1) * gonality


def trigonal_point_bound(q: int = 2) -> int:
    """Upper bound q^2 + q + 2 for trigonal genus-5 curves."""
    return q * q + q + 2


def gonality_bounds(genus: int, has_point: bool) -> Tuple[int, int]:
    """Unconditional (lower, upper) gonality bounds from the genus alone."""
    if genus < 0:
        raise ValueError("Genus must be non-negative")
    if genus == 0:
        return 1, 1
    if genus <= 2:
        return 1, 2
    return 1, genus if has_point else genus + 1


def elliptic_curve_count(k: int = 1) -> int:
    """Points of y^2 + y = x^3 + x as the plane cubic Y^2 Z + Y Z^2 = X^3 + X Z^2."""
    return count_points([MultiPoly.parse("y^2z + yz^2 + x^3 + xz^2", "P2")], 2, k)


# Hyperelliptic family

@dataclass(frozen=True)
class HyperellipticModel:
    """Two affine charts of y^2 + h(x) y = f(x) and their F_{2^k}-point counts."""
    genus: int
    affine: MultiPoly
    infinity: MultiPoly
    affine_points: int
    infinity_points: int

    @property
    def count(self) -> int:
        return self.affine_points + self.infinity_points


def _chart_points(poly: MultiPoly, k: int, first_coordinate_zero: bool = False) -> int:
    q = 1 << k
    xs = np.repeat(np.arange(q, dtype=np.uint8), q)
    ys = np.tile(np.arange(q, dtype=np.uint8), q)
    points = np.stack([xs, ys], axis=1)
    if first_coordinate_zero:
        points = points[points[:, 0] == 0]
    return int(np.count_nonzero(poly.evaluate_array(points, k) == 0))


def hyperelliptic_family(g: int, k: int = 1) -> HyperellipticModel:
    """
    The genus-g curve y^2 + (x^{g+1} + x^g + 1) y = (x(x + 1))^{g - d}, d = g mod 2.

    The chart at infinity is z^2 + (w^{g+1} + w + 1) z = w^{2 + 2d} (1 + w)^{g - d}
    with w = 1/x; its points with w != 0 are already affine points, so only
    w = 0 is added.
    """
    if g < 2:
        raise ValueError(f"Hyperelliptic family needs genus >= 2, got {g}")
    d = g % 2
    x, y = MultiPoly.variable("x", "xy"), MultiPoly.variable("y", "xy")
    one = MultiPoly.one("xy")
    affine = y ** 2 + (x ** (g + 1) + x ** g + one) * y + (x * (x + one)) ** (g - d)
    w, z = MultiPoly.variable("w", "wz"), MultiPoly.variable("z", "wz")
    unit = MultiPoly.one("wz")
    infinity = z ** 2 + (w ** (g + 1) + w + unit) * z + w ** (2 + 2 * d) * (unit + w) ** (g - d)
    return HyperellipticModel(
        genus=g,
        affine=affine,
        infinity=infinity,
        affine_points=_chart_points(affine, k),
        infinity_points=_chart_points(infinity, k, first_coordinate_zero=True),
    )


def hyperelliptic_certificate(g: int) -> GonalityCertificate:
    model = hyperelliptic_family(g)
    return GonalityCertificate(
        genus=g, lower=2, lower_criterion=POSITIVE_GENUS,
        upper=2, upper_criterion=HYPERELLIPTIC_MAP, rational_points=model.count,
    )


# Plane curves

def plane_curve_smooth_check(f: MultiPoly) -> bool:
    """True iff f, df/dx, df/dy, df/dz have no common zero in P^2 over the algebraic closure."""
    if len(f.variables) != 3 or not f.is_homogeneous() or f.is_zero():
        raise ValueError("Plane curve check needs a nonzero form in x, y, z")
    partials = [f.partial(i) for i in range(3)]
    for k in (1, 2):
        if singular_point_witness([f], partials, projective_points(3, k), k) is not None:
            return False
    return is_projectively_empty(Ideal.of([f] + partials))


def genus3_certificate(quartic: MultiPoly) -> GonalityCertificate:
    """Gonality of a smooth plane quartic: 3 with a rational point, 4 without."""
    if len(quartic.variables) != 3 or not quartic.is_homogeneous() or quartic.degree != 4:
        raise SingularCurveError("Expected a homogeneous quartic in x, y, z")
    if not plane_curve_smooth_check(quartic):
        raise SingularCurveError(f"Quartic {quartic} is singular")
    n1 = count_points([quartic], 2, 1)
    if n1 > 0:
        return GonalityCertificate(3, 3, PLANE_QUARTIC_NOT_HYPERELLIPTIC, 3, RATIONAL_POINT_PROJECTION, n1)
    return GonalityCertificate(3, 4, TRIGONAL_NEEDS_RATIONAL_POINT, 4, GENUS_PLUS_ONE, n1)


# Genus 4: complete intersections of a quadric and a cubic in P^3

def genus4_smooth_check(quadric: QuadraticForm, cubic: MultiPoly) -> SmoothCurveVerdict:
    if quadric.n != 4 or len(cubic.variables) != 4:
        raise ValueError("Genus-4 check needs a quadric and a cubic in x, y, z, w")
    return smooth_complete_intersection([quadric.to_poly(), cubic])


def degree4_point_on_rational_hyperplane(forms: Sequence[MultiPoly]) -> bool:
    """True iff some F_16-point has F_2-linearly dependent coordinates."""
    for row in rational_points(forms, 3, 4):
        if rank_of_rows([int(c) for c in row], 4) < 4:
            return True
    return False


def genus4_certificate(quadric: QuadraticForm, cubic: MultiPoly) -> GonalityCertificate:
    """
    Gonality of the canonical genus-4 curve V(quadric, cubic).

    Split or cone quadrics carry a ruling of trisecant lines (gonality 3). On
    the anisotropic quadric a g^1_4 exists iff some degree-4 divisor spans only
    a plane: an F_2- or F_4-point, or an F_16-point on a rational hyperplane.
    """
    verdict = genus4_smooth_check(quadric, cubic)
    if not verdict.is_smooth_curve:
        raise SingularCurveError(f"V({quadric}, {cubic}) is not a smooth curve")
    forms = [quadric.to_poly(), cubic]
    n1 = count_points(forms, 3, 1)
    kind = quadric_surface_kind(quadric)
    if kind in ("split", "cone"):
        return GonalityCertificate(4, 3, CANONICAL_NOT_HYPERELLIPTIC, 3, QUADRIC_RULING, n1)
    n2 = count_points(forms, 3, 2)
    if n1 > 0 or n2 > 0 or degree4_point_on_rational_hyperplane(forms):
        return GonalityCertificate(4, 4, ANISOTROPIC_QUADRIC, 4, HYPERPLANE_DEGREE4_DIVISOR, n1)
    return GonalityCertificate(4, 5, NO_HYPERPLANE_DIVISOR, 5, GENUS_PLUS_ONE, n1)


# Genus 5: canonical curves cut out by three quadrics in P^4

def pencil_members(q1: QuadraticForm, q2: QuadraticForm, q3: QuadraticForm) -> List[int]:
    """Coefficient vectors of the seven nonzero F_2-combinations."""
    a, b, c = q1.coeffs, q2.coeffs, q3.coeffs
    return [a, b, a ^ b, c, a ^ c, b ^ c, a ^ b ^ c]


def genus5_certificate(record: CurveRecord) -> GonalityCertificate:
    """
    Gonality of a smooth canonical genus-5 curve.

    A quadric of type I or II through the curve has a ruling cutting a g^1_4.
    Without one the gonality is at least 5, and a rational point or a point of
    degree 3 produces a g^1_5.
    """
    verdict = record.smooth_verdict
    if verdict is not None and not verdict.is_smooth_curve:
        raise SingularCurveError(f"Record {record.to_fields()[:3]} is not a smooth curve")
    table = get_type_table()
    types = {table.type_of(c) for c in pencil_members(record.q1, record.q2, record.q3)}
    n1, _, n3, _ = record.counts
    if types & {FormType.I, FormType.II}:
        return GonalityCertificate(5, 4, PENCIL_TYPE_I_II, 4, PENCIL_TYPE_I_II, n1)
    if n1 > 0:
        return GonalityCertificate(5, 5, PENCIL_TYPES_III_IV, 5, RATIONAL_POINT_PROJECTION, n1)
    if n3 > 0:
        return GonalityCertificate(5, 5, PENCIL_TYPES_III_IV, 5, CUBIC_POINT_PENCIL, n1)
    return GonalityCertificate(5, 5, PENCIL_TYPES_III_IV, 6, GENUS_PLUS_ONE, n1)


def curve_point_counts(forms: Sequence[MultiPoly], ambient_dim: int, degrees: Sequence[int] = (1, 2, 3, 4)) -> Tuple[int, ...]:
    return tuple(count_points(forms, ambient_dim, k) for k in degrees)


# Plane quintics with one double point

CUSP = "cusp"
SPLIT_NODE = "split_node"
NONSPLIT_NODE = "nonsplit_node"

SINGULARITY_CORRECTION: Dict[str, int] = {CUSP: 1, SPLIT_NODE: 2, NONSPLIT_NODE: 0}


def _tangent_cone_type(f2: QuadraticForm) -> str:
    a, b, c = f2.coefficient(0, 0), f2.coefficient(0, 1), f2.coefficient(1, 1)
    if b == 0:
        return CUSP
    if a and c:
        return NONSPLIT_NODE
    return SPLIT_NODE


@dataclass(frozen=True)
class QuinticModel:
    """A plane quintic in x, y, z with a double point at (0:0:1) and tangent cone f2."""
    f: MultiPoly
    f2: QuadraticForm
    singularity_type: str

    @classmethod
    def from_poly(cls, f: MultiPoly) -> "QuinticModel":
        if len(f.variables) != 3 or not f.is_homogeneous() or f.degree != 5:
            raise SingularCurveError("Expected a homogeneous quintic in x, y, z")
        if any(f.coefficient(e) for e in ([0, 0, 5], [1, 0, 4], [0, 1, 4])):
            raise SingularCurveError("(0:0:1) is not a singular point of the quintic")
        coeffs = 0
        for bit, e in enumerate(([2, 0, 3], [1, 1, 3], [0, 2, 3])):
            coeffs |= f.coefficient(e) << bit
        f2 = QuadraticForm(2, coeffs)
        if f2.is_zero():
            raise SingularCurveError("(0:0:1) has multiplicity above 2")
        return cls(f=f, f2=f2, singularity_type=_tangent_cone_type(f2))


def _in_radical(variable: int, basis: Sequence[MultiPoly], variables: Tuple[str, ...]) -> bool:
    exps = [0, 0, 0]
    for n in range(1, RADICAL_EXPONENT_LIMIT + 1):
        exps[variable] = n
        power = MultiPoly(frozenset({pack(exps)}), variables)
        if reduce(power, basis).is_zero():
            return True
    return False


def only_singularity_at_origin(model: QuinticModel, sweep_degrees: Sequence[int] = (1, 2, 3, 4, 5)) -> bool:
    """
    True iff (0:0:1) is the unique singular point of V(f).

    The singular locus must be zero-dimensional with x and y in its radical;
    point sweeps over small fields are checked as well.
    """
    f = model.f
    partials = [f.partial(i) for i in range(3)]
    for k in sweep_degrees:
        points = projective_points(3, k)
        mask = np.ones(points.shape[0], dtype=bool)
        for g in [f] + partials:
            if not g.is_zero():
                mask &= g.evaluate_array(points, k) == 0
        singular = points[mask]
        if any(tuple(int(c) for c in row) != (0, 0, 1) for row in singular):
            return False
    ideal = Ideal.of([f] + partials)
    basis = groebner_basis(ideal)
    if krull_dimension_of_leads(leading_monomials(basis), 3) != 1:
        return False
    return _in_radical(0, basis, f.variables) and _in_radical(1, basis, f.variables)


def quintic_smooth_model_count(model: QuinticModel, k: int = 1) -> int:
    """Rational points of the smooth model: plane points off the double point plus its branches."""
    if not only_singularity_at_origin(model):
        raise SingularCurveError(f"{model.f} has singularities other than (0:0:1)")
    points = rational_points([model.f], 2, k)
    off_node = sum(1 for row in points if tuple(int(c) for c in row) != (0, 0, 1))
    return off_node + SINGULARITY_CORRECTION[model.singularity_type]
