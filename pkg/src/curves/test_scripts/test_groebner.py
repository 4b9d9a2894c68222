"""
Gröbner Engine Tests
====================

Reduced bases are checked against sympy; Hilbert data, projective emptiness
and the smooth-curve test are checked on curves with known invariants.
"""

import random

import pytest
import sympy

from src.census.census_pipeline import accept_triple, build_A, build_B, census_q1, pencil_filter
from src.common.bitlinalg import random_invertible
from src.common.errors import GroebnerBudgetExceeded, NonHomogeneousIdealError
from src.common.polynomials import exponents
from src.curves.groebner import (
    Ideal, groebner_basis, hilbert_function, hilbert_polynomial, is_projectively_empty,
    jacobian_minors, lazard_bound, proj_dimension, reduce, s_polynomial, smooth_curve_check,
    truncated_hilbert_function,
)
from src.curves.reference_curves import (
    GENUS4_SPLIT_QUADRIC, GENUS5_MAXIMAL_PENTAGONAL, GENUS5_PENCIL_TYPE_II, SEVEN_POINT_QUARTIC,
)
from src.quadratic_forms.quadform import QuadraticForm

PENTAGONAL = Ideal.parse(GENUS5_MAXIMAL_PENTAGONAL.equations, "P4")

ORACLE_IDEALS = [
    (GENUS5_MAXIMAL_PENTAGONAL.equations, "P4"),
    (GENUS4_SPLIT_QUADRIC.equations, "P3"),
    (("x^2 + yz", "xy + z^2", "y^3 + xz^2"), "P2"),
    (("x^2y + z^3", "xy^2 + yz^2 + x^3"), "P2"),
]


def _term_sets(polys, nvars):
    return {frozenset(exponents(t)[:nvars] for t in p.terms) for p in polys}


def _with_stars(poly):
    out = []
    for monomial in str(poly).split(" + "):
        factors = []
        i = 0
        while i < len(monomial):
            name = monomial[i]
            i += 1
            if i < len(monomial) and monomial[i] == "^":
                j = i + 1
                while j < len(monomial) and monomial[j].isdigit():
                    j += 1
                factors.append(f"{name}**{monomial[i + 1:j]}")
                i = j
            else:
                factors.append(name)
        out.append("*".join(factors))
    return " + ".join(out)


@pytest.mark.parametrize("equations,ambient", ORACLE_IDEALS)
def test_reduced_basis_matches_sympy(equations, ambient):
    ideal = Ideal.parse(equations, ambient)
    ours = groebner_basis(ideal)
    gens = sympy.symbols(" ".join(ideal.variables))
    names = dict(zip(ideal.variables, gens))
    exprs = [sympy.sympify(_with_stars(g), locals=names) for g in ideal.generators]
    expected = sympy.groebner(exprs, *gens, modulus=2, order="grevlex")
    expected_sets = {frozenset(sympy.Poly(g, *gens, modulus=2).monoms()) for g in expected.exprs}
    assert _term_sets(ours, ideal.nvars) == expected_sets


def test_s_polynomials_reduce_to_zero():
    basis = groebner_basis(PENTAGONAL)
    for i, f in enumerate(basis):
        for g in basis[i + 1:]:
            assert reduce(s_polynomial(f, g), basis).is_zero()


def test_generators_reduce_to_zero():
    basis = groebner_basis(PENTAGONAL)
    assert all(reduce(g, basis).is_zero() for g in PENTAGONAL.generators)


def test_canonical_genus_five_hilbert_data():
    for d in range(2, 7):
        assert hilbert_function(PENTAGONAL, d) == 8 * d - 4
        assert truncated_hilbert_function(PENTAGONAL, d) == 8 * d - 4
    assert hilbert_function(PENTAGONAL, 1) == 5
    polynomial = hilbert_polynomial(PENTAGONAL)
    assert polynomial.dimension == 1
    assert polynomial.degree == 8
    assert polynomial.arithmetic_genus == 5


def test_plane_quartic_and_space_sextic_genera():
    quartic = hilbert_polynomial(Ideal.parse(SEVEN_POINT_QUARTIC.equations, "P2"))
    assert (quartic.degree, quartic.arithmetic_genus) == (4, 3)
    sextic = hilbert_polynomial(Ideal.parse(GENUS4_SPLIT_QUADRIC.equations, "P3"))
    assert (sextic.degree, sextic.arithmetic_genus) == (6, 4)


def test_projective_dimension():
    assert proj_dimension(Ideal.parse(["vw + xy", "vx + z^2"])) == 2
    assert proj_dimension(PENTAGONAL) == 1
    assert proj_dimension(Ideal.parse(["v", "w", "x", "y", "z"])) == -1


@pytest.mark.parametrize("equations,dimension", [
    (("vw + xy", "vx + z^2"), 2),
    (GENUS5_MAXIMAL_PENTAGONAL.equations, 1),
    (GENUS5_PENCIL_TYPE_II.equations, 1),
    (("v^2", "w^2", "x^2"), 1),
    (("vw + xy + z^2",), 3),
])
def test_projective_dimension_survives_coordinate_changes(equations, dimension):
    rng = random.Random(len(equations) * 31 + dimension)
    forms = [QuadraticForm.parse(eq) for eq in equations]
    assert proj_dimension(Ideal.of([f.to_poly() for f in forms])) == dimension
    for _ in range(10):
        g = random_invertible(5, rng)
        assert proj_dimension(Ideal.of([f.substitute(g).to_poly() for f in forms])) == dimension


def test_projective_emptiness():
    assert is_projectively_empty(Ideal.parse(["x", "y", "z"], "P2"))
    assert not is_projectively_empty(Ideal.parse(["x", "y"], "P2"))
    assert is_projectively_empty(Ideal.parse(["x^2 + yz", "y^2 + xz", "z^2 + xy", "xyz"], "P2"))


def test_census_regularity_bound():
    # three quadrics and ten cubic minors in five variables
    assert lazard_bound([2, 2, 2] + [3] * 10, 5) == 11


def test_pentagonal_curve_is_smooth():
    forms = [QuadraticForm.parse(eq) for eq in GENUS5_MAXIMAL_PENTAGONAL.equations]
    verdict = smooth_curve_check(*forms)
    assert verdict.is_smooth_curve
    assert (verdict.degree, verdict.arithmetic_genus) == (8, 5)
    assert len(jacobian_minors([f.to_poly() for f in forms])) == 10


def test_non_reduced_curve_is_singular():
    verdict = smooth_curve_check(*(QuadraticForm.parse(t) for t in ("v^2", "w^2", "x^2")))
    assert verdict.is_curve
    assert not verdict.is_smooth_curve


def test_repeated_quadric_is_a_surface():
    q = QuadraticForm.parse("vw + xy + z^2")
    verdict = smooth_curve_check(q, q, QuadraticForm.parse("vx + y^2"))
    assert verdict.proj_dim == 2
    assert not verdict.is_curve


def test_step_budget():
    with pytest.raises(GroebnerBudgetExceeded):
        groebner_basis(PENTAGONAL, step_budget=1)


def test_non_homogeneous_input():
    with pytest.raises(NonHomogeneousIdealError):
        hilbert_polynomial(Ideal.parse(["x^2 + y"], "P2"))


def test_empty_generator_list():
    with pytest.raises(ValueError):
        Ideal.of([])


@pytest.mark.slow
@pytest.mark.parametrize("label", ["III", "IV"])
def test_hilbert_function_of_sampled_census_curves(label):
    rng = random.Random(2024)
    q1 = census_q1(label)
    a_forms, b_forms = build_A(q1), build_B(q1)
    checked = 0
    for _ in range(20_000):
        q2, q3 = rng.choice(a_forms), rng.choice(b_forms)
        if not pencil_filter(q1, q2, q3) or accept_triple(q1, q2, q3) is None:
            continue
        ideal = Ideal.of([q.to_poly() for q in (q1, q2, q3)])
        assert [truncated_hilbert_function(ideal, d) for d in range(4, 9)] == [8 * d - 4 for d in range(4, 9)]
        checked += 1
        if checked == 50:
            break
    assert checked == 50
