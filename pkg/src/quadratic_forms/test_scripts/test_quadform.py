"""
Quadratic Form Classification Tests
===================================

Types I-IV, anatomy, normal forms and the vectorized type table.
"""

import random

import pytest

from src.common.bitlinalg import random_invertible, rank
from src.common.errors import ZeroFormError
from src.quadratic_forms.quadform import (
    HYPERBOLIC, NORM_TAIL, SQUARE_TAIL, FormType, QuadraticForm, anatomy, classify,
    count_proj_points, get_type_table, index_pairs, norm_form, normal_form, normal_form_coeffs,
    quadric_surface_kind,
)

NORMAL_FORMS = {
    FormType.I: ("vw + x^2", 15, SQUARE_TAIL, 3),
    FormType.II: ("vw + xy", 19, HYPERBOLIC, 4),
    FormType.III: ("vw + x^2 + xy + y^2", 11, NORM_TAIL, 4),
    FormType.IV: ("vw + xy + z^2", 15, SQUARE_TAIL, 5),
}


def test_coefficient_bits_are_lexicographic():
    assert index_pairs(3) == ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
    assert QuadraticForm.parse("vw").hex_id == "0002"
    assert QuadraticForm.parse("v^2").hex_id == "0001"


@pytest.mark.parametrize("form_type", list(NORMAL_FORMS))
def test_normal_forms(form_type):
    text, points, shape, m = NORMAL_FORMS[form_type]
    form = QuadraticForm.parse(text)
    assert classify(form) == form_type
    assert count_proj_points(form) == points
    report = normal_form(form)
    assert report.shape == shape
    assert report.m == m
    assert form.substitute(report.transform) == report.form


def test_geometrically_reducible_forms():
    for text in ("x^2", "xy", "v^2 + vw + w^2", "x^2 + y^2"):
        assert classify(QuadraticForm.parse(text)) == FormType.NOT_GEOM_IRREDUCIBLE


def test_zero_form():
    zero = QuadraticForm(5, 0)
    assert classify(zero) == FormType.ZERO
    with pytest.raises(ZeroFormError):
        anatomy(zero)
    with pytest.raises(ZeroFormError):
        normal_form(zero)


def test_anatomy_of_type_three():
    info = anatomy(QuadraticForm.parse("vw + x^2 + xy + y^2"))
    assert len(info.radical_basis) == 1
    assert len(info.singular_basis) == 1
    assert info.sing_proj_dim == 0
    assert info.active_variables == 4


def test_types_four_and_five_variables_need_five():
    with pytest.raises(ValueError):
        classify(QuadraticForm.parse("xy + zw", 4))


def test_type_is_invariant_under_change_of_variables():
    rng = random.Random(3)
    table = get_type_table()
    for _ in range(100):
        form = QuadraticForm(5, rng.randrange(1, 1 << 15))
        g = random_invertible(5, rng)
        assert classify(form.substitute(g)) == classify(form) == table.type_of(form.coeffs)


def test_type_table_counts():
    table = get_type_table()
    counts = table.counts()
    assert len(table) == 32767
    assert sum(counts.values()) == 32767
    assert counts[FormType.IV] == 13888
    assert counts[FormType.III] + counts[FormType.IV] == 19096
    assert len(table.forms_of([FormType.III, FormType.IV])) == 19096


def test_point_counts_over_extensions():
    # a smooth quadric in P^4 has q^3 + q^2 + q + 1 points over every F_q
    form = QuadraticForm.parse("vw + xy + z^2")
    for k in (1, 2, 3):
        q = 1 << k
        assert count_proj_points(form, k) == q ** 3 + q ** 2 + q + 1


@pytest.mark.parametrize("text,kind,points", [
    ("xy + zw", "split", 9),
    ("xy + z^2", "cone", 7),
    ("xy + z^2 + zw + w^2", "anisotropic", 5),
])
def test_quadric_surfaces(text, kind, points):
    form = QuadraticForm.parse(text, 4)
    assert quadric_surface_kind(form) == kind
    assert count_proj_points(form) == points


def test_reducible_quadric_surface_is_rejected():
    with pytest.raises(ValueError):
        quadric_surface_kind(QuadraticForm.parse("xy", 4))


def test_norm_form_is_anisotropic():
    q = norm_form()
    assert q == QuadraticForm.parse("x^2 + xy + y^2", n=2)
    assert str(q) == "x^2 + xy + y^2"
    assert [q.evaluate(x) for x in range(4)] == [0, 1, 1, 1]


def test_conjugates_of_the_norm_tail_form():
    rng = random.Random(7)
    form = QuadraticForm.parse("vw + x^2 + xy + y^2")
    for _ in range(50):
        conjugate = form.substitute(random_invertible(5, rng))
        report = normal_form(conjugate)
        assert (report.shape, report.m) == (NORM_TAIL, 4)
        assert classify(conjugate) == FormType.III


@pytest.mark.slow
def test_anatomy_and_normal_form_of_every_form():
    for coeffs in range(1, 1 << 15):
        form = QuadraticForm(5, coeffs)
        info = anatomy(form)
        # Q is linear on the radical, so S has codimension at most one there
        assert len(info.radical_basis) - len(info.singular_basis) <= 1

        report = normal_form(form)
        assert rank(report.transform) == 5
        values = form.value_table()
        target = QuadraticForm(5, normal_form_coeffs(5, report.shape, report.m))
        assert tuple(values[report.transform.apply(x)] for x in range(32)) == tuple(target.value_table())
