"""
Orthogonal Group Tests
======================

Group orders, the stratum product behind the transitivity search, orbit
decompositions and the strategy factory.
"""

import pytest

from src.common.bitlinalg import BinMatrix
from src.common.errors import SingularMatrixError
from src.quadratic_forms.group_strategies import (
    NaiveSearchStrategy, TransitivityStrategy, get_orthogonal_group_strategy,
)
from src.quadratic_forms.orthgroup import (
    act, has_zero_upper_block, orbit_minimum_transform, orbit_representatives, orth_fast,
    orth_fast_report, orth_naive, orthogonal_group, stabilizer_order, witt_strata,
)
from src.curves.reference_curves import TYPE_NORMAL_FORMS
from src.quadratic_forms.quadform import FormType, QuadraticForm, get_type_table

TYPE_III = QuadraticForm.parse("vw + x^2 + xy + y^2")
TYPE_IV = QuadraticForm.parse("vw + xy + z^2")


def test_census_group_orders():
    assert orthogonal_group(TYPE_III).order == 1920
    assert orthogonal_group(TYPE_IV).order == 720


def test_every_element_preserves_the_form():
    group = orthogonal_group(TYPE_IV)
    assert all(act(g, TYPE_IV) == TYPE_IV for g in group.elements)


def test_elements_preserve_the_singular_subspace():
    group = orthogonal_group(TYPE_III)
    assert all(has_zero_upper_block(g, TYPE_III) for g in group.elements)


def test_strata_of_a_type_one_form():
    report = orth_fast_report(QuadraticForm.parse("vw + x^2"))
    sizes = tuple(len(f) for f in report.strata.y_factors)
    assert sizes == (12, 4, 3)
    assert report.strata.y_size == 144
    assert report.search_space_size == 1_179_648


@pytest.mark.parametrize("label", [pytest.param("I", marks=pytest.mark.slow), "II", "III", "IV"])
def test_group_is_transitive_on_the_witt_product(label):
    form = QuadraticForm.parse(TYPE_NORMAL_FORMS[label])
    strata = witt_strata(form)
    base = strata.base_point()
    orbit = {tuple(g.apply(v) for v in base) for g in orthogonal_group(form).elements}
    assert orbit == set(strata.members())


@pytest.mark.parametrize("text,order", [("xy + zw", 72), ("xy + z^2 + zw + w^2", 120)])
def test_naive_and_fast_agree_on_quadric_surfaces(text, order):
    form = QuadraticForm.parse(text, 4)
    fast = orth_fast(form)
    assert fast.order == order
    assert fast.elements == orth_naive(form).elements


@pytest.mark.slow
@pytest.mark.parametrize("text", ["vw + x^2", "vw + xy", "vw + x^2 + xy + y^2", "vw + xy + z^2"])
def test_naive_and_fast_agree_in_five_variables(text):
    form = QuadraticForm.parse(text)
    assert orth_fast(form).elements == orth_naive(form).elements


def test_singular_matrix_cannot_act():
    with pytest.raises(SingularMatrixError):
        act(BinMatrix(5, (1, 1, 4, 8, 16)), TYPE_IV)


def test_orbits_of_type_four_forms():
    group = orthogonal_group(TYPE_IV)
    forms = [QuadraticForm(5, int(c)) for c in get_type_table().forms_of([FormType.IV])]
    partition = orbit_representatives(group, forms)
    sizes = partition.orbit_sizes()
    assert sum(sizes) == 13888
    for rep, size in zip(partition.representatives, sizes):
        assert size * stabilizer_order(group, rep) == group.order
        assert partition.representative_of(rep) == rep


def test_orbit_minimum_transform():
    group = orthogonal_group(TYPE_IV)
    form = QuadraticForm.parse("vx + wz + y^2 + xz")
    minimum, g = orbit_minimum_transform(group, form)
    assert act(g, form) == minimum
    assert minimum.coeffs <= form.coeffs


def test_strata_exclude_the_singular_points():
    strata = witt_strata(TYPE_III)
    assert len(strata.sset) == 1
    assert set(strata.sset) <= set(strata.qset)


def test_strategy_factory():
    assert isinstance(get_orthogonal_group_strategy(), TransitivityStrategy)
    assert isinstance(get_orthogonal_group_strategy("naive"), NaiveSearchStrategy)
    with pytest.raises(ValueError):
        get_orthogonal_group_strategy("bogus")


def test_strategy_records_elapsed_time_and_report():
    strategy = get_orthogonal_group_strategy("fast")
    group = strategy.compute(TYPE_IV)
    assert group.order == 720
    assert strategy.last_elapsed is not None
    assert strategy.last_report.group is group
    assert strategy.get_strategy_name() == "Transitivity"
