"""
Curve Toolkit Tests
===================

Point counts and gonality certificates of the reference curves.
"""

import pytest

from src.common.errors import SingularCurveError
from src.common.polynomials import MultiPoly
from src.curves.curvekit import (
    CurveRecord, QuinticModel, curve_point_counts, elliptic_curve_count, find_points,
    genus3_certificate, genus4_certificate, genus5_certificate, gonality_bounds,
    gonality_point_bound, hyperelliptic_certificate, hyperelliptic_family,
    only_singularity_at_origin, plane_curve_smooth_check, quintic_smooth_model_count,
    trigonal_point_bound, weil_upper_bound,
)
from src.curves.reference_curves import (
    ELLIPTIC_CUBIC, FERMAT_QUARTIC, GENUS4_ANISOTROPIC_POINTLESS, GENUS4_ANISOTROPIC_WITH_POINTS,
    GENUS4_SPLIT_QUADRIC, GENUS5_MAXIMAL_PENTAGONAL, GENUS5_PENCIL_TYPE_II, NODAL_QUINTIC,
    POINTLESS_QUARTIC, SEVEN_POINT_QUARTIC,
)
from src.curves.groebner import smooth_curve_check
from src.quadratic_forms.quadform import QuadraticForm


def _poly(curve, index=0):
    return MultiPoly.parse(curve.equations[index], curve.ambient)


def test_bounds():
    assert weil_upper_bound(1, 2) == 5
    assert weil_upper_bound(5, 2) == 17
    assert gonality_point_bound(5) == 15
    assert trigonal_point_bound() == 8
    assert gonality_bounds(0, has_point=False) == (1, 1)
    assert gonality_bounds(4, has_point=True) == (1, 4)
    assert gonality_bounds(4, has_point=False) == (1, 5)


def test_elliptic_cubic():
    assert elliptic_curve_count(1) == ELLIPTIC_CUBIC.expected_points
    points = find_points([_poly(ELLIPTIC_CUBIC)], 2)
    assert len(points) == 5


@pytest.mark.parametrize("g", range(2, 11))
def test_hyperelliptic_family_has_six_points(g):
    assert hyperelliptic_family(g).count == 6
    assert hyperelliptic_certificate(g).gonality == 2


@pytest.mark.parametrize("curve", [SEVEN_POINT_QUARTIC, POINTLESS_QUARTIC])
def test_plane_quartic_certificates(curve):
    certificate = genus3_certificate(_poly(curve))
    assert certificate.rational_points == curve.expected_points
    assert certificate.gonality == curve.expected_gonality


def test_fermat_quartic_is_singular():
    quartic = _poly(FERMAT_QUARTIC)
    assert not plane_curve_smooth_check(quartic)
    with pytest.raises(SingularCurveError):
        genus3_certificate(quartic)


@pytest.mark.parametrize("curve", [GENUS4_SPLIT_QUADRIC, GENUS4_ANISOTROPIC_WITH_POINTS, GENUS4_ANISOTROPIC_POINTLESS])
def test_genus_four_certificates(curve):
    quadric = QuadraticForm.parse(curve.equations[0], n=4)
    certificate = genus4_certificate(quadric, _poly(curve, 1))
    assert certificate.rational_points == curve.expected_points
    assert certificate.gonality == curve.expected_gonality


def test_pointless_genus_four_curve_over_extensions():
    forms = [_poly(GENUS4_ANISOTROPIC_POINTLESS, i) for i in range(2)]
    counts = curve_point_counts(forms, 3, degrees=(2, 4))
    assert counts == (GENUS4_ANISOTROPIC_POINTLESS.extras["N2"], GENUS4_ANISOTROPIC_POINTLESS.extras["N4"])


def test_nodal_quintic():
    model = QuinticModel.from_poly(_poly(NODAL_QUINTIC))
    assert only_singularity_at_origin(model)
    assert len(find_points([model.f], 2)) == NODAL_QUINTIC.extras["plane_points"]
    assert quintic_smooth_model_count(model) == NODAL_QUINTIC.expected_points


def test_quintic_needs_a_double_point_at_the_origin():
    with pytest.raises(SingularCurveError):
        QuinticModel.from_poly(MultiPoly.parse("z^5 + x^5 + y^5", "P2"))


def _record(curve):
    forms = [QuadraticForm.parse(eq) for eq in curve.equations]
    counts = curve_point_counts([f.to_poly() for f in forms], 4)
    return CurveRecord(forms[0], forms[1], forms[2], counts, smooth_curve_check(*forms))


@pytest.mark.parametrize("curve", [GENUS5_PENCIL_TYPE_II, GENUS5_MAXIMAL_PENTAGONAL])
def test_genus_five_certificates(curve):
    record = _record(curve)
    assert record.n1 == curve.expected_points
    assert record.frobenius_consistent()
    assert record.weil_consistent()
    certificate = genus5_certificate(record)
    assert certificate.exact
    assert certificate.gonality == curve.expected_gonality
    assert certificate.rational_points <= gonality_point_bound(certificate.gonality)


def test_census_record_fields():
    record = _record(GENUS5_MAXIMAL_PENTAGONAL)
    fields = record.to_fields()
    assert len(fields) == 7
    restored = CurveRecord.from_fields(fields)
    assert restored.sort_key() == record.sort_key()
    assert restored.counts == record.counts
    with pytest.raises(ValueError):
        CurveRecord.from_fields(fields[:6])


def test_inconsistent_counts_are_detected():
    q = QuadraticForm.parse("vw + xy + z^2")
    assert not CurveRecord(q, q, q, (3, 2, 3, 3)).frobenius_consistent()
    assert not CurveRecord(q, q, q, (40, 5, 9, 17)).weil_consistent()
