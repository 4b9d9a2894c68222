"""
Reference Curves
================

Explicit curves over F_2 whose point counts and gonalities are known, used by
the verification battery and the tests. Equations are written in the ambient's
variable names: x,y,z for plane curves, x,y,z,w in P^3, v,w,x,y,z in P^4.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class ReferenceCurve:
    """Equations of a curve plus the values it is expected to produce."""
    name: str
    ambient: str
    equations: Tuple[str, ...]
    genus: int
    expected_points: int
    expected_gonality: Optional[int] = None
    extras: Dict[str, int] = field(default_factory=dict)


# Weierstrass cubic y^2 + y = x^3 + x, homogenized
ELLIPTIC_CUBIC = ReferenceCurve(
    name="elliptic-cubic",
    ambient="P2",
    equations=("y^2z + yz^2 + x^3 + xz^2",),
    genus=1,
    expected_points=5,
    expected_gonality=2,
)

SEVEN_POINT_QUARTIC = ReferenceCurve(
    name="seven-point-quartic",
    ambient="P2",
    equations=("x^3y + x^2y^2 + xz^3 + x^2z^2 + y^3z + yz^3",),
    genus=3,
    expected_points=7,
    expected_gonality=3,
)

POINTLESS_QUARTIC = ReferenceCurve(
    name="pointless-quartic",
    ambient="P2",
    equations=("x^4 + y^4 + z^4 + x^2y^2 + x^2z^2 + y^2z^2 + x^2yz + xy^2z + xyz^2",),
    genus=3,
    expected_points=0,
    expected_gonality=4,
)

# x^4 + y^4 + z^4 = (x + y + z)^4 in characteristic 2
FERMAT_QUARTIC = ReferenceCurve(
    name="fermat-quartic",
    ambient="P2",
    equations=("x^4 + y^4 + z^4",),
    genus=3,
    expected_points=3,
)

GENUS4_SPLIT_QUADRIC = ReferenceCurve(
    name="genus4-split-quadric",
    ambient="P3",
    equations=("xy + zw", "xy^2 + y^3 + x^2z + y^2z + xz^2 + x^2w + y^2w + xw^2"),
    genus=4,
    expected_points=8,
    expected_gonality=3,
)

GENUS4_ANISOTROPIC_WITH_POINTS = ReferenceCurve(
    name="genus4-anisotropic-five-points",
    ambient="P3",
    equations=("xy + z^2 + zw + w^2", "xy^2 + x^2z + y^2z + yz^2 + x^2w + z^2w"),
    genus=4,
    expected_points=5,
    expected_gonality=4,
)

GENUS4_ANISOTROPIC_POINTLESS = ReferenceCurve(
    name="genus4-anisotropic-pointless",
    ambient="P3",
    equations=("xy + z^2 + zw + w^2", "x^3 + y^3 + z^3 + y^2w + xzw"),
    genus=4,
    expected_points=0,
    expected_gonality=5,
    extras={"N2": 0, "N4": 4},
)

# (1 : t^3 : t + 1 : t^2 + t) with t^4 = t + 1, as power-basis bit patterns
GENUS4_POINTLESS_DEGREE4_POINT = (0b0001, 0b1000, 0b0011, 0b0110)

NODAL_QUINTIC = ReferenceCurve(
    name="nodal-quintic",
    ambient="P2",
    equations=("xyz^3 + x^3z^2 + y^3z^2 + x^4z + xy^3z + y^4z + x^4y + x^2y^3",),
    genus=5,
    expected_points=8,
    extras={"plane_points": 7},
)

GENUS5_PENCIL_TYPE_II = ReferenceCurve(
    name="genus5-nine-points",
    ambient="P4",
    equations=("vw + xy", "vx + z(v + w + z)", "(x + y)^2 + y(v + w)"),
    genus=5,
    expected_points=9,
    expected_gonality=4,
)

GENUS5_MAXIMAL_PENTAGONAL = ReferenceCurve(
    name="genus5-three-points",
    ambient="P4",
    equations=("vw + xy + z^2", "vx + y^2 + vz + wz", "x^2 + wy + xy + vz + xz"),
    genus=5,
    expected_points=3,
    expected_gonality=5,
)

# Normal forms of the four geometrically irreducible quadric types in P^4
TYPE_NORMAL_FORMS: Dict[str, str] = {
    "I": "vw + x^2",
    "II": "vw + xy",
    "III": "vw + x^2 + xy + y^2",
    "IV": "vw + xy + z^2",
}

ALL_REFERENCE_CURVES = (
    ELLIPTIC_CUBIC,
    SEVEN_POINT_QUARTIC,
    POINTLESS_QUARTIC,
    GENUS4_SPLIT_QUADRIC,
    GENUS4_ANISOTROPIC_WITH_POINTS,
    GENUS4_ANISOTROPIC_POINTLESS,
    NODAL_QUINTIC,
    GENUS5_PENCIL_TYPE_II,
    GENUS5_MAXIMAL_PENTAGONAL,
)
