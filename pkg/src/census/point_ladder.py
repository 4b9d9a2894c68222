"""
Point Ladder
============

The F_{2^k}-points of V(Q1) in P^4 for k = 1..4, stored with the value of every
quadratic monomial at every point. Restricting to V(Q1, Q2) and counting
V(Q1, Q2, Q3) then costs one XOR of precomputed rows per coefficient bit.
"""

from typing import Dict, List, Sequence, Tuple

import numpy as np

from src.common.binfield import projective_points
from src.quadratic_forms.quadform import QuadraticForm, evaluate_on_monomials, quadratic_monomial_values

LADDER_DEGREES = (1, 2, 3, 4)


class PointLadder:
    """Points of a quadric intersection over F_2, F_4, F_8 and F_16."""

    def __init__(self, levels: Dict[int, Tuple[np.ndarray, np.ndarray]], forms: Tuple[QuadraticForm, ...]):
        self.levels = levels
        self.forms = forms

    @classmethod
    def for_quadric(cls, q1: QuadraticForm, degrees: Sequence[int] = LADDER_DEGREES) -> "PointLadder":
        if q1.n != 5:
            raise ValueError("The point ladder works in P^4")
        levels = {}
        for k in degrees:
            points = projective_points(5, k)
            values = quadratic_monomial_values(points, k)
            on_q1 = evaluate_on_monomials(q1.coeffs, values) == 0
            levels[k] = (points[on_q1], np.ascontiguousarray(values[:, on_q1]))
        return cls(levels, (q1,))

    def restrict(self, form: QuadraticForm) -> "PointLadder":
        """The ladder of the intersection with one more quadric."""
        levels = {}
        for k, (points, values) in self.levels.items():
            on_form = evaluate_on_monomials(form.coeffs, values) == 0
            levels[k] = (points[on_form], np.ascontiguousarray(values[:, on_form]))
        return PointLadder(levels, self.forms + (form,))

    @property
    def degrees(self) -> List[int]:
        return sorted(self.levels)

    def size(self, k: int) -> int:
        return int(self.levels[k][0].shape[0])

    def counts(self, form: QuadraticForm) -> Tuple[int, ...]:
        """Points of the intersection with ``form`` at every level, lowest k first."""
        return tuple(
            int(np.count_nonzero(evaluate_on_monomials(form.coeffs, values) == 0))
            for _, values in (self.levels[k] for k in self.degrees)
        )

    def curve_points(self, form: QuadraticForm) -> List[Tuple[np.ndarray, int]]:
        """(points, k) pairs of the intersection with ``form``."""
        result = []
        for k in self.degrees:
            points, values = self.levels[k]
            result.append((points[evaluate_on_monomials(form.coeffs, values) == 0], k))
        return result
