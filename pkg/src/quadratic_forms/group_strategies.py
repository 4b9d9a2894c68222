"""
Orthogonal Group Strategies
===========================

Interchangeable algorithms for computing O(Q), selected by name from the CLI
(``--method naive|fast``) and from the census preparation phase.
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Optional

from src.quadratic_forms.orthgroup import OrthGroup, orth_fast_report, orth_naive
from src.quadratic_forms.quadform import QuadraticForm

logger = logging.getLogger("gonality-census")


class OrthogonalGroupStrategy(ABC):
    """Abstract base class for orthogonal group algorithms."""

    def __init__(self):
        self.last_elapsed: Optional[float] = None

    @abstractmethod
    def _compute(self, form: QuadraticForm) -> OrthGroup:
        pass

    @abstractmethod
    def get_strategy_name(self) -> str:
        """Return the name of this strategy."""
        pass

    def compute(self, form: QuadraticForm) -> OrthGroup:
        """Compute O(Q), recording the wall time of the last call."""
        start = time.perf_counter()
        group = self._compute(form)
        self.last_elapsed = time.perf_counter() - start
        logger.info(f"[ORTH] {self.get_strategy_name()}: |O({form})| = {group.order} "
                    f"in {self.last_elapsed:.2f}s")
        return group


class NaiveSearchStrategy(OrthogonalGroupStrategy):
    """Exhaustive search over the matrix space with early column rejection."""

    def get_strategy_name(self) -> str:
        return "NaiveSearch"

    def _compute(self, form: QuadraticForm) -> OrthGroup:
        return orth_naive(form)


class TransitivityStrategy(OrthogonalGroupStrategy):
    """
    Search restricted to the affine spaces {g : g p0 = p}, p in Y.

    The bookkeeping of the last search (strata, solution dimension, candidate
    count) stays available on ``last_report``.
    """

    def __init__(self):
        super().__init__()
        self.last_report = None

    def get_strategy_name(self) -> str:
        return "Transitivity"

    def _compute(self, form: QuadraticForm) -> OrthGroup:
        self.last_report = orth_fast_report(form)
        return self.last_report.group


def get_orthogonal_group_strategy(method: str = None) -> OrthogonalGroupStrategy:
    """
    Factory function for orthogonal group strategies.

    Args:
        method: 'naive', or 'fast' / 'transitivity' (default)

    Returns:
        OrthogonalGroupStrategy instance
    """
    if method is None:
        method = "fast"
    if method == "naive":
        return NaiveSearchStrategy()
    elif method in ("fast", "transitivity"):
        return TransitivityStrategy()
    else:
        raise ValueError(f"Unknown orthogonal group method: {method}. Supported: 'naive', 'fast', 'transitivity'")
