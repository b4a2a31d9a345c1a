"""Left-shoulder memberships, sigma-counts, and implication degrees.

Scalar fuzzy arithmetic only; the scene/category plumbing sits in
:mod:`fsit.engine`.  All functions are pure and safe to call from any
number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeOutOfRange, EmptyInput, FuzzinessMismatch, NegativeCardinality


@dataclass(frozen=True)
class ShoulderRestriction:
    """A minimal-cardinality test as a left-shoulder membership.

    The membership is 0 up to ``k_minus = k * (1 - fuzziness)``, ramps
    linearly to 1 at ``k`` and stays 1 above it.  ``fuzziness = 0`` gives
    the crisp "at least k" step; ``fuzziness = 1`` accepts any positive
    cardinality with a proportional degree.
    """

    k: float
    fuzziness: float

    def __post_init__(self) -> None:
        if self.k < 0:
            raise NegativeCardinality(f"restriction cardinality {self.k} < 0")
        if not (0.0 <= self.fuzziness <= 1.0):
            raise DegreeOutOfRange(f"fuzziness {self.fuzziness} outside [0, 1]")

    @property
    def k_minus(self) -> float:
        return self.k * (1.0 - self.fuzziness)

    def evaluate(self, cardinality: float) -> float:
        """Membership of ``cardinality`` in this restriction.

        Boundaries are closed outward so the crisp case reduces exactly
        to ``cardinality >= k``; the degenerate k = 0 restriction is the
        empty requirement and evaluates to 1 everywhere.
        """
        if cardinality < 0:
            raise NegativeCardinality(f"cardinality {cardinality} < 0")
        if cardinality >= self.k:
            return 1.0
        k_minus = self.k_minus
        if cardinality <= k_minus:
            return 0.0
        return (cardinality - k_minus) / (self.k - k_minus)


def shoulder_eval(restriction: ShoulderRestriction, cardinality: float) -> float:
    """Functional spelling of :meth:`ShoulderRestriction.evaluate`."""
    return restriction.evaluate(cardinality)


def zadeh_and(degrees: Sequence[float]) -> float:
    """Zadeh conjunction: the minimum of a nonempty degree list."""
    if not degrees:
        raise EmptyInput("conjunction of zero degrees is undefined")
    for value in degrees:
        if not (0.0 <= value <= 1.0):
            raise DegreeOutOfRange(f"conjunct {value} outside [0, 1]")
    return min(degrees)


def sigma_count(per_fact_degrees: Iterable[float]) -> float:
    """Fuzzy-set cardinality as the sum of membership degrees.

    The empty collection counts 0.  Summation uses ``math.fsum`` so the
    result does not depend on accumulation order.
    """
    values = list(per_fact_degrees)
    for value in values:
        if not (0.0 <= value <= 1.0):
            raise DegreeOutOfRange(f"membership {value} outside [0, 1]")
    return math.fsum(values)


def subsumption_degree(
    parent: ShoulderRestriction, child: ShoulderRestriction
) -> float:
    """Degree to which satisfying ``child`` implies satisfying ``parent``.

    For equal-fuzziness shoulders the infimum over all cardinalities of
    the Lukasiewicz implication ``min(1, 1 - child(c) + parent(c))`` is
    attained at ``c = child.k``, so the closed form is simply the parent
    membership evaluated there.  This reproduces the three observable
    cases: 1 when ``child.k >= parent.k``, 0 when ``child.k`` is at or
    below the parent's ramp start, and a value in (0, 1) in between.
    """
    if parent.fuzziness != child.fuzziness:
        raise FuzzinessMismatch(
            f"cannot compare restrictions with fuzziness "
            f"{parent.fuzziness} and {child.fuzziness}"
        )
    return parent.evaluate(child.k)
