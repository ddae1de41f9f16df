"""K-functionals computed from their infimum definition.

For weighted scalar couples the decomposition
:math:`x_i = x_{0,i} + x_{1,i}` minimising
:math:`\\sum_i \\mu_i a_i |x_{0,i}| + t \\max_i b_i |x_{1,i}|` is found without
any reference to allocations: once the :math:`\\ell_\\infty` level ``m`` of
the second part is fixed, each coordinate shrinks toward the ball of radius
:math:`m / b_i`, and the remaining cost is convex piecewise linear in ``m``.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable
from typing import List
from typing import Tuple

from .alloc import SimpleVectorFunction
from .alloc import vector_K_profile
from .errors import DomainError
from .errors import OracleSizeError
from .kfunc import WeightedScalarCouple
from .kfunc import eval_K
from .kfunc import scalar_couple_profile
from .stepfn import ValueMassList

logger = logging.getLogger(__name__)

SUBSET_ORACLE_MAX_LEVELS = 12
"""Largest number of levels :func:`subset_sup_oracle` enumerates."""


@dataclass(frozen=True)
class ScalarInstance:
    """Coordinates :math:`(\\mu_i, (a_i, b_i, x_i))` of an element of
    :math:`L_1(\\mu; A_0) + L_\\infty(\\mu; A_1)` over weighted scalar couples."""

    coords: Tuple[Tuple[float, WeightedScalarCouple], ...] = ()

    def __post_init__(self):
        coords = tuple((float(mu), couple) for mu, couple in self.coords)
        for mu, _ in coords:
            if not (mu > 0 and math.isfinite(mu)):
                raise DomainError(
                    f"Coordinate masses must be positive and finite, got {mu}",
                    source=self,
                )
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)

    def scale(self, factor: float) -> "ScalarInstance":
        return ScalarInstance(
            tuple(
                (mu, WeightedScalarCouple(c.a, c.b, factor * c.x))
                for mu, c in self.coords
            )
        )


@dataclass(frozen=True)
class IdentityReport:
    """Worst absolute and relative deviations between two computations of
    the same quantity."""

    max_abs_dev: float = 0.0
    max_rel_dev: float = 0.0

    @classmethod
    def compare(cls, pairs: Iterable[Tuple[float, float]]) -> "IdentityReport":
        max_abs = max_rel = 0.0
        for expected, actual in pairs:
            absolute, relative = deviation(expected, actual)
            max_abs = max(max_abs, absolute)
            max_rel = max(max_rel, relative)
        return cls(max_abs, max_rel)


def deviation(expected: float, actual: float) -> Tuple[float, float]:
    """Absolute and relative differences, the relative one being 0 when both
    numbers are 0."""
    if expected == actual:
        return 0.0, 0.0
    absolute = abs(expected - actual)
    return absolute, absolute / max(abs(expected), abs(actual))


def profiles(inst: ScalarInstance) -> SimpleVectorFunction:
    """The cells :math:`(\\mu_i, K(x_i; a_i, b_i))` of a scalar instance."""
    return SimpleVectorFunction(
        tuple((mu, scalar_couple_profile(couple)) for mu, couple in inst.coords)
    )


def decomposition_cost(inst: ScalarInstance, t: float, m: float) -> float:
    """Cheapest decomposition cost whose second part has level ``m``."""
    terms = [
        mu * c.a * max(0.0, abs(c.x) - m / c.b) for mu, c in inst.coords
    ]
    terms.append(t * m)
    return math.fsum(terms)


def candidate_levels(inst: ScalarInstance) -> List[float]:
    """Breakpoints of the cost in ``m``, in increasing order."""
    return sorted({0.0} | {c.b * abs(c.x) for _, c in inst.coords})


def optimal_level(inst: ScalarInstance, t: float) -> float:
    """The smallest level ``m`` realising :func:`direct_K`."""
    if t < 0:
        raise DomainError(f"t must be nonnegative, got t={t}", source=t)
    best_level, best_cost = 0.0, math.inf
    for level in candidate_levels(inst):
        cost = decomposition_cost(inst, t, level)
        if cost < best_cost:
            best_level, best_cost = level, cost
    return best_level


def direct_K(inst: ScalarInstance, t: float) -> float:
    """Infimum over decompositions, by an exact breakpoint scan.

    .. code-block:: python

        inst = ScalarInstance(
            [(1, WeightedScalarCouple(1, 1, 1)), (1, WeightedScalarCouple(1, 2, 1))]
        )
        direct_K(inst, 1.0)  # 1.5
    """
    level = optimal_level(inst, t)
    logger.debug("Optimal level at t=%r: %r", t, level)
    return decomposition_cost(inst, t, level)


def theorem1_check(inst: ScalarInstance, ts: Iterable[float]) -> IdentityReport:
    """Compare :func:`direct_K` with the allocation formula at every ``t``."""
    profile = vector_K_profile(profiles(inst))
    return IdentityReport.compare((direct_K(inst, t), eval_K(profile, t)) for t in ts)


def subset_sup_oracle(levels: ValueMassList, t: float) -> float:
    """:math:`\\sup\\{\\int_E |f| : \\mu(E) \\le t\\}` by enumeration.

    Every subset of levels is taken whole, and at most one other level is
    added partially to fill the remaining measure.

    :raises OracleSizeError: Above :data:`SUBSET_ORACLE_MAX_LEVELS` levels.
    """
    pairs = list(levels)
    if len(pairs) > SUBSET_ORACLE_MAX_LEVELS:
        raise OracleSizeError(
            f"Subset oracle accepts at most {SUBSET_ORACLE_MAX_LEVELS} levels, got {len(pairs)}",
            source=levels,
        )
    if t < 0:
        raise DomainError(f"t must be nonnegative, got t={t}", source=t)

    best = 0.0
    for mask in itertools.product((False, True), repeat=len(pairs)):
        chosen = [pair for pair, taken in zip(pairs, mask) if taken]
        measure = math.fsum(mass for _, mass in chosen)
        if measure > t:
            continue
        whole = math.fsum(value * mass for value, mass in chosen)
        best = max(best, whole)
        room = t - measure
        for (value, mass), taken in zip(pairs, mask):
            if not taken:
                best = max(best, whole + value * min(mass, room))
    return best
