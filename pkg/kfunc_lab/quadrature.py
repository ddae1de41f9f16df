import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable
from typing import List
from typing import Tuple

import numpy as np

from .errors import DomainError
from .errors import QuadratureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureResult:
    """An integral estimate.

    :param value: The integral.
    :param error: Sum over the final intervals of the difference between
        the rule on the interval and the rule on its two halves.
    :param intervals: Number of final intervals.
    """

    value: float
    error: float
    intervals: int = 1

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.error + other.error,
            self.intervals + other.intervals,
        )


class GaussLegendre:
    """Fixed Gauss-Legendre rule mapped on arbitrary intervals.

    :param npoints: Number of nodes, the rule being exact for polynomials of
        degree ``2 * npoints - 1``.
    """

    def __init__(self, npoints: int = 32):
        if npoints < 2:
            raise DomainError(
                f"Gauss-Legendre quadrature requires at least 2 nodes, got {npoints}",
                source=npoints,
            )
        self.npoints = npoints

    @cached_property
    def nodes_and_weights(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.polynomial.legendre.leggauss(self.npoints)

    def estimate(self, func: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
        nodes, weights = self.nodes_and_weights
        half = (b - a) / 2
        middle = (a + b) / 2
        return float(half * np.dot(weights, func(middle + half * nodes)))


DEFAULT_RULE = GaussLegendre(32)


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    limit: int = 4096,
    rule: GaussLegendre = DEFAULT_RULE,
) -> QuadratureResult:
    """Adaptive integration by dyadic subdivision.

    Each interval is integrated once whole and once as two halves; the
    interval where both disagree the most is split until the summed
    disagreement is below ``max(rtol * |value|, atol)``.

    :param func: Vectorised integrand.
    :raises QuadratureError: If more than ``limit`` intervals are needed.
    """
    if b == a:
        return QuadratureResult(0.0, 0.0, 0)

    def split(left: float, right: float, whole: float) -> List[Tuple[float, float, float, float, float]]:
        middle = (left + right) / 2
        first = rule.estimate(func, left, middle)
        second = rule.estimate(func, middle, right)
        return [(left, right, whole, first, second)]

    intervals = split(a, b, rule.estimate(func, a, b))
    while True:
        value = sum(first + second for _, _, _, first, second in intervals)
        errors = [abs(first + second - whole) for _, _, whole, first, second in intervals]
        error = sum(errors)
        if error <= max(rtol * abs(value), atol):
            logger.debug("Quadrature converged on %d intervals", len(intervals))
            return QuadratureResult(value, error, len(intervals))

        if len(intervals) >= limit:
            raise QuadratureError(
                f"No convergence on [{a}, {b}] after {limit} intervals "
                f"(error {error:.3g} for value {value:.17g})",
                source=func,
            )

        worst = max(range(len(intervals)), key=errors.__getitem__)
        left, right, _, first, second = intervals.pop(worst)
        middle = (left + right) / 2
        intervals += split(left, middle, first)
        intervals += split(middle, right, second)
