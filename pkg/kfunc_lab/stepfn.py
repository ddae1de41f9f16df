"""Exact algebra of nonnegative step functions on :math:`(0, \\infty)`.

A :class:`StepFunction` is finitely piecewise constant: it takes the value
:math:`v_j` on :math:`(s_{j-1}, s_j]` (with :math:`s_0 = 0`) and a constant
``tail`` past the last breakpoint. Every construction returns the canonical
form, so two equal functions compare equal structurally.
"""

import bisect
import heapq
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Sequence
from typing import Tuple

from .errors import DomainError

logger = logging.getLogger(__name__)


def _check_finite(value: float, name: str, source=None) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}", source=source)
    return value


@dataclass(frozen=True)
class ValueMassList:
    """A simple function given by its level decomposition.

    An unordered multiset of ``(value, mass)`` pairs, values nonnegative and
    masses positive.

    .. code-block:: python

        levels = ValueMassList([(1.0, 2.0), (3.0, 1.0)])
        rearrange(levels)  # 3 on (0, 1], 1 on (1, 3]
    """

    pairs: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        pairs = []
        for value, mass in self.pairs:
            value = _check_finite(value, "value", source=self.pairs)
            mass = _check_finite(mass, "mass", source=self.pairs)
            if value < 0:
                raise DomainError(
                    f"Level values must be nonnegative, got {value}", source=self.pairs
                )
            if mass <= 0:
                raise DomainError(
                    f"Level masses must be positive, got {mass}", source=self.pairs
                )
            pairs.append((value, mass))
        object.__setattr__(self, "pairs", tuple(pairs))

    def __iter__(self) -> Iterator[Tuple[float, float]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __add__(self, other: "ValueMassList") -> "ValueMassList":
        return ValueMassList(self.pairs + other.pairs)

    @property
    def total_mass(self) -> float:
        return math.fsum(mass for _, mass in self.pairs)

    def weighted(self, weight: float) -> "ValueMassList":
        """The same levels with every mass multiplied by ``weight``."""
        return ValueMassList(tuple((value, weight * mass) for value, mass in self.pairs))


@dataclass(frozen=True)
class StepFunction:
    """A nonnegative finitely-piecewise-constant function on :math:`(0, \\infty)`.

    :param breakpoints: Strictly increasing positive right endpoints
        :math:`s_1 < \\dots < s_n`.
    :param values: Nonnegative values, ``values[j]`` holding on
        :math:`(s_{j-1}, s_j]`.
    :param tail: Nonnegative value on :math:`(s_n, \\infty)`.

    Zero-length pieces are dropped and adjacent equal values are merged at
    construction, including trailing pieces equal to the tail.
    """

    breakpoints: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()
    tail: float = 0.0

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values):
            raise DomainError(
                "Breakpoints and values must have the same length",
                source=(self.breakpoints, self.values),
            )

        tail = _check_finite(self.tail, "tail", source=self)
        if tail < 0:
            raise DomainError(f"Tail must be nonnegative, got {tail}", source=self)

        breakpoints: List[float] = []
        values: List[float] = []
        left = 0.0
        for right, value in zip(self.breakpoints, self.values):
            right = _check_finite(right, "breakpoint", source=self.breakpoints)
            value = _check_finite(value, "value", source=self.values)
            if value < 0:
                raise DomainError(
                    f"Step values must be nonnegative, got {value}", source=self.values
                )
            if right < left:
                raise DomainError(
                    "Breakpoints must be increasing and positive",
                    source=self.breakpoints,
                )
            if right == left:
                continue

            if values and values[-1] == value:
                breakpoints[-1] = right
            else:
                breakpoints.append(right)
                values.append(value)
            left = right

        while values and values[-1] == tail:
            breakpoints.pop()
            values.pop()

        object.__setattr__(self, "breakpoints", tuple(breakpoints))
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "tail", tail)

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[Sequence[float]], tail: float = 0.0
    ) -> "StepFunction":
        """Build a step function from ``[right_endpoint, value]`` pairs."""
        pairs = [tuple(pair) for pair in pairs]
        return cls(
            tuple(right for right, _ in pairs),
            tuple(value for _, value in pairs),
            tail,
        )

    def to_pairs(self) -> List[List[float]]:
        return [[right, value] for right, value in zip(self.breakpoints, self.values)]

    def __len__(self) -> int:
        return len(self.values)

    def pieces(self) -> Iterator[Tuple[float, float, float]]:
        """Iterate over the finite pieces as ``(left, right, value)``."""
        left = 0.0
        for right, value in zip(self.breakpoints, self.values):
            yield left, right, value
            left = right

    @property
    def support_end(self) -> float:
        """The last breakpoint, or 0 for a constant function."""
        return self.breakpoints[-1] if self.breakpoints else 0.0

    @property
    def monotone(self) -> bool:
        """Whether the function is nonincreasing, tail included."""
        chain = self.values + (self.tail,)
        return all(a >= b for a, b in zip(chain, chain[1:]))

    @property
    def initial_value(self) -> float:
        """The value near 0, that is :math:`f(0^+)`."""
        return self.values[0] if self.values else self.tail

    def evaluate(self, s: float) -> float:
        """Value at ``s``, the pieces being closed on the right.

        :raises DomainError: If ``s`` is not positive.
        """
        if not s > 0:
            raise DomainError(f"Step functions live on (0, inf), got s={s}", source=s)

        index = bisect.bisect_left(self.breakpoints, s)
        if index < len(self.values):
            return self.values[index]
        return self.tail

    def integrate(self, t: float = math.inf) -> float:
        """Exact integral over :math:`(0, t]`.

        :param t: Upper bound, :data:`math.inf` for the whole half line.
        :raises DomainError: If ``t`` is negative.
        :return: :data:`math.inf` when the tail is positive and ``t`` is infinite.
        """
        if t < 0:
            raise DomainError(f"Integration bound must be nonnegative, got {t}", source=t)

        terms = []
        for left, right, value in self.pieces():
            if t <= left:
                break
            terms.append(value * (min(right, t) - left))

        if t > self.support_end and self.tail:
            if math.isinf(t):
                return math.inf
            terms.append(self.tail * (t - self.support_end))

        return math.fsum(terms)

    def l1_norm(self) -> float:
        return self.integrate(math.inf)

    def distribution(self, v: float) -> float:
        """Lebesgue measure of :math:`\\{s > 0 : f(s) > v\\}`."""
        if self.tail > v:
            return math.inf
        return math.fsum(right - left for left, right, value in self.pieces() if value > v)

    def power(self, p: float) -> "StepFunction":
        """Pointwise ``p``-th power."""
        if not p > 0:
            raise DomainError(f"Exponent must be positive, got p={p}", source=p)
        return StepFunction(
            self.breakpoints,
            tuple(value**p for value in self.values),
            self.tail**p,
        )

    def scale(self, factor: float) -> "StepFunction":
        """Pointwise multiplication by a nonnegative ``factor``."""
        if factor < 0:
            raise DomainError(
                f"Scale factor must be nonnegative, got {factor}", source=factor
            )
        return StepFunction(
            self.breakpoints,
            tuple(factor * value for value in self.values),
            factor * self.tail,
        )

    def levels(self, weight: float = 1.0) -> ValueMassList:
        """Level decomposition of the finite pieces, lengths scaled by
        ``weight``.

        :raises DomainError: If the tail is nonzero.
        """
        self.require_finite_support()
        return ValueMassList(
            tuple(
                (value, weight * (right - left))
                for left, right, value in self.pieces()
                if value > 0
            )
        )

    def require_finite_support(self):
        if self.tail:
            raise DomainError(
                f"A finitely supported step function is required, got tail={self.tail}",
                source=self,
            )


def _stack(ordered: Iterable[Tuple[float, float]]) -> StepFunction:
    """Lay sorted ``(value, mass)`` pairs side by side from 0."""
    ordered = list(ordered)
    edges = itertools.accumulate(mass for _, mass in ordered)
    return StepFunction(tuple(edges), tuple(value for value, _ in ordered))


def rearrange(levels: Iterable[Tuple[float, float]]) -> StepFunction:
    """Nonincreasing rearrangement of a simple function.

    The result is equimeasurable with ``levels``: for every :math:`v \\ge 0`
    its distribution at ``v`` is the total mass of the levels above ``v``.

    .. code-block:: python

        rearrange(ValueMassList([(1, 2), (3, 1)]))
        # StepFunction(breakpoints=(1.0, 3.0), values=(3.0, 1.0), tail=0.0)
    """
    if not isinstance(levels, ValueMassList):
        levels = ValueMassList(tuple(levels))
    return _stack(sorted(levels, key=lambda pair: pair[0], reverse=True))


def merge_rearranged(parts: Iterable[Tuple[float, StepFunction]]) -> StepFunction:
    """Nonincreasing rearrangement of a weighted disjoint union of
    rearranged functions.

    Part ``i`` contributes each of its pieces with its length multiplied by
    ``weight_i``. The parts being already sorted, they are merged with a
    k-way heap merge rather than sorted again; equal values keep the part
    order.

    :param parts: ``(weight, f)`` pairs, each ``f`` nonincreasing with a
        zero tail.
    :raises DomainError: On a nonpositive weight, a nonzero tail or a
        non-monotone part.
    """
    streams = []
    for weight, function in parts:
        if not weight > 0:
            raise DomainError(f"Weights must be positive, got {weight}", source=weight)
        function.require_finite_support()
        if not function.monotone:
            raise DomainError("Only rearranged parts can be merged", source=function)
        streams.append(
            [(value, weight * (right - left)) for left, right, value in function.pieces()]
        )

    logger.debug(
        "Merging %d parts with %d pieces", len(streams), sum(map(len, streams))
    )
    return _stack(heapq.merge(*streams, key=lambda pair: pair[0], reverse=True))
