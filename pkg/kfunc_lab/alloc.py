"""Vector-valued K-functionals as a sup over budget allocations.

For a finite family of cells :math:`(\\mu_i, K_i)` the K-functional of the
vector is

.. math::

    K(t) = \\sup\\Big\\{\\sum_i \\mu_i K_i(t_i) : t_i \\ge 0,
    \\sum_i \\mu_i t_i \\le t\\Big\\}.

This sup-convolution of concave functions is computed exactly: its
derivative is the nonincreasing rearrangement of the cell derivatives, cell
``i`` having its lengths stretched by :math:`\\mu_i`.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union

from .errors import DomainError
from .errors import OracleSizeError
from .kfunc import KProfile
from .kfunc import eval_K
from .stepfn import merge_rearranged

logger = logging.getLogger(__name__)

GRID_ORACLE_MAX_CELLS = 6
"""Largest number of cells :func:`grid_alloc_oracle` accepts."""

GRID_ORACLE_MAX_POINTS = 2_000_000
"""Largest number of allocations :func:`grid_alloc_oracle` enumerates."""


@dataclass(frozen=True)
class Cell:
    """One cell of a simple function: a set of measure ``mu`` on which the
    function is constant with K-profile ``profile``."""

    mu: float
    profile: KProfile

    def __post_init__(self):
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise DomainError(
                f"Cell masses must be positive and finite, got {self.mu}", source=self
            )


@dataclass(frozen=True)
class SimpleVectorFunction:
    """A finite list of cells. Coordinates of a sequence are cells of mass 1.

    :param cells: :class:`Cell` objects or ``(mu, profile)`` pairs.
    """

    cells: Tuple[Cell, ...] = ()

    def __post_init__(self):
        cells = tuple(
            cell if isinstance(cell, Cell) else Cell(*cell) for cell in self.cells
        )
        object.__setattr__(self, "cells", cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def head(self, n: int) -> "SimpleVectorFunction":
        """The projection keeping the first ``n`` cells."""
        return SimpleVectorFunction(self.cells[:n])


CellsLike = Union[SimpleVectorFunction, Iterable[Union[Cell, Tuple[float, KProfile]]]]


def _as_vector_function(cells: CellsLike) -> SimpleVectorFunction:
    if isinstance(cells, SimpleVectorFunction):
        return cells
    return SimpleVectorFunction(tuple(cells))


def vector_K_profile(f: CellsLike) -> KProfile:
    """Exact K-profile of a simple vector function.

    .. code-block:: python

        f = SimpleVectorFunction([(1, p), (1, q)])
        eval_K(vector_K_profile(f), 1.0)

    An empty function has the zero profile.
    """
    f = _as_vector_function(f)
    return KProfile(merge_rearranged((cell.mu, cell.profile.k) for cell in f))


def truncated_K(f: CellsLike, n: int, t: float) -> float:
    """K-functional at ``t`` of the projection keeping the first ``n`` cells.

    :raises DomainError: If ``n`` is not a positive integer.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}", source=n)
    f = _as_vector_function(f)
    return eval_K(vector_K_profile(f.head(n)), t)


def _count_compositions(parts: int, total: int) -> int:
    """Number of ``parts``-tuples of nonnegative integers summing to at most
    ``total``."""
    return math.comb(total + parts, parts)


def _uniform_grid_best(tables: Sequence[Sequence[float]], steps: int) -> float:
    best = 0.0
    # Exhaustive: every (j_1, ..., j_n) with sum j_i <= steps.
    stack: List[Tuple[int, int, float]] = [(0, steps, 0.0)]
    while stack:
        index, remaining, value = stack.pop()
        if index == len(tables):
            best = max(best, value)
            continue
        table = tables[index]
        for j in range(remaining + 1):
            stack.append((index + 1, remaining - j, value + table[j]))
    return best


def _aligned_grid_best(f: SimpleVectorFunction, t: float) -> float:
    candidates = [
        [0.0] + [cell.mu * right for right in cell.profile.k.breakpoints if cell.mu * right <= t]
        for cell in f
    ]
    size = len(f) * math.prod(len(choices) for choices in candidates)
    if size > GRID_ORACLE_MAX_POINTS:
        raise OracleSizeError(source=f)

    best = 0.0
    for free, free_cell in enumerate(f):
        others = [index for index in range(len(f)) if index != free]
        for budgets in itertools.product(*(candidates[index] for index in others)):
            used = math.fsum(budgets)
            if used > t:
                continue
            terms = [
                f.cells[index].mu * eval_K(f.cells[index].profile, budget / f.cells[index].mu)
                for index, budget in zip(others, budgets)
            ]
            terms.append(free_cell.mu * eval_K(free_cell.profile, (t - used) / free_cell.mu))
            best = max(best, math.fsum(terms))
    return best


def grid_alloc_oracle(f: CellsLike, t: float, steps: int) -> float:
    """Brute-force maximisation of :math:`\\sum_i \\mu_i K_i(t_i)` under
    :math:`\\sum_i \\mu_i t_i \\le t`.

    :param steps: With ``steps >= 1`` every cell budget :math:`\\mu_i t_i` is
        a multiple of ``t / steps`` and the result is a lower bound of the
        exact value. With ``steps == 0`` the budgets run over the breakpoints
        of the cell profiles, one cell taking the remainder, and the result
        is exact.
    :raises OracleSizeError: If there are more than
        :data:`GRID_ORACLE_MAX_CELLS` cells or too many allocations.
    :raises DomainError: If ``steps`` is not a nonnegative integer.
    """
    f = _as_vector_function(f)
    if len(f) > GRID_ORACLE_MAX_CELLS:
        raise OracleSizeError(
            f"Grid oracle accepts at most {GRID_ORACLE_MAX_CELLS} cells, got {len(f)}",
            source=f,
        )
    if t < 0:
        raise DomainError(f"Budget must be nonnegative, got t={t}", source=t)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 0:
        raise DomainError(f"steps must be a nonnegative integer, got {steps}", source=steps)
    if t == 0 or not len(f):
        return 0.0

    if steps == 0:
        return _aligned_grid_best(f, t)

    if _count_compositions(len(f), steps) > GRID_ORACLE_MAX_POINTS:
        raise OracleSizeError(
            f"Grid oracle would enumerate more than {GRID_ORACLE_MAX_POINTS} allocations",
            source=f,
        )

    tables = [
        [cell.mu * eval_K(cell.profile, j * t / (steps * cell.mu)) for j in range(steps + 1)]
        for cell in f
    ]
    best = _uniform_grid_best(tables, steps)
    logger.debug("Grid oracle over %d cells and %d steps: %r", len(f), steps, best)
    return best
