"""Seeded random instances for the verification suites.

All builders draw from a :class:`numpy.random.Generator` passed by the
caller, so a suite is reproducible from its seed alone.
"""

from typing import List

import numpy as np

from .alloc import SimpleVectorFunction
from .kfunc import KProfile
from .kfunc import WeightedScalarCouple
from .oracle import ScalarInstance
from .stepfn import StepFunction
from .stepfn import ValueMassList

WEIGHT_RANGE = (2.0**-4, 2.0**4)
ELEMENT_RANGE = (-4.0, 4.0)


def log_spaced(low: float, high: float, count: int) -> List[float]:
    return np.geomspace(low, high, count).tolist()


def log_uniform(rng: np.random.Generator, low: float, high: float, size=None):
    return np.exp(rng.uniform(np.log(low), np.log(high), size))


def random_scalar_instance(rng: np.random.Generator, max_coords: int = 8) -> ScalarInstance:
    """Up to ``max_coords`` coordinates with :math:`\\mu, a, b` log-uniform in
    :math:`[2^{-4}, 2^4]` and :math:`x` uniform in :math:`[-4, 4]`."""
    count = int(rng.integers(1, max_coords + 1))
    mus = log_uniform(rng, *WEIGHT_RANGE, size=count)
    a = log_uniform(rng, *WEIGHT_RANGE, size=count)
    b = log_uniform(rng, *WEIGHT_RANGE, size=count)
    x = rng.uniform(*ELEMENT_RANGE, size=count)
    return ScalarInstance(
        tuple(
            (float(mus[i]), WeightedScalarCouple(float(a[i]), float(b[i]), float(x[i])))
            for i in range(count)
        )
    )


def random_profile(
    rng: np.random.Generator,
    max_pieces: int = 4,
    support=WEIGHT_RANGE,
    values=WEIGHT_RANGE,
) -> KProfile:
    """A profile whose derivative has up to ``max_pieces`` pieces, with
    breakpoints inside ``support`` and values inside ``values``."""
    count = int(rng.integers(1, max_pieces + 1))
    breakpoints = np.sort(log_uniform(rng, *support, size=count))
    heights = np.sort(log_uniform(rng, *values, size=count))[::-1]
    return KProfile(StepFunction(tuple(breakpoints.tolist()), tuple(heights.tolist())))


def random_vector_function(
    rng: np.random.Generator, max_cells: int = 8, max_pieces: int = 4
) -> SimpleVectorFunction:
    count = int(rng.integers(1, max_cells + 1))
    mus = log_uniform(rng, *WEIGHT_RANGE, size=count)
    return SimpleVectorFunction(
        tuple((float(mu), random_profile(rng, max_pieces)) for mu in mus)
    )


def random_levels(
    rng: np.random.Generator,
    max_levels: int = 8,
    values=(2.0**-2, 2.0**2),
    masses=WEIGHT_RANGE,
) -> ValueMassList:
    count = int(rng.integers(1, max_levels + 1))
    heights = log_uniform(rng, *values, size=count)
    weights = log_uniform(rng, *masses, size=count)
    return ValueMassList(tuple(zip(heights.tolist(), weights.tolist())))


def boundary_levels(rng: np.random.Generator, p: int, max_levels: int = 8):
    """Levels and a threshold ``t`` such that every :math:`(value/t)^p` is an
    integer, exactly representable.

    ``t`` is a dyadic rational and each value is ``t`` times a small integer,
    so that the strict convention of :math:`[r]` is exercised exactly.
    """
    t = int(rng.integers(1, 17)) / 8
    count = int(rng.integers(1, max_levels + 1))
    multiples = rng.integers(1, 7, size=count)
    weights = log_uniform(rng, *WEIGHT_RANGE, size=count)
    levels = ValueMassList(
        tuple((float(m) * t, float(w)) for m, w in zip(multiples, weights))
    )
    return levels, t
