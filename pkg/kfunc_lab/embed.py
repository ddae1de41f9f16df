"""Reduction of vector-valued K-functionals to scalar :math:`(L_1, L_\\infty)`
data, and the :math:`T_p` / :math:`S_p` embeddings.

For a simple function ``f`` the scalar function
:math:`\\Psi_f(s, \\omega) = k(f(\\omega), s)` on the product space has the
same K-functional as ``f``. Its rearrangement is computed here by sorting the
weighted union of the cell derivatives, independently of the heap merge used
by :func:`~kfunc_lab.alloc.vector_K_profile`.
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .alloc import SimpleVectorFunction
from .alloc import vector_K_profile
from .errors import DomainError
from .kfunc import KProfile
from .kfunc import eval_K
from .lorentz import HardySandwich
from .lorentz import conjugate_exponent
from .lorentz import interp_norm
from .lorentz import lorentz_pq_starstar
from .oracle import IdentityReport
from .oracle import deviation
from .stepfn import StepFunction
from .stepfn import ValueMassList
from .stepfn import rearrange

logger = logging.getLogger(__name__)

CELL_SCALES = ("mean", "right")
"""Ways to discretise :math:`\\omega^{-1/p}` on a cell of the :math:`T_p` grid."""


@dataclass(frozen=True)
class PsiRearrangement:
    """The rearrangement of :math:`\\Psi_f` over the product measure."""

    psi_star: StepFunction

    @property
    def profile(self) -> KProfile:
        """:math:`\\Psi_f^*` seen as the k-functional of :math:`\\Psi_f` for
        the couple :math:`(L_1, L_\\infty)`."""
        return KProfile(self.psi_star)


def psi_star(f: SimpleVectorFunction) -> PsiRearrangement:
    """Rearrange :math:`\\Psi_f`, cell ``i`` contributing the pieces of
    :math:`k_i` with their lengths multiplied by :math:`\\mu_i`."""
    levels = ValueMassList()
    for cell in f:
        levels = levels + cell.profile.k.levels(cell.mu)
    return PsiRearrangement(rearrange(levels))


def eq10_check(f: SimpleVectorFunction, ts: Iterable[float]) -> IdentityReport:
    """Compare :math:`\\int_0^t \\Psi_f^*` with the allocation K-functional of
    ``f`` at every ``t``."""
    merged = vector_K_profile(f)
    rearranged = psi_star(f).psi_star
    return IdentityReport.compare(
        (eval_K(merged, t), rearranged.integrate(t)) for t in ts
    )


@dataclass(frozen=True)
class NormComparison:
    lhs: float
    rhs: float

    @property
    def deviation(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def relative_deviation(self) -> float:
        return deviation(self.lhs, self.rhs)[1]


def eq11_norm(f: SimpleVectorFunction, theta: float, q: float) -> NormComparison:
    """Interpolation norm of ``f`` against the :math:`(p, q)` norm of
    :math:`\\Psi_f` with :math:`1/p = 1 - \\theta`."""
    if not 0 < theta < 1:
        raise DomainError(f"theta must lie in (0, 1), got {theta}", source=theta)
    return NormComparison(
        lhs=interp_norm(vector_K_profile(f), theta, q),
        rhs=lorentz_pq_starstar(psi_star(f).profile, 1 / (1 - theta), q),
    )


def _check_embedding_exponent(p: float):
    if not (1 < p < math.inf):
        raise DomainError(f"T_p and S_p norms require 1 < p < inf, got p={p}", source=p)


def tp_norm_exact(profile: KProfile, p: float) -> float:
    """:math:`p' (\\int_0^\\infty k^p)^{1/p}`, the :math:`(\\theta, \\infty)`
    norm of :math:`T_p(x) = (\\omega \\mapsto \\omega^{-1/p} x)`."""
    _check_embedding_exponent(p)
    if profile.is_zero:
        return 0.0
    return conjugate_exponent(p) * profile.k.power(p).integrate() ** (1 / p)


def _cell_scale(left: float, right: float, p: float, cell_scale: str) -> float:
    if cell_scale == "right":
        return right ** (-1 / p)
    exponent = 1 - 1 / p
    return (right**exponent - left**exponent) / (exponent * (right - left))


def tp_grid(omega_min: float, omega_max: float, cells_per_decade: int) -> np.ndarray:
    """Geometric cell edges from ``omega_min`` to ``omega_max``.

    Grids sharing a decade lattice are nested: doubling
    ``cells_per_decade`` or widening the window by whole decades only adds
    edges.
    """
    if not (0 < omega_min < omega_max < math.inf):
        raise DomainError(
            f"Degenerate window [{omega_min}, {omega_max}]",
            source=(omega_min, omega_max),
        )
    if isinstance(cells_per_decade, bool) or not isinstance(cells_per_decade, int) or cells_per_decade < 1:
        raise DomainError(
            f"cells_per_decade must be a positive integer, got {cells_per_decade}",
            source=cells_per_decade,
        )
    count = max(1, math.ceil(round(math.log10(omega_max / omega_min) * cells_per_decade, 9)))
    edges = omega_min * 10.0 ** (np.arange(count + 1) / cells_per_decade)
    edges[-1] = omega_max
    return edges


def tp_vector_function(
    profile: KProfile,
    p: float,
    omega_min: float,
    omega_max: float,
    cells_per_decade: int,
    cell_scale: str = "mean",
) -> SimpleVectorFunction:
    """Discretisation of :math:`\\omega \\mapsto \\omega^{-1/p} x` on a
    logarithmic grid of the window.

    :param cell_scale: ``"mean"`` uses the average of :math:`\\omega^{-1/p}`
        over the cell (a conditional expectation), ``"right"`` its value at
        the right endpoint (a pointwise lower envelope). Both make the
        discretised function a contraction of :math:`T_p(x)`.
    """
    _check_embedding_exponent(p)
    if cell_scale not in CELL_SCALES:
        raise DomainError(f"Unknown cell scale '{cell_scale}'", source=cell_scale)
    edges = tp_grid(omega_min, omega_max, cells_per_decade)
    return SimpleVectorFunction(
        tuple(
            (right - left, profile.scale(_cell_scale(left, right, p, cell_scale)))
            for left, right in zip(edges[:-1].tolist(), edges[1:].tolist())
        )
    )


def tp_norm_numeric(
    profile: KProfile,
    p: float,
    omega_min: float = 1e-6,
    omega_max: float = 1e6,
    cells_per_decade: int = 8,
    cell_scale: str = "mean",
) -> float:
    """:math:`(\\theta, \\infty)` norm of the discretised :math:`T_p(x)`,
    :math:`\\theta = 1 - 1/p`.

    The result never exceeds :func:`tp_norm_exact` and increases toward it
    as the window widens and the grid is refined.
    """
    if profile.is_zero:
        _check_embedding_exponent(p)
        tp_grid(omega_min, omega_max, cells_per_decade)
        return 0.0
    f = tp_vector_function(profile, p, omega_min, omega_max, cells_per_decade, cell_scale)
    logger.debug("T_%r discretised on %d cells", p, len(f))
    return interp_norm(vector_K_profile(f), 1 - 1 / p, math.inf)


def sp_norm_numeric(profile: KProfile, p: float, n_terms: int) -> float:
    """:math:`(\\theta, \\infty)` norm of the first ``n_terms`` terms of
    :math:`S_p(x) = (n^{-1/p} x)_{n \\ge 1}` in
    :math:`(\\ell_1(A_0), \\ell_\\infty(A_1))`."""
    _check_embedding_exponent(p)
    if isinstance(n_terms, bool) or not isinstance(n_terms, int) or n_terms < 1:
        raise DomainError(f"n_terms must be a positive integer, got {n_terms}", source=n_terms)
    if profile.is_zero:
        return 0.0
    f = SimpleVectorFunction(
        tuple((1.0, profile.scale(n ** (-1 / p))) for n in range(1, n_terms + 1))
    )
    return interp_norm(vector_K_profile(f), 1 - 1 / p, math.inf)


def _check_level_parameters(p: float, t: float):
    if not p > 0:
        raise DomainError(f"p must be positive, got p={p}", source=p)
    if not t > 0:
        raise DomainError(f"t must be positive, got t={t}", source=t)


def lp_norm(levels: ValueMassList, p: float) -> float:
    """:math:`(\\sum mass \\cdot value^p)^{1/p}`."""
    if not p > 0:
        raise DomainError(f"p must be positive, got p={p}", source=p)
    return math.fsum(mass * value**p for value, mass in levels) ** (1 / p)


def tp_section_measure(value: float, p: float, t: float) -> float:
    """Measure of :math:`\\{\\omega > 0 : \\omega^{-1/p} value > t\\}`, the
    interval :math:`(0, (value/t)^p)`.

    :raises DomainError: If the measure exceeds the float range.
    """
    if value <= 0:
        return 0.0
    try:
        measure = (value / t) ** p
    except OverflowError:
        measure = math.inf
    if not math.isfinite(measure):
        raise DomainError(
            f"Section measure of {value} above t={t} exceeds the float range",
            source=(value, p, t),
        )
    return measure


def _scaled_section_measure(value: float, p: float, t: float) -> float:
    """:math:`t^p` times :func:`tp_section_measure`, formed in log space when
    either factor leaves the float range."""
    if value <= 0:
        return 0.0
    try:
        scale = t**p
        if scale >= sys.float_info.min:
            return scale * tp_section_measure(value, p, t)
    except (OverflowError, DomainError):
        pass
    return math.exp(p * math.log(t) + p * (math.log(value) - math.log(t)))


def strict_floor(r: float) -> int:
    """:math:`[r]`, the largest integer strictly below ``r``, and 0 when
    there is no positive one."""
    return max(0, math.ceil(r) - 1)


def _sp_bracket(value: float, p: float, t: float) -> int:
    try:
        ratio = (value / t) ** p
    except OverflowError:
        ratio = math.inf
    if not ratio < 2.0**53:
        raise DomainError(
            f"[({value}/{t})^{p}] exceeds the float range of exact integers",
            source=(value, p, t),
        )
    return strict_floor(ratio)


def sp_section_count(value: float, p: float, t: float) -> int:
    """Number of :math:`n \\ge 1` with :math:`n^{-1/p} value > t`.

    The predicate is monotone in ``n``; the count is located by testing the
    predicate itself around an initial guess.

    :raises DomainError: If the count exceeds the float range.
    """
    if value <= 0:
        return 0

    def exceeds(n: int) -> bool:
        return value > t * n ** (1 / p)

    count = _sp_bracket(value, p, t)
    while count >= 1 and not exceeds(count):
        count -= 1
    while exceeds(count + 1):
        count += 1
    return count


@dataclass(frozen=True)
class DistributionCheck:
    lhs: float
    rhs: float

    @property
    def relative_deviation(self) -> float:
        return deviation(self.lhs, self.rhs)[1]


def eq13_distribution_check(levels: ValueMassList, p: float, t: float) -> DistributionCheck:
    """:math:`t^p m(\\{|T_p f| > t\\})` against :math:`\\int |f|^p`."""
    _check_level_parameters(p, t)
    return DistributionCheck(
        lhs=math.fsum(mass * _scaled_section_measure(value, p, t) for value, mass in levels),
        rhs=math.fsum(mass * value**p for value, mass in levels),
    )


def sp_distribution_check(levels: ValueMassList, p: float, t: float) -> DistributionCheck:
    """:math:`m'(\\{|S_p f| > t\\})` by counting against
    :math:`\\int [|f|^p / t^p]`."""
    _check_level_parameters(p, t)
    return DistributionCheck(
        lhs=math.fsum(mass * sp_section_count(value, p, t) for value, mass in levels),
        rhs=math.fsum(mass * _sp_bracket(value, p, t) for value, mass in levels),
    )


def tp_weak_norm(levels: ValueMassList, p: float, ts: Iterable[float]) -> float:
    """:math:`\\max_t t\\, m(\\{|T_p f| > t\\})^{1/p}` over the sampled ``ts``."""
    best = 0.0
    for t in ts:
        _check_level_parameters(p, t)
        scaled = math.fsum(mass * _scaled_section_measure(value, p, t) for value, mass in levels)
        best = max(best, scaled ** (1 / p))
    return best


def sp_weak_norm(levels: ValueMassList, p: float, ts: Iterable[float]) -> float:
    """:math:`\\max_t t\\, m'(\\{|S_p f| > t\\})^{1/p}` over the sampled ``ts``."""
    best = 0.0
    for t in ts:
        _check_level_parameters(p, t)
        count = math.fsum(mass * sp_section_count(value, p, t) for value, mass in levels)
        best = max(best, t * count ** (1 / p))
    return best


def remark7_sandwich(f: SimpleVectorFunction, theta: float) -> HardySandwich:
    """:math:`L_p` norm of :math:`\\Psi_f` against the :math:`(\\theta, p)`
    norm of ``f``, :math:`p = 1/(1 - \\theta)`."""
    if not 0 < theta < 1:
        raise DomainError(f"theta must lie in (0, 1), got {theta}", source=theta)
    p = 1 / (1 - theta)
    lp = math.fsum(cell.mu * cell.profile.k.power(p).integrate() for cell in f) ** (1 / p)
    return HardySandwich(
        lower=lp,
        upper=interp_norm(vector_K_profile(f), theta, p),
        conjugate=conjugate_exponent(p),
    )
