"""Lorentz quasi-norms and real interpolation norms of K-profiles.

- :func:`lorentz_pq` is :math:`\\|x\\|_{p,q}`, computed from :math:`x^*`,
- :func:`lorentz_pq_starstar` is :math:`\\|x\\|_{(p,q)}`, computed from
  :math:`x^{**}(t) = K(t)/t`,
- :func:`interp_norm` is the :math:`(\\theta, q)` norm, which is the
  previous one with :math:`1/p = 1 - \\theta`.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DivergentNormError
from .errors import DomainError
from .kfunc import KProfile
from .quadrature import QuadratureResult
from .quadrature import integrate
from .stepfn import StepFunction

logger = logging.getLogger(__name__)

QUADRATURE_RTOL = 1e-10


@dataclass(frozen=True)
class LorentzParams:
    """Exponents of a Lorentz norm, :math:`0 < p \\le \\infty` and
    :math:`1 \\le q \\le \\infty`."""

    p: float
    q: float

    def __post_init__(self):
        if not self.p > 0:
            raise DomainError(f"p must lie in (0, inf], got p={self.p}", source=self)
        if not self.q >= 1:
            raise DomainError(f"q must lie in [1, inf], got q={self.q}", source=self)

    @property
    def conjugate(self) -> float:
        """:math:`p' = p/(p-1)`, 1 when :math:`p = \\infty`."""
        if not self.p > 1:
            raise DomainError(f"p' is defined for p > 1, got p={self.p}", source=self)
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1)

    @property
    def theta(self) -> float:
        return 1 - 1 / self.p


def conjugate_exponent(p: float) -> float:
    return LorentzParams(p, 1).conjugate


def lorentz_pq(fstar: StepFunction, p: float, q: float) -> float:
    """:math:`\\big(\\int_0^\\infty [t^{1/p} f^*(t)]^q dt/t\\big)^{1/q}` in
    closed form.

    :param fstar: A rearranged step function.
    :raises DivergentNormError: If the tail is nonzero, or if
        :math:`p = \\infty` with finite ``q``.
    """
    params = LorentzParams(p, q)
    if fstar.tail:
        raise DivergentNormError(
            f"L_{{p,q}} norm of a function with tail {fstar.tail} is infinite",
            source=fstar,
        )
    if not fstar.monotone:
        raise DomainError("Lorentz norms take a rearranged function", source=fstar)
    if not fstar.values:
        return 0.0

    if math.isinf(params.q):
        if math.isinf(params.p):
            return fstar.values[0]
        return max(right ** (1 / params.p) * value for _, right, value in fstar.pieces())

    if math.isinf(params.p):
        raise DivergentNormError(
            "L_{inf,q} norm is infinite for finite q", source=fstar
        )

    ratio = params.q / params.p
    total = math.fsum(
        value**params.q * (right**ratio - left**ratio) / ratio
        for left, right, value in fstar.pieces()
    )
    return total ** (1 / params.q)


def _check_starred(profile: KProfile, params: LorentzParams):
    if params.p > 1:
        return
    if params.p == 1 and math.isinf(params.q):
        raise DomainError("Starred norms require p > 1", source=params)
    raise DivergentNormError(
        f"The (p,q) norm diverges for p={params.p} <= 1", source=profile
    )


def _linear_pieces(profile: KProfile):
    """Pieces ``(left, right, intercept, slope)`` of :math:`K`, that is
    :math:`K(t) = intercept + slope \\cdot t` on ``[left, right]``."""
    value_at_left = 0.0
    for left, right, slope in profile.k.pieces():
        yield left, right, value_at_left - slope * left, slope
        value_at_left += slope * (right - left)


def lorentz_starstar_integral(
    profile: KProfile, p: float, q: float, rtol: float = QUADRATURE_RTOL
) -> QuadratureResult:
    """:math:`\\int_0^\\infty [t^{1/p} K(t)/t]^q dt/t` for finite ``q``.

    The first linear piece, where :math:`K(t) = k(0^+) t`, and the tail,
    where :math:`K` is constant, are integrated in closed form. The other
    pieces are integrated in :math:`u = \\log t` by adaptive Gauss-Legendre
    quadrature.
    """
    params = LorentzParams(p, q)
    if math.isinf(params.q):
        raise DomainError("The integral form requires a finite q", source=params)
    if profile.is_zero:
        return QuadratureResult(0.0, 0.0, 0)
    _check_starred(profile, params)
    if math.isinf(params.p):
        raise DivergentNormError(
            "The (inf,q) norm is infinite for finite q", source=profile
        )

    alpha = 1 / params.p - 1
    q = params.q
    result = QuadratureResult(0.0, 0.0, 0)
    for index, (left, right, intercept, slope) in enumerate(_linear_pieces(profile)):
        if index == 0:
            ratio = q / params.p
            result += QuadratureResult(slope**q * right**ratio / ratio, 0.0, 0)
            continue

        def integrand(u, intercept=intercept, slope=slope):
            t = np.exp(u)
            return (t**alpha * (intercept + slope * t)) ** q

        result += integrate(integrand, math.log(left), math.log(right), rtol=rtol)

    end = profile.k.support_end
    tail = profile.total**q * end ** (alpha * q) / (-alpha * q)
    return result + QuadratureResult(tail, 0.0, 0)


def _piece_supremum(left: float, right: float, intercept: float, slope: float, alpha: float) -> float:
    """Maximum of :math:`t^\\alpha (c + m t)` on ``[left, right]``."""

    def height(t):
        return t**alpha * (intercept + slope * t)

    candidates = [right]
    if left > 0:
        candidates.append(left)
    if slope > 0 and alpha + 1 > 0:
        critical = -alpha * intercept / ((alpha + 1) * slope)
        if left < critical < right:
            candidates.append(critical)
    return max(map(height, candidates))


def lorentz_pq_starstar(
    profile: KProfile, p: float, q: float, rtol: float = QUADRATURE_RTOL
) -> float:
    """:math:`\\|x\\|_{(p,q)} = \\big(\\int_0^\\infty [t^{1/p} x^{**}(t)]^q
    dt/t\\big)^{1/q}`.

    For :math:`q = \\infty` the supremum is computed exactly, piece by piece,
    from the endpoints and the critical point of
    :math:`t^{1/p - 1}(c + m t)`.

    :raises DivergentNormError: If :math:`p \\le 1` or
        :math:`p = \\infty` with finite ``q``.
    """
    params = LorentzParams(p, q)
    if profile.is_zero:
        return 0.0
    _check_starred(profile, params)

    if math.isinf(params.q):
        alpha = 1 / params.p - 1
        supremum = 0.0
        for index, (left, right, intercept, slope) in enumerate(_linear_pieces(profile)):
            if index == 0:
                supremum = max(supremum, slope * right ** (1 / params.p))
            else:
                supremum = max(supremum, _piece_supremum(left, right, intercept, slope, alpha))
        return supremum

    result = lorentz_starstar_integral(profile, params.p, params.q, rtol)
    logger.debug(
        "(p,q)=(%r,%r) integral %r with error %r on %d intervals",
        params.p,
        params.q,
        result.value,
        result.error,
        result.intervals,
    )
    return result.value ** (1 / params.q)


def interp_norm(profile: KProfile, theta: float, q: float) -> float:
    """The real interpolation norm
    :math:`\\big(\\int (t^{-\\theta} K_t)^q dt/t\\big)^{1/q}`.

    :raises DomainError: If ``theta`` is not in :math:`(0, 1)`.
    """
    if not 0 < theta < 1:
        raise DomainError(f"theta must lie in (0, 1), got {theta}", source=theta)
    return lorentz_pq_starstar(profile, 1 / (1 - theta), q)


@dataclass(frozen=True)
class HardySandwich:
    """:math:`\\|k\\|_{p,q} \\le \\|x\\|_{(p,q)} \\le p' \\|k\\|_{p,q}`."""

    lower: float
    upper: float
    conjugate: float

    @property
    def ratio(self) -> Optional[float]:
        """``upper / lower``, :data:`None` for the zero profile."""
        if self.lower == 0:
            return None
        return self.upper / self.lower

    def holds(self, rtol: float = 1e-9) -> bool:
        if self.lower == 0:
            return self.upper == 0
        return (
            self.lower <= self.upper * (1 + rtol)
            and self.upper <= self.conjugate * self.lower * (1 + rtol)
        )

    def violation(self) -> float:
        """Relative amount by which the sandwich fails, 0 when it holds."""
        if self.lower == 0:
            return 0.0 if self.upper == 0 else math.inf
        return max(
            0.0,
            (self.lower - self.upper) / self.lower,
            (self.upper - self.conjugate * self.lower) / (self.conjugate * self.lower),
        )


def hardy_sandwich(profile: KProfile, p: float, q: float) -> HardySandwich:
    """Bound the starred norm of ``profile`` by the Lorentz norm of its
    derivative, taken as a rearranged function.

    :raises DomainError: Unless :math:`1 < p < \\infty`.
    """
    if not (1 < p < math.inf):
        raise DomainError(f"Hardy sandwich requires 1 < p < inf, got p={p}", source=p)
    return HardySandwich(
        lower=lorentz_pq(profile.k, p, q),
        upper=lorentz_pq_starstar(profile, p, q),
        conjugate=conjugate_exponent(p),
    )
