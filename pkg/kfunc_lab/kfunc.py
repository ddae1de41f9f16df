"""K-functional profiles.

A :class:`KProfile` stores the derivative :math:`k(x, \\cdot)` of the
concave function :math:`t \\mapsto K_t(x; A_0, A_1)`, so that
:math:`K_t = \\int_0^t k(x, s)\\, ds`.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .stepfn import StepFunction
from .stepfn import ValueMassList
from .stepfn import rearrange


@dataclass(frozen=True)
class KProfile:
    """A concave nondecreasing piecewise-linear :math:`K` with :math:`K(0) = 0`.

    :param k: The derivative, nonincreasing with a zero tail. The canonical
        form of :class:`~kfunc_lab.stepfn.StepFunction` makes the slopes of
        consecutive linear pieces strictly decrease.
    """

    k: StepFunction = StepFunction()

    def __post_init__(self):
        if not self.k.monotone:
            raise DomainError("A k-functional must be nonincreasing", source=self.k)
        self.k.require_finite_support()

    @property
    def total(self) -> float:
        """:math:`K(\\infty) = \\|k\\|_{L^1}`."""
        return self.k.l1_norm()

    @property
    def initial_slope(self) -> float:
        """:math:`k(0^+)`, the slope of the first linear piece."""
        return self.k.initial_value

    @property
    def is_zero(self) -> bool:
        return not self.k.values

    def scale(self, factor: float) -> "KProfile":
        """Profile of ``factor`` times the element."""
        return KProfile(self.k.scale(abs(factor)))

    def __call__(self, t: float) -> float:
        return eval_K(self, t)


@dataclass(frozen=True)
class WeightedScalarCouple:
    """The couple :math:`(\\mathbb{R}, a|\\cdot|; \\mathbb{R}, b|\\cdot|)` and an
    element ``x`` of it.

    :param a: Weight of the :math:`A_0` norm.
    :param b: Weight of the :math:`A_1` norm.
    :param x: The element value, only :math:`|x|` matters.
    """

    a: float
    b: float
    x: float

    def __post_init__(self):
        for name in ("a", "b"):
            weight = float(getattr(self, name))
            if not (weight > 0 and math.isfinite(weight)):
                raise DomainError(
                    f"Couple weight {name} must be positive and finite, got {weight}",
                    source=self,
                )
        if not math.isfinite(self.x):
            raise DomainError(f"Element value must be finite, got {self.x}", source=self)


def scalar_couple_profile(couple: WeightedScalarCouple) -> KProfile:
    """:math:`K_t = |x| \\min(a, t b)`, that is :math:`k = b|x|` on
    :math:`(0, a/b]`.

    .. code-block:: python

        scalar_couple_profile(WeightedScalarCouple(a=1, b=2, x=1)).k
        # 2 on (0, 0.5]
    """
    magnitude = abs(couple.x)
    return KProfile(StepFunction((couple.a / couple.b,), (couple.b * magnitude,)))


def l1_linf_profile(levels: ValueMassList) -> KProfile:
    """Profile of a simple function for the couple :math:`(L_1, L_\\infty)`,
    whose derivative is the rearrangement :math:`f^*`."""
    return KProfile(rearrange(levels))


def eval_K(profile: KProfile, t: float) -> float:
    """:math:`K(t) = \\int_0^t k`.

    :raises DomainError: If ``t`` is negative.
    """
    return profile.k.integrate(t)


def x_star_star(profile: KProfile, t: float) -> float:
    """Running average :math:`K(t)/t`, which is :math:`x^{**}(t)` for the
    couple :math:`(L_1, L_\\infty)`.

    :raises DomainError: If ``t`` is not positive.
    """
    if not t > 0:
        raise DomainError(f"x** is defined for t > 0, got t={t}", source=t)
    return eval_K(profile, t) / t
