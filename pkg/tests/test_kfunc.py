import math

import pytest
from hypothesis import given

from kfunc_lab import DomainError
from kfunc_lab import KProfile
from kfunc_lab import StepFunction
from kfunc_lab import ValueMassList
from kfunc_lab import WeightedScalarCouple
from kfunc_lab import eval_K
from kfunc_lab import l1_linf_profile
from kfunc_lab import scalar_couple_profile
from kfunc_lab import x_star_star

from .strategies import positive
from .strategies import profiles


@pytest.mark.parametrize(
    "a,b,x,t,expected",
    [
        (1, 2, 1, 1, 1),
        (1, 2, 1, 0.25, 0.5),
        (2, 1, -3, 1, 3),
        (2, 1, -3, 5, 6),
        (1, 1, 1, 0, 0),
    ],
)
def test_scalar_couple_profile(a, b, x, t, expected):
    """K(t) = |x| min(a, t b)."""
    profile = scalar_couple_profile(WeightedScalarCouple(a, b, x))
    assert eval_K(profile, t) == pytest.approx(expected)
    assert profile(t) == eval_K(profile, t)


def test_scalar_couple_derivative():
    profile = scalar_couple_profile(WeightedScalarCouple(a=1, b=2, x=1))
    assert profile.k == StepFunction((0.5,), (2.0,))
    assert profile.initial_slope == 2
    assert profile.total == 1


def test_zero_element_has_zero_profile():
    profile = scalar_couple_profile(WeightedScalarCouple(a=1, b=1, x=0))
    assert profile.is_zero
    assert eval_K(profile, 10) == 0


@pytest.mark.parametrize("a,b,x", [(0, 1, 1), (1, -1, 1), (1, math.inf, 1), (1, 1, math.nan)])
def test_invalid_couple(a, b, x):
    with pytest.raises(DomainError):
        WeightedScalarCouple(a, b, x)


def test_l1_linf_profile():
    """For (L1, Linf) the K-functional integrates the rearrangement."""
    profile = l1_linf_profile(ValueMassList([(1, 2), (3, 1)]))
    assert eval_K(profile, 1) == 3
    assert eval_K(profile, 2) == 4
    assert eval_K(profile, 10) == 5
    assert x_star_star(profile, 2) == 2


def test_x_star_star_outside_domain():
    profile = l1_linf_profile(ValueMassList([(1, 1)]))
    with pytest.raises(DomainError, match="t > 0"):
        x_star_star(profile, 0)


def test_eval_K_negative_t():
    with pytest.raises(DomainError):
        eval_K(KProfile(), -1)


def test_invalid_profiles():
    """A profile derivative must be nonincreasing and finitely supported."""
    with pytest.raises(DomainError, match="nonincreasing"):
        KProfile(StepFunction((1, 2), (1, 2)))
    with pytest.raises(DomainError, match="tail"):
        KProfile(StepFunction((1,), (2,), tail=1))


def test_profile_scale():
    profile = KProfile(StepFunction((1, 3), (3, 1)))
    assert profile.scale(-2).k == StepFunction((1, 3), (6, 2))
    assert profile.scale(0).is_zero


@given(profiles(), positive, positive)
def test_K_is_concave_and_nondecreasing(profile, s, t):
    low, high = sorted((s, t))
    assert eval_K(profile, low) <= eval_K(profile, high)
    middle = eval_K(profile, (low + high) / 2)
    chord = (eval_K(profile, low) + eval_K(profile, high)) / 2
    assert middle >= chord * (1 - 1e-12)


@given(profiles(), positive)
def test_K_bounds(profile, t):
    """K(t) is at most min(K(inf), k(0+) t)."""
    value = eval_K(profile, t)
    assert value <= profile.total * (1 + 1e-12)
    assert value <= profile.initial_slope * t * (1 + 1e-12)
