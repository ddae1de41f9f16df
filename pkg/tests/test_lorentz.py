import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from kfunc_lab import DivergentNormError
from kfunc_lab import DomainError
from kfunc_lab import KProfile
from kfunc_lab import LorentzParams
from kfunc_lab import StepFunction
from kfunc_lab import hardy_sandwich
from kfunc_lab import interp_norm
from kfunc_lab import lorentz_pq
from kfunc_lab import lorentz_pq_starstar
from kfunc_lab.lorentz import lorentz_starstar_integral

from .strategies import profiles

UNIT = StepFunction((1,), (1,))
"""1 on (0, 1], the derivative of K(t) = min(t, 1)."""


@pytest.fixture
def unit_profile():
    return KProfile(UNIT)


@pytest.fixture
def two_pieces():
    """K(t) = 2t, then 1 + t on [1, 3], then 4."""
    return KProfile(StepFunction((1, 3), (2, 1)))


@pytest.mark.parametrize(
    "p,q,expected",
    [(2, 2, 1), (2, 1, 2), (3, math.inf, 1), (math.inf, math.inf, 1), (4, 2, math.sqrt(2))],
)
def test_lorentz_pq(p, q, expected):
    """Closed forms on the indicator of (0, 1]."""
    assert lorentz_pq(UNIT, p, q) == pytest.approx(expected, rel=1e-14)


def test_lorentz_pq_zero():
    assert lorentz_pq(StepFunction(), 2, 2) == 0


def test_lorentz_pq_errors():
    with pytest.raises(DivergentNormError, match="tail"):
        lorentz_pq(StepFunction((1,), (2,), tail=1), 2, 2)
    with pytest.raises(DivergentNormError, match="finite q"):
        lorentz_pq(UNIT, math.inf, 2)
    with pytest.raises(DomainError, match="rearranged"):
        lorentz_pq(StepFunction((1, 2), (1, 2)), 2, 2)
    with pytest.raises(DomainError, match="q must"):
        lorentz_pq(UNIT, 2, 0.5)
    with pytest.raises(DomainError, match="p must"):
        lorentz_pq(UNIT, 0, 1)


def test_lorentz_params():
    assert LorentzParams(2, 1).conjugate == 2
    assert LorentzParams(4, 1).conjugate == pytest.approx(4 / 3)
    assert LorentzParams(math.inf, 1).conjugate == 1
    assert LorentzParams(4, 1).theta == 0.75
    with pytest.raises(DomainError, match="p > 1"):
        LorentzParams(1, 1).conjugate


@pytest.mark.parametrize("q,expected", [(math.inf, 1), (2, math.sqrt(2))])
def test_lorentz_pq_starstar(unit_profile, q, expected):
    """Sup and integral of t^(1/2) min(t, 1)/t."""
    assert lorentz_pq_starstar(unit_profile, 2, q) == pytest.approx(expected, rel=1e-12)


def test_lorentz_pq_starstar_middle_pieces(two_pieces):
    """Middle pieces go through the quadrature."""
    assert lorentz_pq_starstar(two_pieces, 2, 2) == pytest.approx(
        math.sqrt(12 + 2 * math.log(3)), rel=1e-10
    )
    assert lorentz_pq_starstar(two_pieces, 2, math.inf) == pytest.approx(
        4 / math.sqrt(3), rel=1e-14
    )
    result = lorentz_starstar_integral(two_pieces, 2, 2)
    assert result.error <= 1e-9
    assert result.intervals >= 1


def test_lorentz_pq_starstar_zero():
    assert lorentz_pq_starstar(KProfile(), 2, 2) == 0
    assert lorentz_pq_starstar(KProfile(), 1, 2) == 0


def test_lorentz_pq_starstar_divergence(unit_profile):
    with pytest.raises(DivergentNormError, match="p=1"):
        lorentz_pq_starstar(unit_profile, 1, 2)
    with pytest.raises(DivergentNormError):
        lorentz_pq_starstar(unit_profile, 0.5, 2)
    with pytest.raises(DivergentNormError, match="finite q"):
        lorentz_pq_starstar(unit_profile, math.inf, 2)
    with pytest.raises(DomainError):
        lorentz_pq_starstar(unit_profile, 1, math.inf)
    with pytest.raises(DomainError, match="finite q"):
        lorentz_starstar_integral(unit_profile, 2, math.inf)


def test_lorentz_pq_starstar_infinite_p(unit_profile):
    """The (inf, inf) norm is the sup of K(t)/t, that is k(0+)."""
    assert lorentz_pq_starstar(unit_profile, math.inf, math.inf) == 1


@pytest.mark.parametrize("q,expected", [(math.inf, 1), (2, math.sqrt(2))])
def test_interp_norm(unit_profile, q, expected):
    assert interp_norm(unit_profile, 0.5, q) == pytest.approx(expected, rel=1e-12)
    assert interp_norm(KProfile(), 0.5, q) == 0


@pytest.mark.parametrize("theta", [0, 1, -0.5, 2])
def test_interp_norm_theta(unit_profile, theta):
    with pytest.raises(DomainError, match="theta"):
        interp_norm(unit_profile, theta, 2)


def test_hardy_sandwich(unit_profile):
    sandwich = hardy_sandwich(unit_profile, 2, 2)
    assert sandwich.lower == pytest.approx(1)
    assert sandwich.upper == pytest.approx(math.sqrt(2))
    assert sandwich.conjugate == 2
    assert sandwich.ratio == pytest.approx(math.sqrt(2))
    assert sandwich.holds()
    assert sandwich.violation() == 0


def test_hardy_sandwich_infinite_q(unit_profile):
    sandwich = hardy_sandwich(unit_profile, 2, math.inf)
    assert sandwich.lower == 1
    assert 1 <= sandwich.upper <= 2
    assert sandwich.holds()


def test_hardy_sandwich_zero_profile():
    sandwich = hardy_sandwich(KProfile(), 2, 2)
    assert sandwich.ratio is None
    assert sandwich.holds()
    assert sandwich.violation() == 0


def test_hardy_sandwich_domain(unit_profile):
    with pytest.raises(DomainError, match="1 < p < inf"):
        hardy_sandwich(unit_profile, 1, 2)


@settings(deadline=None)
@given(
    profiles(),
    st.sampled_from([1.5, 2.0, 3.0]),
    st.sampled_from([1.0, 2.0, 4.0, math.inf]),
)
def test_hardy_inequality(profile, p, q):
    """||k||_{p,q} <= ||x||_{(p,q)} <= p' ||k||_{p,q}."""
    sandwich = hardy_sandwich(profile, p, q)
    assert sandwich.holds(rtol=1e-9)


@given(profiles(), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_lorentz_pp_is_lp(profile, p):
    """||f*||_{p,p}^p is the integral of (f*)^p."""
    fstar = profile.k
    expected = math.fsum(value**p * (right - left) for left, right, value in fstar.pieces())
    assert lorentz_pq(fstar, p, p) ** p == pytest.approx(expected, rel=1e-12)


@settings(deadline=None)
@given(
    profiles(),
    st.sampled_from([1.5, 2.0, 3.0]),
    st.sampled_from([1.0, 2.0, math.inf]),
    st.sampled_from([0.5, 3.0, 10.0]),
)
def test_norms_are_homogeneous(profile, p, q, factor):
    scaled = profile.scale(factor)
    assert lorentz_pq(scaled.k, p, q) == pytest.approx(factor * lorentz_pq(profile.k, p, q), rel=1e-12)
    assert lorentz_pq_starstar(scaled, p, q) == pytest.approx(
        factor * lorentz_pq_starstar(profile, p, q), rel=1e-9
    )
    theta = 1 - 1 / p
    assert interp_norm(scaled, theta, q) == pytest.approx(factor * interp_norm(profile, theta, q), rel=1e-9)


@settings(deadline=None)
@given(profiles(), st.sampled_from([0.25, 0.5, 0.75]), st.sampled_from([1.0, 2.0, math.inf]))
def test_interp_norm_is_starred_norm(profile, theta, q):
    """The (theta, q) norm is the (p, q) norm with 1/p = 1 - theta."""
    expected = lorentz_pq_starstar(profile, 1 / (1 - theta), q)
    assert interp_norm(profile, theta, q) == pytest.approx(expected, rel=1e-12)


@given(profiles(), st.sampled_from([0.25, 0.5, 0.75]))
def test_interp_norm_bounds_sampled_sup(profile, theta):
    """The exact sup dominates t^-theta K_t on a sampled grid."""
    norm = interp_norm(profile, theta, math.inf)
    for t in np.geomspace(2.0**-10, 2.0**10, 201):
        assert t**-theta * profile(float(t)) <= norm * (1 + 1e-12)


@settings(deadline=None)
@given(profiles(), st.sampled_from([1.5, 2.0, 3.0]), st.sampled_from([1.0, 2.0, 4.0]))
def test_halving_tolerance(profile, p, q):
    """Halving the tolerance moves the integral less than its error estimate."""
    coarse = lorentz_starstar_integral(profile, p, q, rtol=1e-10)
    fine = lorentz_starstar_integral(profile, p, q, rtol=5e-11)
    assert abs(fine.value - coarse.value) <= coarse.error + 1e-13 * coarse.value
