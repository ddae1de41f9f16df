import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfunc_lab import DomainError
from kfunc_lab import StepFunction
from kfunc_lab import ValueMassList
from kfunc_lab import merge_rearranged
from kfunc_lab import rearrange

from .strategies import level_lists
from .strategies import positive


@pytest.fixture
def staircase():
    """3 on (0, 1] and 1 on (1, 3]."""
    return StepFunction((1.0, 3.0), (3.0, 1.0))


def test_canonical_form_merges_equal_values():
    """Adjacent equal values and trailing pieces equal to the tail are merged."""
    f = StepFunction((1, 2, 3), (2, 2, 0))
    assert f.breakpoints == (2.0,)
    assert f.values == (2.0,)
    assert f == StepFunction.from_pairs([[2, 2]])


def test_canonical_form_drops_empty_pieces():
    f = StepFunction((1, 1, 2), (3, 5, 1))
    assert f.to_pairs() == [[1.0, 3.0], [2.0, 1.0]]


@pytest.mark.parametrize(
    "breakpoints,values,tail,match",
    [
        ((2, 1), (1, 1), 0, "increasing"),
        ((1,), (-1,), 0, "nonnegative"),
        ((1, 2), (1,), 0, "same length"),
        ((1,), (math.nan,), 0, "finite"),
        ((1,), (1,), -1, "Tail"),
    ],
)
def test_invalid_step_function(breakpoints, values, tail, match):
    """Invalid step data is refused at construction."""
    with pytest.raises(DomainError, match=match):
        StepFunction(breakpoints, values, tail)


@pytest.mark.parametrize("s,expected", [(0.5, 3), (1, 3), (1.5, 1), (3, 1), (5, 0)])
def test_evaluate(staircase, s, expected):
    """Pieces are closed on the right."""
    assert staircase.evaluate(s) == expected


def test_evaluate_outside_domain(staircase):
    with pytest.raises(DomainError, match="s=0"):
        staircase.evaluate(0)


def test_integrate(staircase):
    assert staircase.integrate(0) == 0
    assert staircase.integrate(0.5) == 1.5
    assert staircase.integrate(2) == 4
    assert staircase.integrate() == 5
    assert staircase.l1_norm() == 5


def test_integrate_with_tail():
    f = StepFunction((1.0,), (2.0,), tail=1.0)
    assert f.integrate(3) == 4
    assert f.integrate() == math.inf
    assert f.distribution(0.5) == math.inf


def test_integrate_negative_bound(staircase):
    with pytest.raises(DomainError):
        staircase.integrate(-1)


def test_distribution(staircase):
    assert staircase.distribution(0) == 3
    assert staircase.distribution(1) == 1
    assert staircase.distribution(3) == 0


def test_pieces_and_support(staircase):
    assert list(staircase.pieces()) == [(0.0, 1.0, 3.0), (1.0, 3.0, 1.0)]
    assert staircase.support_end == 3
    assert staircase.initial_value == 3
    assert staircase.monotone
    assert not StepFunction((1, 2), (1, 2)).monotone
    assert StepFunction().support_end == 0


def test_power_and_scale(staircase):
    assert staircase.power(2).values == (9.0, 1.0)
    assert staircase.scale(2).values == (6.0, 2.0)
    assert staircase.scale(0) == StepFunction()
    with pytest.raises(DomainError):
        staircase.scale(-1)
    with pytest.raises(DomainError):
        staircase.power(0)


def test_levels(staircase):
    """Level masses are piece lengths times the weight."""
    assert staircase.levels(2).pairs == ((3.0, 2.0), (1.0, 4.0))
    with pytest.raises(DomainError, match="tail"):
        StepFunction((1,), (2,), tail=1).levels()


@pytest.mark.parametrize(
    "pairs,match",
    [([(-1, 1)], "nonnegative"), ([(1, 0)], "positive"), ([(1, math.inf)], "finite")],
)
def test_invalid_value_mass_list(pairs, match):
    with pytest.raises(DomainError, match=match):
        ValueMassList(pairs)


def test_value_mass_list_operations():
    levels = ValueMassList([(1, 2), (3, 1)])
    assert len(levels + levels) == 4
    assert levels.total_mass == 3
    assert levels.weighted(2).pairs == ((1.0, 4.0), (3.0, 2.0))


def test_rearrange():
    f = rearrange(ValueMassList([(1, 2), (3, 1)]))
    assert f == StepFunction((1.0, 3.0), (3.0, 1.0))
    assert rearrange([]) == StepFunction()
    assert rearrange([(0, 5), (2, 1)]) == StepFunction((1.0,), (2.0,))


@pytest.mark.parametrize(
    "parts,expected",
    [
        (
            [(1, StepFunction((1,), (1,))), (1, StepFunction((0.5,), (2,)))],
            StepFunction((0.5, 1.5), (2, 1)),
        ),
        ([(2, StepFunction((1,), (1,)))], StepFunction((2,), (1,))),
        ([], StepFunction()),
    ],
)
def test_merge_rearranged(parts, expected):
    assert merge_rearranged(parts) == expected


def test_merge_rearranged_refuses_bad_parts():
    with pytest.raises(DomainError, match="Weights"):
        merge_rearranged([(0, StepFunction((1,), (1,)))])
    with pytest.raises(DomainError, match="rearranged"):
        merge_rearranged([(1, StepFunction((1, 2), (1, 2)))])
    with pytest.raises(DomainError, match="tail"):
        merge_rearranged([(1, StepFunction((1,), (2,), tail=1))])


@given(level_lists(), positive)
def test_rearrangement_is_equimeasurable(levels, v):
    """The distribution of the rearrangement is the mass above each level."""
    expected = math.fsum(mass for value, mass in levels if value > v)
    assert rearrange(levels).distribution(v) == pytest.approx(expected, rel=1e-12)


@given(level_lists(), level_lists(), positive, positive)
def test_merge_agrees_with_sort(first, second, weight, t):
    """Heap merging rearranged parts equals sorting the weighted union."""
    merged = merge_rearranged([(1.0, rearrange(first)), (weight, rearrange(second))])
    sorted_union = rearrange(first + second.weighted(weight))
    assert merged.integrate(t) == pytest.approx(sorted_union.integrate(t), rel=1e-12)
    assert merged.monotone


@given(st.lists(positive, min_size=1, max_size=6), positive)
def test_rearrangement_is_monotone(values, mass):
    f = rearrange((value, mass) for value in values)
    assert f.monotone
    assert f.integrate() == pytest.approx(mass * math.fsum(values), rel=1e-12)
