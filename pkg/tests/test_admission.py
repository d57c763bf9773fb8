from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from particle_access import (
    BudgetTooTight,
    InvalidParticle,
    analyze,
    is_reachable,
    make_group,
    max_feasible_bits,
    min_feasible_deadline,
    peak_average_bandwidth,
)
from particle_access.admission import combined_group

from conftest import groups, rationals
from search import bisect_max_bits, bisect_min_deadline

budget_factor = st.builds(lambda a, b: 1 + Fraction(a, b), st.integers(1, 50), st.integers(1, 20))


@pytest.mark.parametrize("triples, new_bits, budget, expected", [
    ([("a", 1, 1)], 3, 2, 2),
    ([("a", 1, 2)], 1, 1, 1),
    ([("a", 1, 1)], Fraction(1, 1000), 2, Fraction(1, 2000)),
])
def test_min_feasible_deadline_examples(triples, new_bits, budget, expected):
    g = make_group(*triples)
    new_bits, budget = Fraction(new_bits), Fraction(budget)
    assert bisect_min_deadline(g, new_bits, budget) == expected
    result = min_feasible_deadline(g, new_bits, budget)
    assert result.admitted_value == expected
    assert result.resulting_b_min <= budget


@pytest.mark.parametrize("triples, new_deadline, budget, expected, b_after", [
    ([("a", 1, 2)], 1, 1, 1, 1),
    ([("a", 2, 1)], 2, 3, 4, 3),
    ([("a", 1, 1)], 1, 2, 1, 2),
])
def test_max_feasible_bits_examples(triples, new_deadline, budget, expected, b_after):
    g = make_group(*triples)
    new_deadline, budget = Fraction(new_deadline), Fraction(budget)
    assert bisect_max_bits(g, new_deadline, budget) == expected
    result = max_feasible_bits(g, new_deadline, budget)
    assert (result.admitted_value, result.resulting_b_min) == (expected, b_after)


def test_budget_must_exceed_b_min():
    g = make_group(("a", 2, 1))
    with pytest.raises(BudgetTooTight):
        min_feasible_deadline(g, 1, 2)
    with pytest.raises(BudgetTooTight):
        max_feasible_bits(g, 1, 1)


def test_invalid_new_particle():
    g = make_group(("a", 2, 1))
    with pytest.raises(InvalidParticle):
        min_feasible_deadline(g, 0, 3)
    with pytest.raises(InvalidParticle):
        max_feasible_bits(g, -1, 3)


def test_equal_deadline_goes_after_existing():
    g = combined_group(make_group(("a", 1, 1), ("b", 1, 2)), 1, 1, new_id="n")
    assert g.ids == ["a", "n", "b"]


@settings(max_examples=60)
@given(groups(max_size=6), rationals, budget_factor)
def test_deadline_matches_bisection_and_is_sharp(g, new_bits, factor):
    budget = peak_average_bandwidth(g) * factor
    result = min_feasible_deadline(g, new_bits, budget)
    t = result.admitted_value
    assert is_reachable(combined_group(g, new_bits, t), budget)
    delta = min(Fraction(1, 10**9), t / 2)
    assert not is_reachable(combined_group(g, new_bits, t - delta), budget)
    assert bisect_min_deadline(g, new_bits, budget) == t


@settings(max_examples=60)
@given(groups(max_size=6), rationals, budget_factor)
def test_bits_match_bisection_and_are_sharp(g, new_deadline, factor):
    budget = peak_average_bandwidth(g) * factor
    result = max_feasible_bits(g, new_deadline, budget)
    i = result.admitted_value
    assert i > 0
    assert is_reachable(combined_group(g, i, new_deadline), budget)
    assert not is_reachable(combined_group(g, i + Fraction(1, 10**9), new_deadline), budget)
    assert bisect_max_bits(g, new_deadline, budget) == i


@given(groups(), rationals)
def test_far_deadline_recovers_original_b_min(g, new_bits):
    # a deadline far beyond everything else cannot raise b_min above the
    # original or the new particle's own share
    far = (g.total_bits + new_bits) / peak_average_bandwidth(g) + g[-1].deadline
    combined = combined_group(g, new_bits, far * 10**6)
    assert analyze(combined).b_min == peak_average_bandwidth(g)


@given(groups(), budget_factor)
def test_tiny_bits_need_tiny_deadline(g, factor):
    budget = peak_average_bandwidth(g) * factor
    slack = min(budget * p.deadline - bits for p, bits in zip(g, g.prefix_bits))
    eps = slack / 2
    # small enough to go first without disturbing any later prefix
    assert min_feasible_deadline(g, eps, budget).admitted_value == eps / budget
