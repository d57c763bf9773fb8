from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from particle_access import (
    EmptyGroup,
    InvalidBandwidth,
    InvalidParticle,
    Particle,
    access_efficiency,
    average_bandwidth,
    group_span,
    is_reachable,
    make_group,
    op_inc_sort,
    peak_average_bandwidth,
    to_rational,
)

from conftest import groups, particle_lists


def test_sort_single():
    assert make_group(("a", 1, 2)).ids == ["a"]


def test_sort_by_deadline():
    assert make_group(("a", 1, 2), ("b", 2, 1)).ids == ["b", "a"]


def test_sort_ties_keep_input_order():
    assert make_group(("a", 1, 1), ("b", 1, 1)).ids == ["a", "b"]
    assert make_group(("b", 1, 1), ("a", 1, 1)).ids == ["b", "a"]


def test_empty_group_rejected():
    with pytest.raises(EmptyGroup):
        op_inc_sort([])


@pytest.mark.parametrize("bits, deadline", [(0, 1), (-1, 1), (1, 0), (1, "-0.5")])
def test_invalid_particle(bits, deadline):
    with pytest.raises(InvalidParticle) as info:
        Particle("bad", bits, deadline)
    assert info.value.particle_id == "bad"


def test_prefix_bits():
    g = make_group(("a", 2, 1), ("b", 1, 2), ("c", "1/2", 3))
    assert g.prefix_bits == (2, 3, Fraction(7, 2))
    assert g.total_bits == Fraction(7, 2)


def test_unsorted_direct_construction_rejected():
    from particle_access import ParticleGroup

    with pytest.raises(ValueError):
        ParticleGroup((Particle("a", 1, 2), Particle("b", 1, 1)))


@pytest.mark.parametrize("triples, span", [
    ([("a", 1, 2)], 2),
    ([("a", 2, 1), ("b", 1, 2)], 2),
    ([("a", 1, 3), ("b", 1, 3)], 3),
])
def test_group_span(triples, span):
    assert group_span(make_group(*triples)) == span


@pytest.mark.parametrize("triples, expected", [
    ([("a", 5, 2)], Fraction(5, 2)),
    ([("a", 2, 1), ("b", 1, 2)], Fraction(3, 2)),
    ([("a", 1, 1), ("b", 1, 1)], 2),
])
def test_average_bandwidth(triples, expected):
    assert average_bandwidth(make_group(*triples)) == expected


@pytest.mark.parametrize("triples, bw, expected", [
    ([("a", 2, 1)], 2, 1),
    ([("a", 2, 1), ("b", 1, 2)], 2, Fraction(3, 4)),
    ([("a", 1, 2)], 1, Fraction(1, 2)),
])
def test_access_efficiency(triples, bw, expected):
    g = make_group(*triples)
    # direct form: bits / (bandwidth * span)
    assert g.total_bits / (Fraction(bw) * group_span(g)) == expected
    assert access_efficiency(g, bw) == expected


def test_access_efficiency_rejects_nonpositive_bandwidth():
    with pytest.raises(InvalidBandwidth):
        access_efficiency(make_group(("a", 1, 1)), 0)


@pytest.mark.parametrize("text, value", [
    ("0.5", Fraction(1, 2)), ("1/3", Fraction(1, 3)), ("1e-3", Fraction(1, 1000)), (" 7 ", 7),
])
def test_to_rational_strings(text, value):
    assert to_rational(text) == value


def test_to_rational_float_uses_decimal_repr():
    assert to_rational(0.1) == Fraction(1, 10)


@given(particle_lists(), st.randoms(use_true_random=False))
def test_sort_is_permutation_and_average_invariant(particles, rnd):
    shuffled = list(particles)
    rnd.shuffle(shuffled)
    a, b = op_inc_sort(particles), op_inc_sort(shuffled)
    assert sorted(a.ids) == sorted(p.id for p in particles)
    assert average_bandwidth(a) == average_bandwidth(b)
    assert list(a.deadlines) == sorted(a.deadlines)


@given(groups())
def test_prefix_span_is_last_deadline(g):
    for k in range(1, len(g) + 1):
        prefix = op_inc_sort(g.particles[:k])
        assert group_span(prefix) == g[k - 1].deadline


@given(groups(), st.builds(Fraction, st.integers(0, 50), st.integers(1, 10)))
def test_efficiency_at_most_one_when_reachable(g, extra):
    bw = peak_average_bandwidth(g) + extra
    assert is_reachable(g, bw)
    assert access_efficiency(g, bw) <= 1
