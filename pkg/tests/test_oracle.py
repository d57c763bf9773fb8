from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from particle_access import InvalidBandwidth, Particle, analyze, is_reachable, make_group
from particle_access.errors import InvalidMutation, TooLarge
from particle_access.oracle import (
    AddParticle,
    RaiseDeadline,
    ShrinkBits,
    brute_force_peak,
    edf_feasible,
    monotonicity_probe,
    random_check,
)

from conftest import groups, rationals


def test_brute_force_single():
    scan = brute_force_peak(make_group(("a", 1, 1)))
    assert (scan.best_value, scan.best_subset) == (1, ["a"])


def test_brute_force_picks_first_maximiser():
    # {a}=2, {b}=1/2, {a,b}=3/2
    scan = brute_force_peak(make_group(("a", 2, 1), ("b", 1, 2)))
    assert (scan.best_value, scan.best_subset) == (2, ["a"])


def test_brute_force_whole_group():
    # {a}=1/2, {b}=3/2, {a,b}=2
    scan = brute_force_peak(make_group(("a", 1, 2), ("b", 3, 2)))
    assert (scan.best_value, scan.best_subset) == (2, ["a", "b"])


def test_brute_force_guard():
    g = make_group(*[(f"p{i}", 1, i + 1) for i in range(21)])
    with pytest.raises(TooLarge):
        brute_force_peak(g)


@given(groups(max_size=6))
def test_brute_force_matches_naive_enumeration(g):
    best = max(
        sum(p.bits for p in subset) / max(p.deadline for p in subset)
        for r in range(1, len(g) + 1)
        for subset in combinations(g.particles, r)
    )
    assert brute_force_peak(g).best_value == best


def test_edf_examples():
    g = make_group(("a", 2, 1), ("b", 1, 2))
    run = edf_feasible(g, 2)
    assert run.feasible and run.completions == [1, Fraction(3, 2)]
    run = edf_feasible(g, Fraction(3, 2))
    assert not run.feasible and run.completions[0] == Fraction(4, 3)
    run = edf_feasible(make_group(("a", 1, 1)), 1)
    assert run.feasible and run.completions == [1]
    with pytest.raises(InvalidBandwidth):
        edf_feasible(g, -1)


@given(groups(), rationals)
def test_edf_agrees_with_reachability(g, bw):
    assert edf_feasible(g, bw).feasible == is_reachable(g, bw)


@given(groups())
def test_inflection_completes_on_deadline(g):
    r = analyze(g)
    run = edf_feasible(g, r.b_min)
    assert run.feasible
    assert run.completions[r.inflection - 1] == g[r.inflection - 1].deadline


def test_probe_examples():
    assert monotonicity_probe(make_group(("a", 2, 1)), RaiseDeadline("a", 1))[:2] == (2, 1)
    assert monotonicity_probe(make_group(("a", 2, 1)), ShrinkBits("a", 1))[:2] == (2, 1)
    # sorted [b, a]: prefix averages 1/1 and 2/2
    g = make_group(("a", 1, 2))
    probe = monotonicity_probe(g, AddParticle(Particle("b", 1, 1)))
    assert brute_force_peak(make_group(("a", 1, 2), ("b", 1, 1))).best_value == 1
    assert probe[:2] == (Fraction(1, 2), 1)
    assert probe.holds


@pytest.mark.parametrize("mutation", [
    ShrinkBits("a", 2),
    ShrinkBits("a", 5),
    RaiseDeadline("zz", 1),
    RaiseDeadline("a", 0),
    AddParticle(Particle("a", 1, 1)),
])
def test_probe_rejects_invalid_mutation(mutation):
    with pytest.raises(InvalidMutation):
        monotonicity_probe(make_group(("a", 2, 1)), mutation)


def test_random_check_small_run():
    tally = random_check(200, max_n=8, seed=7)
    assert tally.trials == 200 and tally.ok
