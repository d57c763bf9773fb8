"""Admission of one new particle into a group under a bandwidth budget.

Either the new particle's deadline is pushed out to the earliest value that
fits the budget, or its size is capped at the most bits that fit. Both are
exact: the answer is picked from one linear constraint per prefix of the
combined group.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .bandwidth import is_reachable, peak_average_bandwidth
from .errors import BudgetTooTight, InvalidParticle, NoCapacity
from .particle import Particle, ParticleGroup, RationalLike, op_inc_sort, to_rational

NEW_PARTICLE_ID = "__new__"


@dataclass(frozen=True)
class AdmissionResult:
    admitted_value: Fraction
    resulting_b_min: Fraction


def _check_budget(group: ParticleGroup, budget: Fraction) -> None:
    b_min = peak_average_bandwidth(group)
    if budget <= b_min:
        raise BudgetTooTight(f"budget {budget} must exceed the group's minimum bandwidth {b_min}")


def combined_group(group: ParticleGroup, bits, deadline, new_id: Hashable = NEW_PARTICLE_ID) -> ParticleGroup:
    """``group`` plus one particle, placed after existing equal deadlines."""
    return op_inc_sort(list(group) + [Particle(new_id, bits, deadline)])


def min_feasible_deadline(group: ParticleGroup, new_bits: RationalLike, budget: RationalLike) -> AdmissionResult:
    new_bits = to_rational(new_bits)
    budget = to_rational(budget)
    if new_bits <= 0:
        raise InvalidParticle(f"new particle bits must be > 0, got {new_bits}")
    _check_budget(group, budget)

    deadlines = group.deadlines
    prefix = (Fraction(0),) + group.prefix_bits
    n = len(group)
    # later_ok[p]: every existing prefix k > p still fits once new_bits join it
    later_ok = [True] * (n + 1)
    for p in range(n - 1, -1, -1):
        later_ok[p] = later_ok[p + 1] and prefix[p + 1] + new_bits <= budget * deadlines[p]

    # Position p means exactly p existing particles precede the new one,
    # i.e. deadlines[p-1] <= t < deadlines[p]. Candidates grow with p, so the
    # first feasible position gives the least deadline.
    for p in range(n + 1):
        if not later_ok[p]:
            continue
        lower = (prefix[p] + new_bits) / budget
        if p > 0:
            lower = max(lower, deadlines[p - 1])
        if p == n or lower < deadlines[p]:
            break
    combined = combined_group(group, new_bits, lower)
    assert is_reachable(combined, budget)
    return AdmissionResult(lower, peak_average_bandwidth(combined))


def max_feasible_bits(group: ParticleGroup, new_deadline: RationalLike, budget: RationalLike) -> AdmissionResult:
    new_deadline = to_rational(new_deadline)
    budget = to_rational(budget)
    if new_deadline <= 0:
        raise InvalidParticle(f"new particle deadline must be > 0, got {new_deadline}")
    _check_budget(group, budget)

    deadlines = group.deadlines
    prefix = (Fraction(0),) + group.prefix_bits
    p = bisect_right(deadlines, new_deadline)
    cap = budget * new_deadline - prefix[p]
    for k in range(p, len(group)):
        cap = min(cap, budget * deadlines[k] - prefix[k + 1])
    if cap <= 0:
        # unreachable while budget exceeds b_min strictly
        raise NoCapacity(f"no positive size fits budget {budget} at deadline {new_deadline}")
    combined = combined_group(group, cap, new_deadline)
    assert is_reachable(combined, budget)
    return AdmissionResult(cap, peak_average_bandwidth(combined))
