"""Minimum reachable bandwidth of a particle group and its inflection point.

Sequence numbers (``k``, ``inflection``) are 1-based counts into the sorted
group, so ``group.particles[:inflection]`` is the largest principal prefix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadIndex, InvalidBandwidth, NoTail
from .particle import ParticleGroup, RationalLike, to_rational


@dataclass(frozen=True)
class BandwidthAnalysis:
    prefix_averages: tuple[Fraction, ...]
    b_min: Fraction
    principal_prefixes: tuple[int, ...]
    inflection: int
    alpha: Optional[Fraction] = None


def prefix_averages(group: ParticleGroup) -> tuple[Fraction, ...]:
    return tuple(bits / p.deadline for bits, p in zip(group.prefix_bits, group.particles))


def analyze(group: ParticleGroup) -> BandwidthAnalysis:
    averages = prefix_averages(group)
    b_min = max(averages)
    principal = tuple(k for k, avg in enumerate(averages, start=1) if avg == b_min)
    inflection = principal[-1]
    tail = alpha(group, inflection) if inflection < len(group) else None
    return BandwidthAnalysis(averages, b_min, principal, inflection, tail)


def peak_average_bandwidth(group: ParticleGroup) -> Fraction:
    return max(prefix_averages(group))


def _check_index(group: ParticleGroup, k: int) -> None:
    if not 1 <= k <= len(group):
        raise BadIndex(f"sequence number {k} outside 1..{len(group)}")


def is_principal_prefix(group: ParticleGroup, k: int) -> bool:
    """True iff the first ``k`` particles, served at ``b_min``, finish exactly on time."""
    _check_index(group, k)
    b_min = peak_average_bandwidth(group)
    finish = group.prefix_bits[k - 1] / b_min
    deadline = group.particles[k - 1].deadline
    # finish > deadline would make b_min unreachable
    assert finish <= deadline
    return finish == deadline


def alpha(group: ParticleGroup, inflection: int) -> Fraction:
    """Minimum reachable bandwidth of the particles after ``inflection``,
    once the clock has moved to the inflection particle's deadline."""
    _check_index(group, inflection)
    n = len(group)
    if inflection == n:
        raise NoTail("inflection is the last particle; no tail bandwidth")
    base_bits = group.prefix_bits[inflection - 1]
    base_time = group.particles[inflection - 1].deadline
    best = None
    for k in range(inflection, n):
        dt = group.particles[k].deadline - base_time
        if dt <= 0:
            raise BadIndex(f"particle {k + 1} shares the deadline of sequence number {inflection}")
        value = (group.prefix_bits[k] - base_bits) / dt
        if best is None or value > best:
            best = value
    return best


def is_reachable(group: ParticleGroup, bandwidth: RationalLike) -> bool:
    bandwidth = to_rational(bandwidth)
    if bandwidth <= 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    return all(bits <= bandwidth * p.deadline for bits, p in zip(group.prefix_bits, group.particles))
