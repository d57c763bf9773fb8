"""Brute-force and simulation cross-checks.

Nothing here is used by the production path; these exist so tests and the
``oracle-check`` command can compare the prefix formulas against first
principles (subset enumeration, step-by-step transmission).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Hashable, NamedTuple, Union

from . import bandwidth
from .errors import InvalidBandwidth, InvalidMutation, InvalidParticle, TooLarge
from .particle import Particle, ParticleGroup, RationalLike, op_inc_sort, to_rational

MAX_ENUMERATION = 20


@dataclass(frozen=True)
class SubsetScan:
    best_value: Fraction
    best_subset: list


def brute_force_peak(group: ParticleGroup) -> SubsetScan:
    """Largest bits/span ratio over every non-empty subset of ``group``.

    Subsets are visited as a binary counter over sorted positions; the first
    maximiser found is reported.
    """
    n = len(group)
    if n > MAX_ENUMERATION:
        raise TooLarge(f"refusing to enumerate 2^{n} subsets (limit N={MAX_ENUMERATION})")
    # scale to integers so the inner loop avoids Fraction arithmetic
    bits_scale = lcm(*(p.bits.denominator for p in group))
    time_scale = lcm(*(p.deadline.denominator for p in group))
    bits = [int(p.bits * bits_scale) for p in group]
    deadlines = [int(p.deadline * time_scale) for p in group]

    # span of a subset is its largest deadline; no reliance on sort order
    subset_bits = [0] * (1 << n)
    subset_span = [0] * (1 << n)
    best_num, best_den, best_mask = 0, 1, 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        subset_bits[mask] = subset_bits[rest] + bits[i]
        subset_span[mask] = span = max(subset_span[rest], deadlines[i])
        if subset_bits[mask] * best_den > best_num * span:
            best_num, best_den, best_mask = subset_bits[mask], span, mask

    value = Fraction(best_num * time_scale, best_den * bits_scale)
    members = [group[i].id for i in range(n) if best_mask >> i & 1]
    return SubsetScan(value, members)


@dataclass(frozen=True)
class EdfRun:
    feasible: bool
    completions: list[Fraction]

    def __bool__(self):
        return self.feasible


def edf_feasible(group: ParticleGroup, bandwidth: RationalLike) -> EdfRun:
    """Send the sorted particles one after another at a constant rate."""
    rate = to_rational(bandwidth)
    if rate <= 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {rate}")
    clock = Fraction(0)
    completions = []
    feasible = True
    for p in group:
        clock += p.bits / rate
        completions.append(clock)
        if clock > p.deadline:
            feasible = False
    return EdfRun(feasible, completions)


class RaiseDeadline(NamedTuple):
    id: Hashable
    delta: Fraction


class ShrinkBits(NamedTuple):
    id: Hashable
    delta: Fraction


class AddParticle(NamedTuple):
    particle: Particle


Mutation = Union[RaiseDeadline, ShrinkBits, AddParticle]


class ProbeResult(NamedTuple):
    before: Fraction
    after: Fraction
    mutation: Mutation

    @property
    def holds(self) -> bool:
        if isinstance(self.mutation, AddParticle):
            return self.after >= self.before
        return self.after <= self.before


def apply_mutation(group: ParticleGroup, mutation: Mutation) -> ParticleGroup:
    particles = list(group)
    if isinstance(mutation, AddParticle):
        if mutation.particle.id in group.ids:
            raise InvalidMutation(f"particle {mutation.particle.id!r} already in group")
        return op_inc_sort(particles + [mutation.particle])
    if not isinstance(mutation, (RaiseDeadline, ShrinkBits)):
        raise InvalidMutation(f"unknown mutation {mutation!r}")
    delta = to_rational(mutation.delta)
    if delta <= 0:
        raise InvalidMutation(f"mutation amount must be > 0, got {delta}")
    for i, p in enumerate(particles):
        if p.id == mutation.id:
            break
    else:
        raise InvalidMutation(f"no particle {mutation.id!r} in group")
    try:
        if isinstance(mutation, RaiseDeadline):
            particles[i] = p.replace(deadline=p.deadline + delta)
        else:
            particles[i] = p.replace(bits=p.bits - delta)
    except InvalidParticle as exc:
        raise InvalidMutation(str(exc)) from None
    return op_inc_sort(particles)


def monotonicity_probe(group: ParticleGroup, mutation: Mutation) -> ProbeResult:
    """b_min before and after ``mutation``.

    Later deadlines and fewer bits can only lower the requirement; an extra
    particle can only raise it. ``ProbeResult.holds`` checks that direction.
    """
    after_group = apply_mutation(group, mutation)
    return ProbeResult(
        bandwidth.peak_average_bandwidth(group),
        bandwidth.peak_average_bandwidth(after_group),
        mutation,
    )


def random_rational(rng, top: int = 100, den: int = 10) -> Fraction:
    """Uniform numerator in 1..top over uniform denominator in 1..den."""
    return Fraction(rng.randint(1, top), rng.randint(1, den))


def random_group(rng, max_n: int = 12, min_n: int = 1) -> ParticleGroup:
    n = rng.randint(min_n, max_n)
    return op_inc_sort(
        Particle(f"p{i}", random_rational(rng), random_rational(rng)) for i in range(n)
    )


def random_mutation(rng, group: ParticleGroup) -> Mutation:
    kind = rng.randrange(3)
    if kind == 2:
        return AddParticle(Particle("extra", random_rational(rng), random_rational(rng)))
    target = rng.choice(group.particles)
    if kind == 0:
        return RaiseDeadline(target.id, random_rational(rng))
    # strictly less than the particle's bits so it stays valid
    return ShrinkBits(target.id, target.bits * Fraction(rng.randint(1, 99), 100))


@dataclass
class CheckTally:
    """Counts of agreeing / disagreeing cases per cross-check."""

    trials: int = 0
    peak_mismatch: int = 0
    edf_mismatch: int = 0
    probe_violations: int = 0

    @property
    def ok(self) -> bool:
        return not (self.peak_mismatch or self.edf_mismatch or self.probe_violations)


def check_group(group: ParticleGroup, tally: CheckTally, rng=None) -> None:
    """Run every cross-check on one group and record the outcome."""
    tally.trials += 1
    analysis = bandwidth.analyze(group)
    if brute_force_peak(group).best_value != analysis.b_min:
        tally.peak_mismatch += 1
    at_min = edf_feasible(group, analysis.b_min)
    below = edf_feasible(group, analysis.b_min * (1 - Fraction(1, 10**6)))
    if not at_min or below or at_min.completions[analysis.inflection - 1] != group[analysis.inflection - 1].deadline:
        tally.edf_mismatch += 1
    if rng is not None and not monotonicity_probe(group, random_mutation(rng, group)).holds:
        tally.probe_violations += 1


def random_check(trials: int, max_n: int = 12, seed: int = 0) -> CheckTally:
    rng = random.Random(seed)
    tally = CheckTally()
    for _ in range(trials):
        check_group(random_group(rng, max_n), tally, rng)
    return tally
