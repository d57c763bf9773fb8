"""Particles, deadline-sorted particle groups and their aggregate quantities.

All quantities are exact :class:`fractions.Fraction` values: bits, seconds and
bits/second. Deadlines are relative to the group's reference instant ``t = 0``,
so the survival interval of a particle is ``[0, deadline]`` and the span of any
deadline-sorted prefix is simply the deadline of its last member.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import accumulate
from typing import Hashable, Iterable, Iterator, Union

from .errors import EmptyGroup, InvalidBandwidth, InvalidInput, InvalidParticle

Rational = Fraction
RationalLike = Union[int, str, Fraction, Decimal, float]


def to_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings may be integers, decimals (``"0.25"``, ``"1e-3"``) or ``"p/q"``.
    Floats are read through their shortest repr, so ``0.1`` becomes ``1/10``
    rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a number: {value!r}")
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"not an exact number: {value!r}") from None
    raise InvalidInput(f"unsupported numeric type {type(value).__name__}")


@dataclass(frozen=True)
class Particle:
    """A block of ``bits`` that must be delivered within ``deadline`` seconds."""

    id: Hashable
    bits: Fraction
    deadline: Fraction

    def __post_init__(self):
        try:
            bits = to_rational(self.bits)
            deadline = to_rational(self.deadline)
        except InvalidInput as exc:
            raise InvalidParticle(str(exc), particle_id=self.id) from None
        if bits <= 0:
            raise InvalidParticle(f"particle {self.id!r}: bits must be > 0, got {bits}", particle_id=self.id)
        if deadline <= 0:
            raise InvalidParticle(
                f"particle {self.id!r}: deadline must be > 0, got {deadline}", particle_id=self.id
            )
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "deadline", deadline)

    def replace(self, **changes) -> "Particle":
        return Particle(
            changes.get("id", self.id),
            changes.get("bits", self.bits),
            changes.get("deadline", self.deadline),
        )


@dataclass(frozen=True)
class ParticleGroup:
    """Non-empty, deadline-sorted collection of particles.

    Build one with :func:`op_inc_sort`; the constructor trusts its input order
    and only checks it. ``prefix_bits[k - 1]`` is the bits carried by the
    first ``k`` particles.
    """

    particles: tuple[Particle, ...]
    prefix_bits: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        particles = tuple(self.particles)
        if not particles:
            raise EmptyGroup("a particle group needs at least one particle")
        for prev, cur in zip(particles, particles[1:]):
            if cur.deadline < prev.deadline:
                raise ValueError("particles must be sorted by non-decreasing deadline")
        object.__setattr__(self, "particles", particles)
        object.__setattr__(self, "prefix_bits", tuple(accumulate(p.bits for p in particles)))

    def __len__(self) -> int:
        return len(self.particles)

    def __iter__(self) -> Iterator[Particle]:
        return iter(self.particles)

    def __getitem__(self, i):
        return self.particles[i]

    @property
    def ids(self) -> list:
        return [p.id for p in self.particles]

    @property
    def deadlines(self) -> tuple[Fraction, ...]:
        return tuple(p.deadline for p in self.particles)

    @property
    def total_bits(self) -> Fraction:
        return self.prefix_bits[-1]


def op_inc_sort(particles: Iterable[Particle]) -> ParticleGroup:
    """Sort particles by deadline (stable for ties) into a group."""
    particles = list(particles)
    if not particles:
        raise EmptyGroup("cannot sort an empty particle list")
    for p in particles:
        if not isinstance(p, Particle):
            raise InvalidParticle(f"expected Particle, got {type(p).__name__}")
    return ParticleGroup(tuple(sorted(particles, key=lambda p: p.deadline)))


def make_group(*triples) -> ParticleGroup:
    """Shorthand: ``make_group(("a", 2, 1), ("b", 1, 2))``."""
    return op_inc_sort(Particle(*t) for t in triples)


def group_span(group: ParticleGroup) -> Fraction:
    return group.particles[-1].deadline


def average_bandwidth(group: ParticleGroup) -> Fraction:
    return group.total_bits / group_span(group)


def access_efficiency(group: ParticleGroup, bandwidth: RationalLike) -> Fraction:
    """Share of ``bandwidth`` over the group's span that its bits occupy.

    Only meaningful for a reachable ``bandwidth``; the caller checks that.
    """
    bandwidth = to_rational(bandwidth)
    if bandwidth <= 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    return group.total_bits / (bandwidth * group_span(group))
