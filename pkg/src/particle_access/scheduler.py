"""Event-driven particle access with dynamically shrinking bandwidth.

At every decision instant the queued particles are re-based to the current
clock, sorted, and served EDF at the group's minimum reachable bandwidth
until the inflection particle's deadline. An arrival inside a segment cuts
it short; bits already sent stay sent and the loop restarts.

An optional ``capacity`` caps the link rate. Without it every group is
schedulable and no particle ever misses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Hashable, Iterable, Optional

from .bandwidth import analyze
from .errors import InvalidBandwidth, InvalidParticle
from .particle import Particle, ParticleGroup, RationalLike, op_inc_sort, to_rational


@dataclass(frozen=True)
class TraceEvent:
    """``particle`` arrives at absolute ``arrival_time``; its deadline is
    relative to that arrival."""

    arrival_time: Fraction
    particle: Particle

    def __post_init__(self):
        t = to_rational(self.arrival_time)
        if t < 0:
            raise InvalidParticle(
                f"particle {self.particle.id!r}: arrival time must be >= 0, got {t}",
                particle_id=self.particle.id,
            )
        object.__setattr__(self, "arrival_time", t)

    @property
    def absolute_deadline(self) -> Fraction:
        return self.arrival_time + self.particle.deadline


@dataclass(frozen=True)
class Transmission:
    particle_id: Hashable
    bits: Fraction
    completion: Optional[Fraction] = None


@dataclass(frozen=True)
class ScheduleSegment:
    t_start: Fraction
    t_end: Fraction
    bandwidth: Fraction
    transmitted: tuple[Transmission, ...]
    interrupted: bool = False

    @property
    def duration(self) -> Fraction:
        return self.t_end - self.t_start

    @property
    def bits_sent(self) -> Fraction:
        return sum((tx.bits for tx in self.transmitted), Fraction(0))

    @property
    def efficiency(self) -> Fraction:
        return self.bits_sent / (self.bandwidth * self.duration)


@dataclass(frozen=True)
class ParticleOutcome:
    id: Hashable
    arrival: Fraction
    deadline: Fraction
    completion: Optional[Fraction]
    met: bool
    bits: Fraction


@dataclass(frozen=True)
class ScheduleTimeline:
    segments: tuple[ScheduleSegment, ...]
    particle_outcomes: dict = field(default_factory=dict)

    @property
    def miss_count(self) -> int:
        return sum(not o.met for o in self.particle_outcomes.values())

    @property
    def bandwidths(self) -> list[Fraction]:
        return [s.bandwidth for s in self.segments]


class Policy(str, Enum):
    DROP = "drop"
    REJECT = "reject"


@dataclass
class InFlight:
    """Queue record; ``remaining`` shrinks as bits go out."""

    id: Hashable
    remaining: Fraction
    absolute_deadline: Fraction


def refresh(queue: Iterable[InFlight], now: RationalLike) -> tuple[Optional[ParticleGroup], list[InFlight]]:
    """Re-base queued particles to ``now``.

    Returns the sorted group of particles still owing bits (``None`` if there
    are none) and the records whose deadline has passed with bits remaining.
    """
    now = to_rational(now)
    live, expired = [], []
    for rec in queue:
        if rec.remaining <= 0:
            continue
        if rec.absolute_deadline - now <= 0:
            expired.append(rec)
        else:
            live.append(Particle(rec.id, rec.remaining, rec.absolute_deadline - now))
    return (op_inc_sort(live) if live else None), expired


def _serve(order: list[InFlight], rate: Fraction, start: Fraction, end: Fraction) -> tuple[Transmission, ...]:
    """Send ``order`` one particle at a time at ``rate`` during [start, end)."""
    clock = start
    sent = []
    for rec in order:
        if clock >= end:
            break
        finish = clock + rec.remaining / rate
        if finish <= end:
            sent.append(Transmission(rec.id, rec.remaining, finish))
            rec.remaining = Fraction(0)
            clock = finish
        else:
            part = (end - clock) * rate
            sent.append(Transmission(rec.id, part))
            rec.remaining -= part
            clock = end
    return tuple(sent)


def run(trace: Iterable[TraceEvent], policy: Policy | str = Policy.DROP,
        capacity: Optional[RationalLike] = None) -> ScheduleTimeline:
    """Simulate ``trace`` and return the resulting piecewise-constant schedule.

    ``policy`` only matters when ``capacity`` is set: ``drop`` serves the
    overloaded group EDF at full capacity and drops particles at their
    deadline; ``reject`` refuses an arriving particle whose admission would
    push the minimum bandwidth above capacity.
    """
    policy = Policy(policy)
    if capacity is not None:
        capacity = to_rational(capacity)
        if capacity <= 0:
            raise InvalidBandwidth(f"capacity must be > 0, got {capacity}")

    events = sorted(trace, key=lambda ev: ev.arrival_time)
    outcomes: dict = {}
    info: dict = {}
    for ev in events:
        if ev.particle.id in info:
            raise InvalidParticle(f"duplicate particle id {ev.particle.id!r}", particle_id=ev.particle.id)
        info[ev.particle.id] = ev

    def settle(rec_id, completion):
        ev = info[rec_id]
        met = completion is not None and completion <= ev.absolute_deadline
        outcomes[rec_id] = ParticleOutcome(
            rec_id, ev.arrival_time, ev.absolute_deadline, completion, met, ev.particle.bits
        )

    queue: dict = {}
    segments = []
    pending = 0
    now = events[0].arrival_time if events else Fraction(0)

    while pending < len(events) or queue:
        # arrivals at or before the clock join before the next analysis
        while pending < len(events) and events[pending].arrival_time <= now:
            ev = events[pending]
            pending += 1
            rec = InFlight(ev.particle.id, ev.particle.bits, ev.absolute_deadline)
            if policy is Policy.REJECT and capacity is not None:
                trial, _ = refresh(list(queue.values()) + [rec], now)
                if analyze(trial).b_min > capacity:
                    settle(rec.id, None)
                    continue
            queue[rec.id] = rec

        group, expired = refresh(queue.values(), now)
        for rec in expired:
            del queue[rec.id]
            settle(rec.id, None)
        if group is None:
            if pending < len(events):
                now = events[pending].arrival_time
                continue
            break

        result = analyze(group)
        order = [queue[p.id] for p in group]
        if capacity is not None and result.b_min > capacity:
            rate = capacity
            horizon = now + group[0].deadline
        else:
            rate = result.b_min
            horizon = now + group[result.inflection - 1].deadline
            order = order[: result.inflection]

        next_arrival = events[pending].arrival_time if pending < len(events) else None
        interrupted = next_arrival is not None and next_arrival < horizon
        end = next_arrival if interrupted else horizon

        sent = _serve(order, rate, now, end)
        segments.append(ScheduleSegment(now, end, rate, sent, interrupted))
        for tx in sent:
            if tx.completion is not None:
                del queue[tx.particle_id]
                settle(tx.particle_id, tx.completion)
        now = end

    return ScheduleTimeline(tuple(segments), outcomes)
