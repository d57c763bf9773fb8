"""Cutting a flow into fixed-size blocks that each carry a delay budget."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Hashable

from .errors import InvalidFlowSpec, InvalidInput
from .particle import Particle, RationalLike, to_rational
from .scheduler import TraceEvent


@dataclass(frozen=True)
class FlowSpec:
    flow_id: Hashable
    total_bits: Fraction
    block_bits: Fraction
    per_block_deadline: Fraction
    start_time: Fraction = Fraction(0)
    inter_block_gap: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("total_bits", "block_bits", "per_block_deadline", "start_time", "inter_block_gap"):
            try:
                value = to_rational(getattr(self, name))
            except InvalidInput as exc:
                raise InvalidFlowSpec(f"flow {self.flow_id!r}: {name}: {exc}") from None
            object.__setattr__(self, name, value)
        for name in ("total_bits", "block_bits", "per_block_deadline"):
            if getattr(self, name) <= 0:
                raise InvalidFlowSpec(f"flow {self.flow_id!r}: {name} must be > 0")
        for name in ("start_time", "inter_block_gap"):
            if getattr(self, name) < 0:
                raise InvalidFlowSpec(f"flow {self.flow_id!r}: {name} must be >= 0")
        if self.block_bits > self.total_bits:
            raise InvalidFlowSpec(f"flow {self.flow_id!r}: block_bits exceeds total_bits")


def granulate(flow: FlowSpec) -> list[TraceEvent]:
    count = ceil(flow.total_bits / flow.block_bits)
    events = []
    for k in range(count):
        bits = min(flow.block_bits, flow.total_bits - k * flow.block_bits)
        particle = Particle(f"{flow.flow_id}#{k}", bits, flow.per_block_deadline)
        events.append(TraceEvent(flow.start_time + k * flow.inter_block_gap, particle))
    return events


def estimate_flow_bandwidth(bits: RationalLike, deadline: RationalLike) -> Fraction:
    """Rate needed to push ``bits`` out within ``deadline`` seconds."""
    bits, deadline = to_rational(bits), to_rational(deadline)
    if bits <= 0 or deadline <= 0:
        raise InvalidInput(f"bits and deadline must be > 0, got {bits} and {deadline}")
    return bits / deadline
