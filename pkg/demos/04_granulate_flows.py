"""
From flows to particles
=======================

Cut flows into blocks with per-block deadlines, then let the scheduler size
the access link over time.
"""

#
from pathlib import Path

from particle_access import estimate_flow_bandwidth, granulate, run
from particle_access.traceio import approx, load_flows

flows = load_flows(Path(__file__).parent / "data" / "flows.jsonl")
for f in flows:
    naive = estimate_flow_bandwidth(f.block_bits, f.per_block_deadline)
    print(f"{f.flow_id}: {len(granulate(f))} blocks, per-block estimate {approx(naive):g} bit/s")

#
events = sorted((e for f in flows for e in granulate(f)), key=lambda e: e.arrival_time)
timeline = run(events)
print(len(timeline.segments), "segments, misses:", timeline.miss_count)

# duration-weighted mean vs peak allocation
busy = sum(s.duration for s in timeline.segments)
mean = sum(s.bandwidth * s.duration for s in timeline.segments) / busy
print(f"peak {approx(max(timeline.bandwidths)):g} bit/s, mean {approx(mean):g} bit/s over {approx(busy):g} s busy")

# step data for external plotting
for s in timeline.segments[:8]:
    print(f"{approx(s.t_start):.4f}\t{approx(s.t_end):.4f}\t{approx(s.bandwidth):.1f}")
