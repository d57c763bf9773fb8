"""
Dynamic bandwidth adjustment
============================

Serve a group at its minimum bandwidth until the inflection deadline, then
drop to the next (smaller) requirement. An arrival interrupts the current
segment and forces a re-analysis.
"""

#
from pathlib import Path

from particle_access import emit_report, load_trace, run

data = Path(__file__).parent / "data"


def show(timeline):
    for s in timeline.segments:
        sent = ", ".join(f"{tx.particle_id}:{tx.bits}" for tx in s.transmitted)
        flag = " (interrupted)" if s.interrupted else ""
        print(f"  [{str(s.t_start):>5}, {str(s.t_end):>5})  {str(s.bandwidth):>5} bit/s  {sent}{flag}")
    for o in timeline.particle_outcomes.values():
        print(f"  {o.id}: done {o.completion}, due {o.deadline}, met={o.met}")


# arrival-free: bandwidth steps down at each inflection
show(run(load_trace(data / "two_stage.jsonl")))

# b arrives at t=1/2 with a tighter deadline than a
show(run(load_trace(data / "interrupt.jsonl")))

# a capped link: the same trace can no longer meet every deadline
print("capacity 1 bit/s:")
show(run(load_trace(data / "two_stage.jsonl"), capacity=1))

#
print(emit_report(run(load_trace(data / "two_stage.jsonl")), "csv"))
