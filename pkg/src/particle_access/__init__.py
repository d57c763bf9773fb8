"""Deadline-driven bandwidth allocation for groups of information particles."""
from .admission import AdmissionResult, max_feasible_bits, min_feasible_deadline
from .bandwidth import (
    BandwidthAnalysis,
    alpha,
    analyze,
    is_principal_prefix,
    is_reachable,
    peak_average_bandwidth,
)
from .errors import *  # noqa: F401,F403
from .granulate import FlowSpec, estimate_flow_bandwidth, granulate
from .particle import (
    Particle,
    ParticleGroup,
    access_efficiency,
    average_bandwidth,
    group_span,
    make_group,
    op_inc_sort,
    to_rational,
)
from .scheduler import ScheduleSegment, ScheduleTimeline, TraceEvent, refresh, run
from .traceio import dump_trace, emit_report, load_trace, snapshot

__version__ = "0.1.0"
