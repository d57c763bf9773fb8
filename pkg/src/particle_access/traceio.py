"""Trace files, flow files and run reports.

Trace format: UTF-8, one JSON object per line with keys ``t`` (absolute
arrival, seconds), ``id``, ``bits`` and ``deadline`` (relative to arrival).
Numbers are strings (``"0.5"``, ``"1/3"``) so they stay exact. Blank lines
and lines starting with ``#`` are skipped.
"""
from __future__ import annotations

import csv
import io
import json
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Optional, Union

from .errors import InvalidFlowSpec, InvalidInput, InvalidParticle, ParseError
from .granulate import FlowSpec
from .particle import Particle, ParticleGroup, RationalLike, op_inc_sort, to_rational
from .scheduler import ScheduleTimeline, TraceEvent

Source = Union[str, Path, IO[str], Iterable[str]]

TRACE_KEYS = ("t", "id", "bits", "deadline")
FLOW_KEYS = ("flow_id", "total_bits", "block_bits", "deadline")


def _lines(source: Source):
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            yield from enumerate(fh, start=1)
    else:
        yield from enumerate(source, start=1)


def _records(source: Source, required: tuple[str, ...]):
    for lineno, line in _lines(source):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            # keep JSON numbers as text so 0.1 stays 1/10
            record = json.loads(text, parse_float=str, parse_int=str)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", line=lineno) from None
        if not isinstance(record, dict):
            raise ParseError("expected a JSON object", line=lineno)
        missing = [k for k in required if k not in record]
        if missing:
            raise ParseError(f"missing keys: {', '.join(missing)}", line=lineno)
        yield lineno, record


def load_trace(source: Source) -> list[TraceEvent]:
    events = []
    for lineno, rec in _records(source, TRACE_KEYS):
        pid = rec["id"]
        try:
            t = to_rational(rec["t"])
        except InvalidInput as exc:
            raise ParseError(f"bad arrival time: {exc}", line=lineno) from None
        try:
            events.append(TraceEvent(t, Particle(pid, rec["bits"], rec["deadline"])))
        except InvalidParticle as exc:
            raise InvalidParticle(str(exc), particle_id=pid, line=lineno) from None
    events.sort(key=lambda ev: ev.arrival_time)
    return events


def dump_trace(events: Iterable[TraceEvent], out: Optional[IO[str]] = None) -> str:
    lines = []
    for ev in events:
        p = ev.particle
        lines.append(json.dumps(
            {"t": str(ev.arrival_time), "id": p.id, "bits": str(p.bits), "deadline": str(p.deadline)}
        ))
    text = "".join(line + "\n" for line in lines)
    if out is not None:
        out.write(text)
    return text


def snapshot(events: Iterable[TraceEvent], at: RationalLike = 0) -> ParticleGroup:
    """Group of every particle that has arrived by ``at``, deadlines re-based to ``at``.

    Nothing is assumed transmitted before ``at``.
    """
    at = to_rational(at)
    particles = []
    for ev in events:
        if ev.arrival_time > at:
            continue
        rel = ev.absolute_deadline - at
        if rel <= 0:
            raise InvalidParticle(f"particle {ev.particle.id!r} expired before t={at}", particle_id=ev.particle.id)
        particles.append(ev.particle.replace(deadline=rel))
    return op_inc_sort(particles)


def load_flows(source: Source) -> list[FlowSpec]:
    """Line-delimited flows: ``flow_id``, ``total_bits``, ``block_bits``,
    ``deadline``, optional ``start`` and ``gap``."""
    flows = []
    for lineno, rec in _records(source, FLOW_KEYS):
        try:
            flows.append(FlowSpec(
                rec["flow_id"], rec["total_bits"], rec["block_bits"], rec["deadline"],
                rec.get("start", "0"), rec.get("gap", "0"),
            ))
        except InvalidFlowSpec as exc:
            raise InvalidFlowSpec(f"line {lineno}: {exc}") from None
    return flows


_APPROX = Context(prec=15)


def approx(x: Fraction) -> float:
    """Decimal value of ``x`` to 15 significant digits."""
    return float(_APPROX.divide(Decimal(x.numerator), Decimal(x.denominator)))


def _num(x: Optional[Fraction]):
    if x is None:
        return None
    return {"exact": str(x), "approx": approx(x)}


def summarize(segments: list[dict], particles: list[dict]) -> dict:
    """Summary statistics from exact segment/particle rows.

    Rows carry Fractions under ``t_start``, ``t_end``, ``bandwidth``,
    ``bits_sent`` and a boolean ``met``. Used both to build reports and to
    re-check them after parsing.
    """
    total_bits = sum((s["bits_sent"] for s in segments), Fraction(0))
    duration = sum((s["t_end"] - s["t_start"] for s in segments), Fraction(0))
    weighted = sum((s["bandwidth"] * (s["t_end"] - s["t_start"]) for s in segments), Fraction(0))
    return {
        "total_bits": total_bits,
        "duration": duration,
        "peak_bandwidth": max((s["bandwidth"] for s in segments), default=None),
        "mean_bandwidth": weighted / duration if duration else None,
        "miss_count": sum(not p["met"] for p in particles),
        "segment_efficiency": [
            s["bits_sent"] / (s["bandwidth"] * (s["t_end"] - s["t_start"])) for s in segments
        ],
    }


def report_rows(timeline: ScheduleTimeline) -> tuple[list[dict], list[dict]]:
    segments = [
        {
            "t_start": s.t_start,
            "t_end": s.t_end,
            "bandwidth": s.bandwidth,
            "bits_sent": s.bits_sent,
            "interrupted": s.interrupted,
        }
        for s in timeline.segments
    ]
    outcomes = sorted(timeline.particle_outcomes.values(), key=lambda o: (o.arrival, o.deadline, str(o.id)))
    particles = [
        {
            "id": o.id,
            "arrival": o.arrival,
            "deadline": o.deadline,
            "completion": o.completion,
            "bits": o.bits,
            "met": o.met,
        }
        for o in outcomes
    ]
    return segments, particles


def build_report(timeline: ScheduleTimeline) -> dict:
    """JSON-ready report; every rational becomes ``{"exact", "approx"}``."""
    segments, particles = report_rows(timeline)
    summary = summarize(segments, particles)

    def encode(row):
        return {k: _num(v) if isinstance(v, Fraction) else v for k, v in row.items()}

    return {
        "segments": [encode(s) for s in segments],
        "particles": [encode(p) for p in particles],
        "summary": {
            "total_bits": _num(summary["total_bits"]),
            "duration": _num(summary["duration"]),
            "peak_bandwidth": _num(summary["peak_bandwidth"]),
            "mean_bandwidth": _num(summary["mean_bandwidth"]),
            "miss_count": summary["miss_count"],
            "segment_efficiency": [_num(e) for e in summary["segment_efficiency"]],
        },
    }


def _csv_table(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    columns = []
    for key, value in rows[0].items():
        columns += [key, f"{key}_approx"] if isinstance(value, Fraction) or key == "completion" else [key]
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        flat = {}
        for key, value in row.items():
            if f"{key}_approx" in columns:
                flat[key] = "" if value is None else str(value)
                flat[f"{key}_approx"] = "" if value is None else repr(approx(value))
            else:
                flat[key] = value
        writer.writerow(flat)
    return buf.getvalue()


def emit_report(timeline: ScheduleTimeline, fmt: str = "json") -> str:
    """Serialize ``timeline``.

    ``json`` gives one document with ``segments``, ``particles`` and
    ``summary``. ``csv`` gives two tables, each introduced by a
    ``# segments`` / ``# particles`` line and separated by a blank line.
    """
    if fmt == "json":
        return json.dumps(build_report(timeline), indent=2) + "\n"
    if fmt == "csv":
        segments, particles = report_rows(timeline)
        return "# segments\n" + _csv_table(segments) + "\n# particles\n" + _csv_table(particles)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_json_report(text: str) -> tuple[list[dict], list[dict], dict]:
    """Inverse of the JSON report: exact rows plus the emitted summary."""
    doc = json.loads(text)

    def decode(row):
        return {k: Fraction(v["exact"]) if isinstance(v, dict) else v for k, v in row.items()}

    summary = {}
    for key, value in doc["summary"].items():
        if isinstance(value, dict):
            value = Fraction(value["exact"])
        elif isinstance(value, list):
            value = [Fraction(v["exact"]) for v in value]
        summary[key] = value
    return [decode(s) for s in doc["segments"]], [decode(p) for p in doc["particles"]], summary
