"""Message counters, run reports, and the balance/bound analyses over them."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Optional, Sequence

REPORT_SCHEMA_VERSION = 1
SWEEP_SCHEMA_VERSION = 1

SWEEP_COLUMNS = (
    "schema_version", "algorithm", "tau_label", "tau", "cost_model", "mirrored_vertices",
    "supersteps", "total_wire", "total_sent", "max_worker_sent", "max_worker_wire",
    "imbalance_max_mean", "imbalance_cv",
)


@dataclass
class WorkerStats:
    """Counters for one worker in one superstep.

    ``*_sent`` counts messages leaving the worker over the network;
    ``*_local`` counts the same-worker share, which never touches the wire.
    ``msg_sent`` is the exception: it counts every ``send_msg`` call (and
    every fallback broadcast target) before combining, local ones included,
    so ``msg_wire`` is the network subset after combining.
    """

    msg_sent: int = 0
    msg_local: int = 0
    combined_away: int = 0
    msg_wire: int = 0
    mir_sent: int = 0
    mir_local: int = 0
    req_sent: int = 0
    req_local: int = 0
    resp_sent: int = 0
    resp_local: int = 0
    msg_received: int = 0
    mir_forwarded: int = 0

    @property
    def delivered(self) -> int:
        return self.msg_received + self.mir_forwarded

    @property
    def sent(self) -> int:
        """Messages sent in the Pregel sense (local sends included)."""
        return self.msg_sent + self.mir_sent + self.req_sent + self.resp_sent

    @property
    def wire(self) -> int:
        return self.msg_wire + self.mir_sent + self.req_sent + self.resp_sent

    def to_dict(self) -> dict:
        d = asdict(self)
        d["delivered"] = self.delivered
        return d

    def __iadd__(self, other: "WorkerStats") -> "WorkerStats":
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self


@dataclass
class StepRecord:
    superstep: int
    active_vertices: int
    workers: list
    # mirrored vertex -> wire messages its broadcasts cost this superstep
    mirror_sends: dict = field(default_factory=dict)
    # vertex -> cross-worker Ch_msg sends before combining (instrumented runs)
    vertex_sends: dict = field(default_factory=dict)
    # requested vertex -> [requesters, wire requests received, wire responses sent]
    requests: dict = field(default_factory=dict)
    # requested vertex -> source workers whose request sets carried it over the wire
    request_sources: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "superstep": self.superstep,
            "active_vertices": self.active_vertices,
            "workers": [w.to_dict() for w in self.workers],
        }


@dataclass
class RunReport:
    algorithm: str
    num_workers: int
    num_vertices: int
    num_entries: int
    mirror_threshold: Optional[float] = None
    mirrored_vertices: int = 0
    mirror_preproc: dict = field(default_factory=dict)
    combiner: bool = True
    steps: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def supersteps(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "algorithm": self.algorithm,
            "workers": self.num_workers,
            "num_vertices": self.num_vertices,
            "num_entries": self.num_entries,
            "mirror_threshold": _json_float(self.mirror_threshold),
            "mirrored_vertices": self.mirrored_vertices,
            "mirror_preproc": self.mirror_preproc,
            "combiner": self.combiner,
            "supersteps": self.supersteps,
            "per_superstep": [s.to_dict() for s in self.steps],
            "per_worker_sent": per_worker_totals(self, "sent"),
            "per_worker_wire": per_worker_totals(self, "wire"),
            "extra": self.extra,
        }

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1, sort_keys=True)
            fh.write("\n")


def _json_float(x):
    if x is None:
        return None
    if math.isinf(x):
        return "inf"
    return x


def worker_totals(report: RunReport) -> list:
    """Per-worker :class:`WorkerStats` summed over all supersteps."""
    totals = [WorkerStats() for _ in range(report.num_workers)]
    for step in report.steps:
        for acc, ws in zip(totals, step.workers):
            acc += ws
    return totals


def per_worker_totals(report: RunReport, kind: str = "sent") -> list:
    """Length-M vector of per-worker message totals over the whole run.

    ``kind`` selects ``"sent"`` (Pregel send count), ``"wire"`` (network
    messages after combining) or any :class:`WorkerStats` counter name.
    """
    out = []
    for ws in worker_totals(report):
        out.append(getattr(ws, kind))
    return out


def imbalance(values: Sequence[float]) -> "tuple[float, float]":
    """``(max/mean, coefficient of variation)``; an all-zero vector is ``(1.0, 0.0)``."""
    if len(values) == 0:
        raise ValueError("imbalance of an empty vector")
    n = len(values)
    mean = sum(values) / n
    if mean == 0:
        return 1.0, 0.0
    var = sum((x - mean) ** 2 for x in values) / n
    return max(values) / mean, math.sqrt(var) / mean


def broadcast_bound_violations(report: RunReport, degrees: dict) -> list:
    """``(superstep, vertex, sends, bound)`` for mirrored broadcasts above ``min(M, d)``."""
    from .mirror import per_vertex_send_bound_check

    bad = []
    for step in report.steps:
        for v, sends in step.mirror_sends.items():
            if not per_vertex_send_bound_check(sends, degrees[v], report.num_workers):
                bad.append((step.superstep, v, sends, min(report.num_workers, degrees[v])))
    return bad


def request_bound_violations(report: RunReport) -> list:
    """``(superstep, vertex, wire_total, bound)`` where requests+responses exceed ``2 min(M, l)``."""
    from .reqresp import message_bound_check

    bad = []
    for step in report.steps:
        for u, (ell, req_in, resp_out) in step.requests.items():
            if not message_bound_check(req_in, resp_out, ell, report.num_workers):
                bad.append((step.superstep, u, req_in + resp_out,
                            2 * min(report.num_workers, ell)))
    return bad


@dataclass
class SweepRow:
    algorithm: str
    tau_label: str
    tau: float
    cost_model: bool
    mirrored_vertices: int
    supersteps: int
    total_wire: int
    total_sent: int
    max_worker_sent: int
    max_worker_wire: int
    imbalance_max_mean: float
    imbalance_cv: float

    def as_row(self) -> list:
        tau = "inf" if math.isinf(self.tau) else repr(self.tau)
        return [SWEEP_SCHEMA_VERSION, self.algorithm, self.tau_label, tau,
                int(self.cost_model), self.mirrored_vertices, self.supersteps,
                self.total_wire, self.total_sent, self.max_worker_sent, self.max_worker_wire,
                repr(self.imbalance_max_mean), repr(self.imbalance_cv)]


def parse_threshold(token: str, num_workers: int, deg_avg: float) -> "tuple[str, float, bool]":
    """Map ``1``/``inf``/``off``/``auto`` to ``(label, tau, from_cost_model)``."""
    from .mirror import compute_threshold

    t = token.strip().lower()
    if t == "auto":
        return "auto", compute_threshold(num_workers, deg_avg), True
    if t in ("inf", "off", "none"):
        return "inf", math.inf, False
    tau = float(t)
    if tau < 0:
        raise ValueError(f"mirror threshold must be >= 0, got {token!r}")
    return t, tau, False


def sweep_thresholds(graph, make_program, thresholds: Iterable[str], config=None,
                     algorithm: str = "") -> list:
    """One run per threshold token; returns :class:`SweepRow` s in input order.

    ``make_program`` is called once per run so stateful programs start fresh.
    """
    from dataclasses import replace

    from .engine import EngineConfig, run
    from .graph import degree_stats

    base = config or EngineConfig()
    deg_avg = degree_stats(graph)[2] if graph.num_vertices else 0.0
    rows = []
    for token in thresholds:
        label, tau, auto = parse_threshold(token, base.num_workers, deg_avg)
        cfg = replace(base, mirror_threshold=tau)
        result = run(graph, make_program(), cfg)
        rep = result.report
        sent = per_worker_totals(rep, "sent")
        wire = per_worker_totals(rep, "wire")
        ratio, cv = imbalance(sent)
        rows.append(SweepRow(algorithm or rep.algorithm, label, tau, auto, rep.mirrored_vertices,
                             rep.supersteps, sum(wire), sum(sent), max(sent), max(wire),
                             ratio, cv))
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow(r.as_row())
