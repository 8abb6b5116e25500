"""Bulk-synchronous vertex-centric engine.

Workers live in one process and exchange traffic at each barrier through an
in-memory transport. Within a superstep a worker only touches its own
vertices and buffers, so the compute and delivery phases can run on a
thread pool without locks.
"""
from __future__ import annotations

import logging
import math
import random
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Any, Callable, Optional

from .graph import Edge, Graph, format_vertex_id, partition
from .metrics import RunReport, StepRecord, WorkerStats
from .mirror import build_mirrors
from .msg_channel import MessageChannel, UnknownTargetError, deliver
from .reqresp import RequestChannel, build_response_sets

log = logging.getLogger(__name__)


class EngineError(RuntimeError):
    pass


class SuperstepLimitExceeded(EngineError):
    def __init__(self, limit: int, report: RunReport):
        super().__init__(f"no termination after {limit} supersteps")
        self.report = report


@dataclass(frozen=True)
class Aggregator:
    """Commutative, associative reduce; contributions of superstep s are read in s+1."""

    identity: Any
    merge: Callable[[Any, Any], Any]


def sum_aggregator(identity=0) -> Aggregator:
    return Aggregator(identity, lambda a, b: a + b)


def and_aggregator() -> Aggregator:
    return Aggregator(True, lambda a, b: a and b)


def or_aggregator() -> Aggregator:
    return Aggregator(False, lambda a, b: a or b)


class VertexProgram:
    """Base class for algorithms.

    Subclasses implement :meth:`compute`. ``combine(a, b)`` and
    ``relay(edge, msg)`` are optional: leave them ``None`` to disable.
    :meth:`respond` is required only when the program uses request/respond.
    """

    name = "program"
    combine = None
    relay = None

    def prepare(self, graph: Graph) -> None:
        """Validate ``graph`` before the run; raise ``ValueError`` to reject it."""

    def init_value(self, vid):
        return None

    def compute(self, vertex: "Vertex", messages: list, ctx: "Worker") -> None:
        raise NotImplementedError

    def respond(self, vertex: "Vertex", ctx: "Worker"):
        raise NotImplementedError

    def aggregators(self) -> dict:
        return {}

    def output(self, vertex: "Vertex"):
        return vertex.value

    def format_value(self, value) -> str:
        return repr(value) if isinstance(value, float) else str(value)

    def summary(self, values: dict, supersteps: int) -> dict:
        """Algorithm-level figures stored in the report's ``extra`` block."""
        return {}


class Vertex:
    __slots__ = ("id", "nbrs", "weights", "value", "active", "inbox", "groups", "mirrored")

    def __init__(self, vid, nbrs, weights, value):
        self.id = vid
        self.nbrs = nbrs
        self.weights = weights
        self.value = value
        self.active = True
        self.inbox = []
        self.groups = None
        self.mirrored = None

    @property
    def degree(self) -> int:
        return len(self.nbrs)

    def edge(self, i: int) -> Edge:
        return Edge(self.nbrs[i], self.weights[i] if self.weights is not None else None)

    def edges(self) -> list:
        if self.weights is None:
            return [Edge(u) for u in self.nbrs]
        return [Edge(u, w) for u, w in zip(self.nbrs, self.weights)]

    def __repr__(self):
        return f"Vertex({self.id!r}, value={self.value!r}, active={self.active})"


@dataclass
class EngineConfig:
    num_workers: int = 1
    mirror_threshold: float = math.inf
    use_combiner: bool = True
    max_supersteps: int = 10000
    # "error" or "drop" for messages addressed to vertices that do not exist
    unknown_target: str = "error"
    threads: int = 1
    # shuffle every incoming buffer before compute(); for order-insensitivity tests
    shuffle_seed: Optional[int] = None
    # per-vertex send attribution and per-requested-vertex request accounting
    instrument: bool = False
    # called as f(superstep, src_worker, dst_worker, raw_buffer, wire_batch)
    flush_observer: Optional[Callable] = None
    transport: Optional[Callable] = None


class InMemoryTransport:
    """Point-to-point batch transport between workers of one process."""

    def __init__(self, num_workers: int):
        self.num_workers = num_workers
        self._boxes = {}

    def send(self, src: int, dst: int, channel: str, batch) -> None:
        self._boxes.setdefault((dst, channel), []).append((src, batch))

    def receive(self, dst: int, channel: str) -> list:
        """Batches for ``dst`` on ``channel``, ordered by source worker."""
        got = self._boxes.pop((dst, channel), [])
        got.sort(key=lambda sb: sb[0])
        return got


class Worker:
    """One worker: owns a vertex slice and its side of every channel.

    The worker doubles as the context object handed to ``compute()``.
    """

    def __init__(self, index: int, num_workers: int, program: VertexProgram,
                 config: EngineConfig, num_vertices: int):
        self.index = index
        self.num_workers = num_workers
        self.program = program
        self.config = config
        self.num_vertices = num_vertices
        self.superstep = 0
        self.vertices = {}  # T_in
        self.order = []
        self.msg = MessageChannel(index, num_workers)
        self.mir_out = [[] for _ in range(num_workers)]
        self.mirror_table = {}
        self.req = RequestChannel(index, num_workers)
        self.stats = WorkerStats()
        self.aggs = program.aggregators()
        self._agg_partial = {k: a.identity for k, a in self.aggs.items()}
        self._agg_prev = dict(self._agg_partial)
        self._cur = None
        self._relay = program.relay
        self._part = _int_partitioner(num_workers)
        self._resp_cache = {}
        self._rng = (random.Random(config.shuffle_seed * 1_000_003 + index)
                     if config.shuffle_seed is not None else None)
        self.mirror_sends = {}
        self.vertex_sends = {} if config.instrument else None
        if config.instrument:
            self.req.requesters = {}

    # ---- context API ----------------------------------------------------

    @property
    def vertex(self) -> Vertex:
        if self._cur is None:
            raise EngineError("not inside compute()")
        return self._cur

    def vote_to_halt(self) -> None:
        self.vertex.active = False

    def send_msg(self, tgt, msg) -> None:
        if self._cur is None:
            raise EngineError("send_msg() called outside compute()")
        j = self._part(tgt)
        self.msg.out[j].append((tgt, msg))
        self.stats.msg_sent += 1
        if j == self.index:
            self.stats.msg_local += 1
        elif self.vertex_sends is not None:
            vid = self._cur.id
            self.vertex_sends[vid] = self.vertex_sends.get(vid, 0) + 1

    def send_along(self, i: int, msg) -> None:
        """Send over the ``i``-th out-edge of the current vertex, applying relay sender-side."""
        v = self.vertex
        if self._relay is not None:
            msg = self._relay(v.edge(i), msg)
        self.send_msg(v.nbrs[i], msg)

    def broadcast(self, value) -> None:
        """Deliver ``value`` to every out-neighbour of the current vertex.

        Mirrored vertices send one Ch_mir message per holding worker and
        relay runs at the receiver; everyone else falls back to Ch_msg with
        relay applied here.
        """
        v = self.vertex
        if v.mirrored is not None:
            wire = 0
            for j in v.mirrored:
                self.mir_out[j].append((v.id, value))
                if j == self.index:
                    self.stats.mir_local += 1
                else:
                    wire += 1
            self.stats.mir_sent += wire
            self.mirror_sends[v.id] = self.mirror_sends.get(v.id, 0) + wire
            return
        relay = self._relay
        out = self.msg.out
        remote = 0
        for j, targets, ws in v.groups:
            if relay is None:
                out[j].extend(zip(targets, repeat(value)))
            elif ws is None:
                out[j].extend((t, relay(Edge(t), value)) for t in targets)
            else:
                out[j].extend((t, relay(Edge(t, w), value)) for t, w in zip(targets, ws))
            if j == self.index:
                self.stats.msg_local += len(targets)
            else:
                remote += len(targets)
        self.stats.msg_sent += len(v.nbrs)
        if self.vertex_sends is not None and remote:
            self.vertex_sends[v.id] = self.vertex_sends.get(v.id, 0) + remote

    def request(self, u) -> None:
        v = self.vertex
        self.req.request(u, self._part(u), v.id)

    def respond_to(self, target) -> None:
        """Push the current vertex's respond value into ``target``'s worker table."""
        v = self.vertex
        self.req.respond_to(v.id, self._part(target))

    def get_resp(self, u):
        return self.req.get(u)

    def has_resp(self, u) -> bool:
        return u in self.req.table

    def aggregate(self, name: str, value) -> None:
        try:
            agg = self.aggs[name]
        except KeyError:
            raise EngineError(f"unknown aggregator {name!r}") from None
        self._agg_partial[name] = agg.merge(self._agg_partial[name], value)

    def read_aggregate(self, name: str):
        try:
            return self._agg_prev[name]
        except KeyError:
            raise EngineError(f"unknown aggregator {name!r}") from None

    # ---- engine side ----------------------------------------------------

    def compute_phase(self) -> int:
        compute = self.program.compute
        rng = self._rng
        n = 0
        for v in self.order:
            if not v.active:
                continue
            n += 1
            msgs = v.inbox
            if msgs:
                v.inbox = []
                if rng is not None:
                    rng.shuffle(msgs)
            self._cur = v
            compute(v, msgs, self)
        self._cur = None
        return n

    def deliver_mirrored(self, batch: list) -> int:
        relay = self._relay
        table = self.mirror_table
        n = 0
        for vid, value in batch:
            for rec, w in table[vid]:
                payload = value if relay is None else relay(Edge(rec.id, w), value)
                rec.inbox.append(payload)
                rec.active = True
                n += 1
        return n

    def respond_value(self, u):
        try:
            return self._resp_cache[u]
        except KeyError:
            pass
        rec = self.vertices.get(u)
        if rec is None:
            raise EngineError(f"request for non-existent vertex {u!r}")
        try:
            val = self.program.respond(rec, self)
        except NotImplementedError:
            raise EngineError(f"respond() is not defined for requested vertex {u!r}") from None
        self._resp_cache[u] = val
        return val

    def any_active(self) -> bool:
        return any(v.active for v in self.order)


def _int_partitioner(num_workers: int):
    def part(vid):
        if isinstance(vid, tuple):
            return partition(vid, num_workers)
        return vid % num_workers
    return part


@dataclass
class RunResult:
    values: dict
    report: RunReport
    program: VertexProgram = field(repr=False, default=None)

    def write_results(self, path) -> None:
        """One ``id value`` line per vertex, ascending id."""
        fmt = self.program.format_value
        with open(path, "w") as fh:
            for vid in sorted(self.values):
                fh.write(f"{format_vertex_id(vid)} {fmt(self.values[vid])}\n")


class Engine:
    def __init__(self, graph: Graph, program: VertexProgram, config: Optional[EngineConfig] = None):
        self.graph = graph
        self.program = program
        self.config = config = config or EngineConfig()
        M = config.num_workers
        if M < 1:
            raise ValueError(f"worker count must be >= 1, got {M}")
        if config.unknown_target not in ("error", "drop"):
            raise ValueError(f"unknown_target must be 'error' or 'drop', got {config.unknown_target!r}")
        program.prepare(graph)
        self.num_workers = M
        self.workers = [Worker(i, M, program, config, graph.num_vertices) for i in range(M)]
        self.transport = (config.transport or InMemoryTransport)(M)
        self.combine = program.combine if config.use_combiner else None
        part = self.workers[0]._part
        for vid in graph.vertices():
            w = self.workers[part(vid)]
            ws = graph.weights[vid] if graph.weighted else None
            rec = Vertex(vid, graph.adj[vid], ws, program.init_value(vid))
            w.vertices[vid] = rec
            w.order.append(rec)
        self.mirrors = build_mirrors(graph, config.mirror_threshold, M, part)
        for i, table in enumerate(self.mirrors.tables):
            tin = self.workers[i].vertices
            self.workers[i].mirror_table = {
                v: [(tin[u], wt) for u, wt in n_i] for v, n_i in table.items()}
        for w in self.workers:
            for rec in w.order:
                if rec.id in self.mirrors.holders:
                    rec.mirrored = self.mirrors.holders[rec.id]
                else:
                    rec.groups = _group_by_worker(rec, part)
        self.report = RunReport(
            algorithm=program.name, num_workers=M, num_vertices=graph.num_vertices,
            num_entries=graph.num_entries,
            mirror_threshold=config.mirror_threshold,
            mirrored_vertices=len(self.mirrors.holders),
            mirror_preproc=self.mirrors.preproc(),
            combiner=self.combine is not None)
        self._pool = ThreadPoolExecutor(config.threads) if config.threads > 1 else None

    def _map(self, fn, items):
        if self._pool is None:
            return [fn(x) for x in items]
        return list(self._pool.map(fn, items))

    def run(self) -> RunResult:
        try:
            return self._run()
        finally:
            if self._pool is not None:
                self._pool.shutdown()

    def _run(self) -> RunResult:
        cfg = self.config
        s = 0
        while any(w.any_active() or w.req.table for w in self.workers):
            s += 1
            if s > cfg.max_supersteps:
                raise SuperstepLimitExceeded(cfg.max_supersteps, self.report)
            for w in self.workers:
                w.superstep = s
                w.stats = WorkerStats()
                w.mirror_sends = {}
                if w.vertex_sends is not None:
                    w.vertex_sends = {}
            active = sum(self._map(Worker.compute_phase, self.workers))
            step = StepRecord(s, active, [w.stats for w in self.workers])
            self._barrier(step)
            self.report.steps.append(step)
        values = {}
        for w in self.workers:
            for rec in w.order:
                values[rec.id] = self.program.output(rec)
        self.report.extra.update(self.program.summary(values, s))
        return RunResult(values, self.report, self.program)

    def _barrier(self, step: StepRecord) -> None:
        M = self.num_workers
        workers = self.workers
        tr = self.transport
        s = step.superstep

        # Ch_msg and Ch_mir go out together, Ch_msg first
        for w in workers:
            batches = w.msg.flush(self.combine, w.stats, self.config.flush_observer, s)
            for j, batch in enumerate(batches):
                if batch:
                    tr.send(w.index, j, "msg", batch)
            for j, batch in enumerate(w.mir_out):
                if batch:
                    tr.send(w.index, j, "mir", batch)
            w.mir_out = [[] for _ in range(M)]
            step.mirror_sends.update(w.mirror_sends)
            if w.vertex_sends is not None:
                step.vertex_sends.update(w.vertex_sends)

        on_unknown = self.config.unknown_target

        def receive(w: Worker):
            for _, batch in tr.receive(w.index, "msg"):
                try:
                    w.stats.msg_received += deliver(batch, w.vertices, on_unknown)
                except UnknownTargetError as exc:
                    raise EngineError(str(exc)) from None
            for _, batch in tr.receive(w.index, "mir"):
                w.stats.mir_forwarded += w.deliver_mirrored(batch)

        self._map(receive, workers)

        # Ch_req: requests, then responses
        reqs = [w.req.take_requests() for w in workers]  # reqs[i][k] = S_to_k at i
        expl = [w.req.take_explicit() for w in workers]
        for i, w in enumerate(workers):
            for k in range(M):
                if k == i:
                    w.stats.req_local += len(reqs[i][k])
                else:
                    w.stats.req_sent += len(reqs[i][k])
                    if reqs[i][k]:
                        tr.send(i, k, "req", reqs[i][k])

        def answer(w: Worker):
            k = w.index
            w._resp_cache = {}
            s_from = [[] for _ in range(M)]
            for i, batch in tr.receive(k, "req"):
                s_from[i] = batch
            s_from[k] = reqs[k][k]
            return build_response_sets(s_from, expl[k], w.respond_value)

        resp = self._map(answer, workers)  # resp[k][i] = R_to_i at k
        for k, w in enumerate(workers):
            for i in range(M):
                if i == k:
                    w.stats.resp_local += len(resp[k][i])
                else:
                    w.stats.resp_sent += len(resp[k][i])
                    if resp[k][i]:
                        tr.send(k, i, "resp", resp[k][i])
        for i, w in enumerate(workers):
            table = dict(resp[i][i])
            for _, r in tr.receive(i, "resp"):
                table.update(r)
            w.req.table = table

        if self.config.instrument:
            self._account_requests(step, reqs, resp)

        # aggregators: fold worker partials in index order
        for name, agg in workers[0].aggs.items():
            acc = agg.identity
            for w in workers:
                acc = agg.merge(acc, w._agg_partial[name])
            for w in workers:
                w._agg_prev[name] = acc
                w._agg_partial[name] = agg.identity

    def _account_requests(self, step: StepRecord, reqs, resp) -> None:
        M = self.num_workers
        part = self.workers[0]._part
        ell = {}
        for w in self.workers:
            for u, who in w.req.requesters.items():
                ell.setdefault(u, set()).update(who)
            w.req.requesters = {}
        for u, who in ell.items():
            k = part(u)
            sources = [i for i in range(M) if i != k and _contains_sorted(reqs[i][k], u)]
            responses = sum(1 for i in sources if u in resp[k][i])
            step.requests[u] = [len(who), len(sources), responses]
            step.request_sources[u] = sources


def _contains_sorted(seq: list, x) -> bool:
    i = bisect_left(seq, x)
    return i < len(seq) and seq[i] == x


def _group_by_worker(rec: Vertex, part) -> list:
    groups = {}
    ws = rec.weights
    for k, u in enumerate(rec.nbrs):
        j = part(u)
        g = groups.get(j)
        if g is None:
            g = groups[j] = ([], [] if ws is not None else None)
        g[0].append(u)
        if ws is not None:
            g[1].append(ws[k])
    return [(j, t, w) for j, (t, w) in sorted(groups.items())]


def run(graph: Graph, program: VertexProgram, config: Optional[EngineConfig] = None) -> RunResult:
    """Run ``program`` on ``graph`` until every vertex has halted and all channels are empty."""
    return Engine(graph, program, config).run()
