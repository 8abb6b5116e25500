"""Ch_msg: per-worker outgoing buffers, sender-side combining, and delivery."""
from __future__ import annotations

import logging

log = logging.getLogger(__name__)

_MISSING = object()


class UnknownTargetError(KeyError):
    pass


def flush_with_combiner(buffer: list, combine=None) -> "tuple[list, int]":
    """Turn one outgoing buffer ``O_j`` into its wire batch.

    With a combiner the batch holds one ``(target, payload)`` per distinct
    target, sorted by target id, and payloads are folded in buffer order.
    Without one the buffer goes out verbatim. Returns the batch and the
    number of messages removed by combining.
    """
    if combine is None or not buffer:
        return buffer, 0
    acc = {}
    get = acc.get
    for tgt, payload in buffer:
        prev = get(tgt, _MISSING)
        acc[tgt] = payload if prev is _MISSING else combine(prev, payload)
    # targets are unique, so tuples never fall through to comparing payloads
    batch = sorted(acc.items())
    return batch, len(buffer) - len(batch)


def deliver(batch: list, table: dict, on_unknown: str = "error") -> int:
    """Append each payload to its target's incoming buffer and wake the target.

    ``table`` is the worker's ``T_in`` (vertex id -> vertex record). Returns
    the number of payloads delivered.
    """
    n = 0
    for tgt, payload in batch:
        rec = table.get(tgt)
        if rec is None:
            if on_unknown == "drop":
                log.warning("dropping message to unknown vertex %r", tgt)
                continue
            raise UnknownTargetError(f"message sent to non-existent vertex {tgt!r}")
        rec.inbox.append(payload)
        rec.active = True
        n += 1
    return n


class MessageChannel:
    """Outgoing side of Ch_msg for one worker: ``out[j]`` is ``O_j``."""

    __slots__ = ("index", "num_workers", "out")

    def __init__(self, index: int, num_workers: int):
        self.index = index
        self.num_workers = num_workers
        self.out = [[] for _ in range(num_workers)]

    def flush(self, combine, stats, observer=None, superstep: int = 0) -> list:
        """Flush every ``O_j``; returns the M wire batches and resets buffers."""
        batches = []
        for j, buf in enumerate(self.out):
            batch, gone = flush_with_combiner(buf, combine)
            stats.combined_away += gone
            if j != self.index:
                stats.msg_wire += len(batch)
            if observer is not None:
                observer(superstep, self.index, j, buf, batch)
            batches.append(batch)
        self.out = [[] for _ in range(self.num_workers)]
        return batches
