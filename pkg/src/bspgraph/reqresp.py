"""Ch_req: deduplicated requests, response sets and the per-superstep response table."""
from __future__ import annotations


class ResponseMissing(KeyError):
    pass


class RequestChannel:
    """Request/response state owned by one worker.

    ``to[k]`` is ``S_to_k``, a set of requested ids resident on worker ``k``.
    ``explicit[k]`` holds ids of local vertices that pushed their respond
    value to worker ``k``. ``table`` is the response table readable during
    the current superstep.
    """

    __slots__ = ("index", "num_workers", "to", "explicit", "table", "requesters")

    def __init__(self, index: int, num_workers: int):
        self.index = index
        self.num_workers = num_workers
        self.to = [set() for _ in range(num_workers)]
        self.explicit = [set() for _ in range(num_workers)]
        self.table = {}
        self.requesters = None

    def request(self, u, k: int, requester=None) -> None:
        self.to[k].add(u)
        if self.requesters is not None:
            self.requesters.setdefault(u, set()).add(requester)

    def respond_to(self, responder, k: int) -> None:
        self.explicit[k].add(responder)

    def get(self, u):
        try:
            return self.table[u]
        except KeyError:
            raise ResponseMissing(
                f"no response for vertex {u!r}: it was not requested (or pushed) "
                "in the previous superstep") from None

    def take_requests(self) -> list:
        """Request sets as sorted lists (wire order), then reset."""
        out = [sorted(s) for s in self.to]
        self.to = [set() for _ in range(self.num_workers)]
        return out

    def take_explicit(self) -> list:
        out = [sorted(s) for s in self.explicit]
        self.explicit = [set() for _ in range(self.num_workers)]
        return out


def build_response_sets(requests_from: list, explicit: list, respond_value) -> list:
    """Response set ``R_to_k`` for every source worker ``k``.

    ``requests_from[k]`` is ``S_from_k``; ``explicit[k]`` lists local
    responders pushing to ``k``. ``respond_value(u)`` must be deterministic
    within the superstep. Explicit and implicit entries are unioned; for the
    same vertex both carry the same value, explicit is written last.
    """
    out = []
    for k, req in enumerate(requests_from):
        resp = {}
        for u in req:
            resp[u] = respond_value(u)
        for w in explicit[k]:
            resp[w] = respond_value(w)
        out.append(resp)
    return out


def message_bound_check(requests_received: int, responses_sent: int, requesters: int,
                        num_workers: int) -> bool:
    """True iff ``requests + responses <= 2 min(M, l)`` for one requested vertex."""
    return requests_received + responses_sent <= 2 * min(num_workers, requesters)
