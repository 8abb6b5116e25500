"""S-V rounds and pointer-read traffic, request/respond vs plain messages.

For paths of 2^k vertices and random graphs, prints rounds against
ceil(log2 n) + 3 and the largest number of network messages any single
vertex receives in one superstep under each variant.

    python scripts/sv_rounds.py --out sv_rounds.csv
"""
from __future__ import annotations

import argparse
import csv
import math
from dataclasses import dataclass

from bspgraph.algorithms import ShiloachVishkin
from bspgraph.engine import EngineConfig, run
from bspgraph.generators import path_graph, random_graph


@dataclass
class RoundsConfig:
    workers: int = 8
    seed: int = 20240601
    max_k: int = 12
    out: str = "sv_rounds.csv"


def hottest_vertex(report) -> int:
    """Most wire requests one vertex received in a superstep (request/respond runs)."""
    return max((x[1] for s in report.steps for x in s.requests.values()), default=0)


def main(cfg: RoundsConfig) -> None:
    rows = []
    cases = [(f"path_2^{k}", path_graph(2 ** k)) for k in range(4, cfg.max_k + 1)]
    cases += [(f"random_n{n}", random_graph(n, 3.0, seed=cfg.seed + n, connected=True))
              for n in (1_000, 5_000, 20_000)]
    for name, g in cases:
        n = g.num_vertices
        bound = math.ceil(math.log2(n)) + 3
        a = run(g, ShiloachVishkin(True), EngineConfig(num_workers=cfg.workers, instrument=True))
        b = run(g, ShiloachVishkin(False), EngineConfig(num_workers=cfg.workers))
        wire_a = sum(w.wire for s in a.report.steps for w in s.workers)
        wire_b = sum(w.wire for s in b.report.steps for w in s.workers)
        row = [name, n, a.report.extra["rounds"], bound, a.report.supersteps,
               b.report.supersteps, wire_a, wire_b, hottest_vertex(a.report)]
        rows.append(row)
        print(f"{name:14s} rounds={row[2]:3d} (bound {bound:3d}) supersteps rr={row[4]:4d} "
              f"msg={row[5]:4d} wire rr={wire_a:9d} msg={wire_b:9d} "
              f"max requests at one vertex={row[8]}")
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["graph", "n", "rounds", "bound", "supersteps_reqresp", "supersteps_msg",
                    "wire_reqresp", "wire_msg", "max_requests_one_vertex"])
        w.writerows(rows)
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = RoundsConfig()
    ap.add_argument("--workers", type=int, default=d.workers)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--max-k", type=int, default=d.max_k)
    ap.add_argument("--out", default=d.out)
    a = ap.parse_args()
    main(RoundsConfig(a.workers, a.seed, a.max_k, a.out))
