"""Mirroring-threshold sweep on generated graphs, one CSV per graph.

Each graph is run at tau in {1, 10, 100, 1000, inf, auto}; ``auto`` is the
cost-model value ``M * exp(deg_avg / M)``.

    python scripts/threshold_sweep.py --outdir sweeps
"""
from __future__ import annotations

import argparse
import os
from dataclasses import dataclass, field

from bspgraph.algorithms import make_program
from bspgraph.engine import EngineConfig
from bspgraph.generators import powerlaw_graph, random_graph
from bspgraph.graph import degree_stats
from bspgraph.metrics import sweep_thresholds, write_sweep_csv


@dataclass
class SweepConfig:
    workers: int = 8
    seed: int = 20240601
    iterations: int = 10
    thresholds: list = field(default_factory=lambda: ["1", "10", "100", "1000", "inf", "auto"])
    outdir: str = "sweeps"
    small: bool = False


def graphs(cfg: SweepConfig):
    scale = 10 if cfg.small else 1
    yield "uniform_d20", random_graph(100_000 // scale, 20, seed=cfg.seed, directed=True)
    yield "powerlaw", powerlaw_graph(50_000 // scale, 6_000 // scale, seed=cfg.seed,
                                     directed=True)


def main(cfg: SweepConfig) -> None:
    os.makedirs(cfg.outdir, exist_ok=True)
    base = EngineConfig(num_workers=cfg.workers)
    for name, g in graphs(cfg):
        n, m, avg, mx = degree_stats(g)
        print(f"{name}: n={n} deg_avg={avg:.2f} max_degree={mx}")
        rows = sweep_thresholds(g, lambda: make_program("pagerank", epsilon=0.0,
                                                        iterations=cfg.iterations),
                                cfg.thresholds, base, algorithm="pagerank")
        best = min(r.total_wire for r in rows if r.tau_label != "auto")
        for r in rows:
            print(f"  tau={r.tau_label:>5s} ({r.tau:8.2f}) mirrored={r.mirrored_vertices:6d} "
                  f"wire={r.total_wire:9d} ({r.total_wire / best:.3f}x best) "
                  f"max/mean={r.imbalance_max_mean:.3f}")
        path = os.path.join(cfg.outdir, f"{name}.csv")
        write_sweep_csv(rows, path)
        print(f"  wrote {path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = SweepConfig()
    ap.add_argument("--workers", type=int, default=d.workers)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--iterations", type=int, default=d.iterations)
    ap.add_argument("--outdir", default=d.outdir)
    ap.add_argument("--small", action="store_true", help="graphs 10x smaller")
    a = ap.parse_args()
    main(SweepConfig(a.workers, a.seed, a.iterations, outdir=a.outdir, small=a.small))
