"""``bspgraph`` command line: run an algorithm, sweep mirroring thresholds, generate graphs."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import generators
from .algorithms import ALGORITHMS, make_program
from .engine import EngineConfig, EngineError, run
from .graph import GraphFormatError, degree_stats, load_edge_list, parse_vertex_id, write_edge_list
from .metrics import parse_threshold, sweep_thresholds, write_sweep_csv

log = logging.getLogger("bspgraph")


def _on_off(token: str) -> bool:
    t = token.lower()
    if t in ("on", "true", "1", "yes"):
        return True
    if t in ("off", "false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected on/off, got {token!r}")


def _threshold_token(token: str) -> str:
    t = token.strip().lower()
    if t in ("auto", "inf", "off", "none"):
        return t
    try:
        if float(t) < 0:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"mirror threshold must be a number >= 0, 'auto' or 'off', got {token!r}") from None
    return t


def _positive(token: str) -> int:
    try:
        n = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {token!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {n}")
    return n


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge list: 'u v [w]' per line, '#' comments")
    d = p.add_mutually_exclusive_group()
    d.add_argument("--directed", dest="directed", action="store_true", default=None)
    d.add_argument("--undirected", dest="directed", action="store_false")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--id-type", choices=("int", "pair"), default="int")


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--reqresp", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--combiner", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--seed", type=int, default=None,
                   help="shuffle incoming messages with this seed")
    p.add_argument("--max-supersteps", type=_positive, default=10000)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--source", default=None, help="sssp source vertex")
    p.add_argument("--epsilon", type=float, default=0.01, help="pagerank tolerance")
    p.add_argument("--iterations", type=_positive, default=None,
                   help="pagerank: stop after this many supersteps")


# algorithms whose natural input is undirected
_UNDIRECTED = {"hashmin", "sv", "msf", "pagerank_push"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bspgraph", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run one algorithm")
    r.add_argument("algorithm", choices=ALGORITHMS)
    _add_graph_args(r)
    _add_engine_args(r)
    r.add_argument("--mirror-threshold", type=_threshold_token, default="off",
                   metavar="REAL|auto|off")
    r.add_argument("--out", default=None, help="results file ('id value' per line)")
    r.add_argument("--report", default=None, help="JSON run report")

    s = sub.add_parser("sweep", help="one run per mirroring threshold, CSV out")
    s.add_argument("algorithm", choices=ALGORITHMS)
    _add_graph_args(s)
    _add_engine_args(s)
    s.add_argument("--thresholds", default="1,10,100,1000,inf,auto")
    s.add_argument("--csv", required=True)

    g = sub.add_parser("gen", help="write a synthetic edge list")
    g.add_argument("kind", choices=("random", "powerlaw", "star", "path", "bipartite"))
    g.add_argument("--out", required=True)
    g.add_argument("-n", type=_positive, default=1000, help="vertices (leaves for star)")
    g.add_argument("-m", type=_positive, default=10, help="right side size for bipartite")
    g.add_argument("--deg-avg", type=float, default=10.0)
    g.add_argument("--max-degree", type=_positive, default=100)
    g.add_argument("--exponent", type=float, default=1.0, help="power-law skew")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--directed", action="store_true")
    g.add_argument("--connected", action="store_true")
    g.add_argument("--weighted", action="store_true")
    g.add_argument("--max-weight", type=_positive, default=1000)
    return ap


def _load(args):
    directed = args.directed
    if directed is None:
        directed = args.algorithm not in _UNDIRECTED
    weighted = args.weighted or args.algorithm in ("sssp", "msf")
    return load_edge_list(args.graph, directed=directed, weighted=weighted, id_type=args.id_type)


def _program(args):
    source = parse_vertex_id(args.source, args.id_type) if args.source is not None else None
    return make_program(args.algorithm, reqresp=args.reqresp, source=source,
                        epsilon=args.epsilon, iterations=args.iterations)


def _config(args, tau: float) -> EngineConfig:
    return EngineConfig(num_workers=args.workers, mirror_threshold=tau,
                        use_combiner=args.combiner, max_supersteps=args.max_supersteps,
                        threads=args.threads, shuffle_seed=args.seed)


def cmd_run(args) -> int:
    graph = _load(args)
    program = _program(args)
    deg_avg = degree_stats(graph)[2] if graph.num_vertices else 0.0
    label, tau, auto = parse_threshold(args.mirror_threshold, args.workers, deg_avg)
    result = run(graph, program, _config(args, tau))
    rep = result.report
    rep.extra["mirror_threshold_label"] = label
    rep.extra["mirror_threshold_auto"] = auto
    if args.out:
        result.write_results(args.out)
    if args.report:
        rep.write_json(args.report)
    summary = {"algorithm": rep.algorithm, "supersteps": rep.supersteps,
               "mirror_threshold": label if auto or label == "inf" else tau, **rep.extra}
    if auto:
        summary["mirror_threshold_value"] = tau
    print(json.dumps(summary, sort_keys=True, default=str))
    return 0


def cmd_sweep(args) -> int:
    graph = _load(args)
    tokens = [t for t in args.thresholds.split(",") if t.strip()]
    for t in tokens:
        _threshold_token(t)
    rows = sweep_thresholds(graph, lambda: _program(args), tokens, _config(args, float("inf")),
                            algorithm=args.algorithm)
    write_sweep_csv(rows, args.csv)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        g = generators.random_graph(args.n, args.deg_avg, seed=args.seed, directed=args.directed,
                                    connected=args.connected, weighted=args.weighted,
                                    max_weight=args.max_weight)
    elif args.kind == "powerlaw":
        g = generators.powerlaw_graph(args.n, args.max_degree, exponent=args.exponent,
                                      seed=args.seed, directed=args.directed)
    elif args.kind == "star":
        g = generators.star_graph(args.n, directed=args.directed)
    elif args.kind == "path":
        g = generators.path_graph(args.n, directed=args.directed)
    else:
        g = generators.complete_bipartite(args.n, args.m, directed=args.directed)
    write_edge_list(g, args.out)
    n, m, avg, mx = degree_stats(g) if g.num_vertices else (0, 0, 0.0, 0)
    print(f"wrote {args.out}: n={n} entries={m} deg_avg={avg:.3f} max_degree={mx}")
    return 0


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": cmd_run, "sweep": cmd_sweep, "gen": cmd_gen}[args.cmd]
    try:
        return handler(args)
    except (OSError, ValueError, GraphFormatError, EngineError) as exc:
        print(f"bspgraph: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
