"""In-process BSP graph engine with combiner, mirroring and request/respond channels."""
from .engine import (Aggregator, Engine, EngineConfig, EngineError, RunResult,
                     SuperstepLimitExceeded, VertexProgram, and_aggregator, or_aggregator,
                     run, sum_aggregator)
from .graph import Edge, Graph, GraphFormatError, load_edge_list, partition, write_edge_list
from .metrics import RunReport, WorkerStats, imbalance, per_worker_totals
from .mirror import compute_threshold

__all__ = [
    "Aggregator", "Engine", "EngineConfig", "EngineError", "RunResult",
    "SuperstepLimitExceeded", "VertexProgram", "and_aggregator", "or_aggregator", "run",
    "sum_aggregator", "Edge", "Graph", "GraphFormatError", "load_edge_list", "partition",
    "write_edge_list", "RunReport", "WorkerStats", "imbalance", "per_worker_totals",
    "compute_threshold",
]
