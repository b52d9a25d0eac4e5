"""Datasets, workloads, oracle verification and benchmark reports."""
from .bench import BenchRecord, IndexSpec, parse_index_specs, run_bench
from .data import Dataset, generate, load_dataset
from .oracle import oracle
from .report import emit_report, parse_report, summarize
from .workload import AmbitQuery, KnnQuery, RangeQuery, Workload, make_workload

__all__ = [
    "AmbitQuery", "BenchRecord", "Dataset", "IndexSpec", "KnnQuery", "RangeQuery", "Workload",
    "emit_report", "generate", "load_dataset", "make_workload", "oracle", "parse_index_specs",
    "parse_report", "run_bench", "summarize",
]
