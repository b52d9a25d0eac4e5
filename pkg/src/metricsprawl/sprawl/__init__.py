from .graph import PivotTable, Region, SprawlGraph
from .io import dumps, load, loads, save
from .search import SearchReport, ambit_search, knn_search, range_search
from .state import TraversalState, eliminate, reset
from .validate import ValidationReport, validate

__all__ = [
    "PivotTable", "Region", "SprawlGraph", "SearchReport", "TraversalState", "ValidationReport",
    "ambit_search", "dumps", "eliminate", "knn_search", "load", "loads", "range_search", "reset",
    "save", "validate",
]
