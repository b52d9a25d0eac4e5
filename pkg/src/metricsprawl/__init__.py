"""Metric indexing with sprawls of linear ambits."""
from .ambit import LinearAmbit, ball_overlap, general_overlap, member, shell_from_bounds
from .builders import BUILDERS, BuildParams, build
from .errors import InvalidInputError, InvalidStateError
from .metrics import CountedMetric, distance
from .sprawl import SprawlGraph, ambit_search, knn_search, range_search, validate

__version__ = "0.1.0"
