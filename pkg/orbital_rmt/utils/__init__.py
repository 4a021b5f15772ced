"""
Shared utilities: logging setup and deterministic parallel map-reduce.
"""

from .logging import SUCCESS_LEVEL, get_logger, setup_logging
from .parallel import ordered_map, resolve_workers, tree_reduce

__all__ = [
    "SUCCESS_LEVEL",
    "get_logger",
    "setup_logging",
    "ordered_map",
    "resolve_workers",
    "tree_reduce",
]
