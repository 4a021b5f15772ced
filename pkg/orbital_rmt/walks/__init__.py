"""
Self-avoiding-walk representation of resolvent blocks.
"""

from .expansion import one_step_identity, require_nearest_neighbor, walk_expansion_resolvent
from .saw import SAWalk, enumerate_sa_walks, neighbor_table

__all__ = [
    "one_step_identity",
    "require_nearest_neighbor",
    "walk_expansion_resolvent",
    "SAWalk",
    "enumerate_sa_walks",
    "neighbor_table",
]
