"""
Reproducible random streams.

A stream is identified by (base_seed, stream_index, subkey). Each one seeds
a counter-based Philox generator through numpy's SeedSequence spawn keys,
so streams never share mutable state and any worker can rebuild any
stream from its identity alone.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple, Union

import numpy as np

from ..exceptions import InvalidArgumentError

MASK_64 = (1 << 64) - 1

RngLike = Union["RngStream", np.random.Generator]


@dataclass(frozen=True)
class RngStream:
    """
    Identity of an independent random stream.

    Equal identities give bit-identical sequences; distinct identities give
    statistically independent ones.
    """

    base_seed: int
    stream_index: int = 0
    subkey: Tuple[int, ...] = ()

    def __post_init__(self):
        try:
            seed = int(self.base_seed)
        except (TypeError, ValueError):
            raise InvalidArgumentError(f"base_seed must be an integer, got {self.base_seed!r}")
        object.__setattr__(self, "base_seed", seed & MASK_64)
        if int(self.stream_index) < 0:
            raise InvalidArgumentError(f"stream_index must be >= 0, got {self.stream_index}")
        object.__setattr__(self, "stream_index", int(self.stream_index))
        subkey = tuple(int(k) for k in self.subkey)
        if any(k < 0 for k in subkey):
            raise InvalidArgumentError(f"Substream keys must be >= 0, got {subkey}")
        object.__setattr__(self, "subkey", subkey)

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        sequence = np.random.SeedSequence(self.base_seed, spawn_key=(self.stream_index, *self.subkey))
        return np.random.Generator(np.random.Philox(sequence))

    def substream(self, key: int) -> "RngStream":
        """Child stream, independent of this one and of its other children."""
        return RngStream(self.base_seed, self.stream_index, self.subkey + (int(key),))

    def to_dict(self) -> Dict[str, Any]:
        return {"base_seed": self.base_seed, "stream_index": self.stream_index, "subkey": list(self.subkey)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RngStream":
        return cls(data["base_seed"], data.get("stream_index", 0), tuple(data.get("subkey", ())))


def resolve_generator(rng: RngLike) -> np.random.Generator:
    """
    Accept either a stream or an already running generator.

    Samplers take both: a stream restarts from its beginning on every call,
    a generator continues where it stands (used when one constructor draws
    many pieces in sequence).
    """
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise InvalidArgumentError(f"Expected an RngStream or numpy Generator, got {type(rng).__name__}")
