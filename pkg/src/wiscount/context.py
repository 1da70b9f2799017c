"""Per-run configuration shared by the counting drivers.

A :class:`RunContext` carries the permanent engine choice, the root seed
from which every randomised call derives its own seed, and a trace of what
the pipeline did.  Drivers accept either a context or a bare engine name.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from .errors import InputError

ENGINES = ("exact", "mcmc")


@dataclass
class RunContext:
    engine: str = "exact"
    seed: int = 0
    exact_cap: int = 22
    mcmc_budget: int = 2_000_000
    trace: Counter = field(default_factory=Counter)
    _calls: int = 0

    def __post_init__(self) -> None:
        if self.engine not in ENGINES:
            raise InputError(f"unknown engine {self.engine!r}; choose from {ENGINES}")

    def next_seed(self) -> int:
        """A fresh 64-bit seed, a pure function of the root seed and call index."""
        self._calls += 1
        digest = hashlib.blake2b(f"{self.seed}:{self._calls}".encode(), digest_size=8).digest()
        return int.from_bytes(digest, "big")


EngineLike = Union[str, RunContext, None]


def as_context(engine: EngineLike, seed: int = 0) -> RunContext:
    if isinstance(engine, RunContext):
        return engine
    return RunContext(engine=engine or "exact", seed=seed)
