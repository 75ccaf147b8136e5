"""Run-time budgets and the command-line run configuration."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Optional

from .errors import ParseError

ENV_DEPTH_BUDGET = "ERGOALG_DEPTH_BUDGET"


@dataclass(frozen=True)
class Budget:
    """Limits on work that could otherwise run away.

    ``symbolic_nodes`` caps the size of composed/conjugated map trees,
    ``refine_depth`` caps the digit depth reached when narrowing a distance
    enclosure, ``expansion_digits`` caps lazy odometer expansion and
    ``tower_window`` caps the coordinate window of Bernoulli tower bases and
    the number of cells of an odometer tower.
    """

    symbolic_nodes: int = 64
    refine_depth: int = 64
    expansion_digits: int = 4096
    tower_window: int = 1 << 13

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValueError(f"budget {f.name} must be positive")

    @classmethod
    def from_env(cls, environ=None) -> "Budget":
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_DEPTH_BUDGET)
        if raw is None:
            return cls()
        try:
            depth = int(raw)
        except ValueError:
            raise ParseError(f"{ENV_DEPTH_BUDGET} must be an integer, got {raw!r}")
        if depth < 1:
            raise ParseError(f"{ENV_DEPTH_BUDGET} must be positive")
        return cls(symbolic_nodes=depth, refine_depth=depth)

    def with_depth(self, depth: int) -> "Budget":
        return replace(self, symbolic_nodes=depth, refine_depth=depth)


DEFAULT_BUDGET = Budget()


def resolve_budget(budget: Optional[Budget]) -> Budget:
    return DEFAULT_BUDGET if budget is None else budget


COMMANDS = (
    "tower", "witness", "cycle-approx", "conjugate", "entropy", "h-seq",
    "distance", "independent", "decompose", "product", "cb",
)
FORMATS = ("json", "csv", "table")


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one CLI invocation."""

    command: str
    inputs: dict = field(default_factory=dict)
    output_format: str = "json"
    precision: int = 53
    depth_budget: int = 64
    eps: Optional[Fraction] = None
    N: Optional[int] = None
    n: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ParseError(f"unknown format {self.output_format!r}")
        if not 53 <= self.precision <= 4096:
            raise ParseError("precision must lie in [53, 4096] bits")
        if not 1 <= self.depth_budget <= 1 << 16:
            raise ParseError("depth budget must lie in [1, 65536]")
        if self.eps is not None and not 0 <= self.eps <= 1:
            raise ParseError("eps must lie in [0, 1]")
        if self.N is not None and self.N < 1:
            raise ParseError("-N must be positive")
        if self.n is not None and self.n < 1:
            raise ParseError("-n must be positive")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParseError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @property
    def budget(self) -> Budget:
        return DEFAULT_BUDGET.with_depth(self.depth_budget)
