"""Result tags shared by every solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Optimal:
    point: tuple
    value: Any = None
    stats: dict = field(default_factory=dict, compare=False)

    tag = "Optimal"


@dataclass(frozen=True)
class Infeasible:
    stats: dict = field(default_factory=dict, compare=False)

    tag = "Infeasible"


@dataclass(frozen=True)
class Unbounded:
    stats: dict = field(default_factory=dict, compare=False)

    tag = "Unbounded"
