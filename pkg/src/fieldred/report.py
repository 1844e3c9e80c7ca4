"""Claim records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["Claim", "Report", "plain"]


def plain(x: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to JSON-friendly values."""
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return [plain(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    return x


@dataclass
class Claim:
    anchor: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return plain(self.expected) == plain(self.computed)

    def as_dict(self) -> dict:
        return {
            "anchor": self.anchor,
            "expected": plain(self.expected),
            "computed": plain(self.computed),
            "pass": self.passed,
        }


@dataclass
class Report:
    claims: list[Claim] = field(default_factory=list)

    def add(self, anchor: str, expected: Any, computed: Any) -> Claim:
        c = Claim(anchor, expected, computed)
        self.claims.append(c)
        return c

    def check(self, anchor: str, ok: bool) -> Claim:
        return self.add(anchor, True, bool(ok))

    def extend(self, other: "Report") -> None:
        self.claims.extend(other.claims)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def __iter__(self):
        return iter(self.claims)

    def __len__(self) -> int:
        return len(self.claims)
