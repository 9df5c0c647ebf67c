"""Validation reports shared by the graph and set models.

A report is a list of violations; an empty report means the checked
value is well formed. Reports are sorted before being returned so that
equal inputs always produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

# violation kinds used by graph validation
CYCLE = "Cycle"
ORPHAN_NODE = "OrphanNode"
TIME_ORDER = "TimeOrderViolation"
DANGLING_REFERENCE = "DanglingReference"

# additional kinds used by set validation
UNKNOWN_ANCHOR = "UnknownAnchor"
DIMENSION_MISMATCH = "DimensionMismatch"
REVERSED_INTERVAL = "ReversedInterval"
SIGNAL_GROUP_MISMATCH = "SignalGroupMismatch"


@dataclass(frozen=True, order=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    detail: str = ""

    def line(self) -> str:
        """Render as a single diagnostic line: ``KIND id[,id] detail``."""
        return f"{self.kind} {','.join(self.ids)} {self.detail}".rstrip()


@dataclass
class ValidationReport:
    """Ordered collection of violations; falsy when empty."""

    violations: list[Violation] = field(default_factory=list)

    def add(self, kind: str, *ids: str, detail: str = "") -> None:
        self.violations.append(Violation(kind, tuple(ids), detail))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def sort(self) -> "ValidationReport":
        self.violations.sort()
        return self

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def lines(self) -> list[str]:
        return [v.line() for v in self.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)
