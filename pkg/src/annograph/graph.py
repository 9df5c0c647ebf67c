"""Annotation graphs: labeled acyclic digraphs over timelines.

A graph holds nodes that may carry a time offset on a timeline, arcs
labeled with a type string and structured content, and descriptors for
the signals being annotated. Offsets are exact decimals so values read
from a document serialize back with their original digits.

Mutating operations either preserve the model invariants (acyclic, no
degree-zero nodes, offsets non-decreasing along same-timeline paths) or
raise without changing the graph. ``validate`` re-checks everything and
is the only entry point that tolerates corrupt graphs, since imported
documents can be arbitrarily broken.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Iterator

from . import validation
from .content import Content, FeatureSet, as_content, iter_xrefs
from .errors import (
    CycleIntroducedError,
    DuplicateIdError,
    NotMergeableError,
    TimeOrderViolationError,
    UnknownArcError,
    UnknownNodeError,
    UnknownTimelineError,
)

Offset = Decimal


def as_offset(value: int | str | Decimal) -> Decimal:
    """Coerce an offset to an exact Decimal.

    Accepts int, str, and Decimal. Floats are rejected outright: binary
    floats cannot hold values like 382.520 exactly, and offsets must
    survive serialization with their original digits.
    """
    if isinstance(value, bool):
        raise TypeError("offset must be an int, str, or Decimal, not bool")
    if isinstance(value, Decimal):
        dec = value
    elif isinstance(value, int):
        dec = Decimal(value)
    elif isinstance(value, str):
        try:
            dec = Decimal(value)
        except InvalidOperation:
            raise ValueError(f"not a decimal offset: {value!r}") from None
    elif isinstance(value, float):
        raise TypeError(
            f"offset {value!r} is a float; pass a string or Decimal to keep it exact"
        )
    else:
        raise TypeError(f"offset must be an int, str, or Decimal, got {type(value).__name__}")
    if not dec.is_finite():
        raise ValueError(f"offset must be finite, got {dec}")
    return dec


@dataclass
class Timeline:
    """A coordinate system shared by signals; offsets within it are comparable."""

    id: str
    unit_names: list[str] = field(default_factory=lambda: [""])

    @property
    def dimensionality(self) -> int:
        return len(self.unit_names)

    @property
    def unit(self) -> str:
        """Unit of the first (for graphs: only) dimension."""
        return self.unit_names[0]


@dataclass
class Node:
    id: str
    timeline: str
    offset: Offset | None = None

    @property
    def anchored(self) -> bool:
        return self.offset is not None


@dataclass
class Arc:
    id: str
    start: str
    end: str
    arc_type: str
    content: Content = field(default_factory=FeatureSet)


@dataclass
class SignalDescriptor:
    """Metadata about an annotated signal.

    The location is an opaque reference; nothing here ever opens it.
    Optional attributes are kept verbatim for round-tripping.
    """

    id: str
    format: str = ""
    location: str = ""
    arc_types: str | None = None
    signal_class: str | None = None
    encoding: str | None = None
    comment: str | None = None


class AnnotationGraph:
    """Mutable annotation graph.

    Single-writer value: mutate from one thread at a time; any number
    of threads may read a graph that is not being mutated.
    """

    def __init__(self) -> None:
        self.timelines: dict[str, Timeline] = {}
        self.nodes: dict[str, Node] = {}
        self.arcs: dict[str, Arc] = {}
        self.signals: dict[str, SignalDescriptor] = {}
        self._next_id = 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnotationGraph):
            return NotImplemented
        return (
            self.timelines == other.timelines
            and self.nodes == other.nodes
            and self.arcs == other.arcs
            and self.signals == other.signals
        )

    def __repr__(self) -> str:
        return (
            f"<AnnotationGraph {len(self.timelines)} timelines, "
            f"{len(self.nodes)} nodes, {len(self.arcs)} arcs>"
        )

    # -- id allocation ----------------------------------------------------

    def fresh_id(self) -> str:
        """Return an id of the form g<counter> unused by any element."""
        while True:
            ident = f"g{self._next_id}"
            self._next_id += 1
            if not self._id_taken(ident):
                return ident

    def _id_taken(self, ident: str) -> bool:
        return (
            ident in self.nodes
            or ident in self.arcs
            or ident in self.timelines
            or ident in self.signals
        )

    # -- construction ------------------------------------------------------

    def add_timeline(
        self, timeline_id: str | None = None, unit_names: Iterable[str] | None = None
    ) -> str:
        ident = self.fresh_id() if timeline_id is None else timeline_id
        if ident in self.timelines:
            raise DuplicateIdError("timeline", ident)
        units = list(unit_names) if unit_names is not None else [""]
        if not units:
            raise ValueError("a timeline needs at least one unit name")
        self.timelines[ident] = Timeline(ident, units)
        return ident

    def add_signal(self, descriptor: SignalDescriptor) -> str:
        if descriptor.id in self.signals:
            raise DuplicateIdError("signal", descriptor.id)
        self.signals[descriptor.id] = descriptor
        return descriptor.id

    def add_node(
        self,
        timeline_id: str,
        offset: int | str | Decimal | None = None,
        node_id: str | None = None,
    ) -> str:
        if timeline_id not in self.timelines:
            raise UnknownTimelineError(timeline_id)
        ident = self.fresh_id() if node_id is None else node_id
        if ident in self.nodes:
            raise DuplicateIdError("node", ident)
        value = None if offset is None else as_offset(offset)
        self.nodes[ident] = Node(ident, timeline_id, value)
        return ident

    # -- operations --------------------------------------------------------

    def insert_arc(
        self,
        start: str,
        end: str,
        arc_type: str,
        content: Content | str | None = None,
        arc_id: str | None = None,
    ) -> str:
        """Insert an arc from start to end, rejecting it atomically if it
        would create a cycle or connect anchored same-timeline nodes with
        decreasing offsets."""
        if start not in self.nodes:
            raise UnknownNodeError(start)
        if end not in self.nodes:
            raise UnknownNodeError(end)
        if arc_id is not None and self._id_taken(arc_id):
            raise DuplicateIdError("arc", arc_id)
        if start == end:
            raise CycleIntroducedError(f"arc {start} -> {end} is a self-loop")
        if self._reaches(end, start):
            raise CycleIntroducedError(
                f"arc {start} -> {end} closes a cycle: {end} already reaches {start}"
            )
        self._check_time_order(start, end)
        payload = FeatureSet() if content is None else as_content(content)
        ident = self.fresh_id() if arc_id is None else arc_id
        self.arcs[ident] = Arc(ident, start, end, arc_type, payload)
        return ident

    def split_arc(self, arc_id: str) -> tuple[str, str, str]:
        """Replace an arc with a two-arc path through a fresh unanchored node.

        Returns (first arc id, second arc id, middle node id). The first
        arc keeps the original content; the second starts empty. Both
        carry the original type.
        """
        if arc_id not in self.arcs:
            raise UnknownArcError(arc_id)
        arc = self.arcs.pop(arc_id)
        mid = self.fresh_id()
        first = self.fresh_id()
        second = self.fresh_id()
        # Same timeline as the start node; no offset, so path-level
        # monotonicity is untouched and acyclicity is preserved.
        self.nodes[mid] = Node(mid, self.nodes[arc.start].timeline, None)
        self.arcs[first] = Arc(first, arc.start, mid, arc.arc_type, arc.content)
        self.arcs[second] = Arc(second, mid, arc.end, arc.arc_type, FeatureSet())
        return first, second, mid

    def anchor_node(self, node_id: str, offset: int | str | Decimal | None) -> None:
        """Set (or with None, clear) a node's offset.

        Rejected atomically when any anchored same-timeline ancestor
        would sit after the new value, or any such descendant before it.
        """
        if node_id not in self.nodes:
            raise UnknownNodeError(node_id)
        node = self.nodes[node_id]
        if offset is None:
            node.offset = None
            return
        value = as_offset(offset)
        for other_id in sorted(self._ancestors(node_id)):
            other = self.nodes[other_id]
            if other.anchored and other.timeline == node.timeline and other.offset > value:
                raise TimeOrderViolationError(
                    other_id,
                    node_id,
                    f"ancestor at offset {other.offset} > proposed {value}",
                )
        for other_id in sorted(self._descendants(node_id)):
            other = self.nodes[other_id]
            if other.anchored and other.timeline == node.timeline and other.offset < value:
                raise TimeOrderViolationError(
                    node_id,
                    other_id,
                    f"descendant at offset {other.offset} < proposed {value}",
                )
        node.offset = value

    def remove_arc(self, arc_id: str) -> None:
        """Remove an arc; endpoints left with degree zero go with it."""
        if arc_id not in self.arcs:
            raise UnknownArcError(arc_id)
        arc = self.arcs.pop(arc_id)
        for node_id in (arc.start, arc.end):
            if node_id in self.nodes and self._degree(node_id) == 0:
                del self.nodes[node_id]

    def merge_arcs(self, first_id: str, second_id: str) -> str:
        """Fuse two adjacent same-type arcs into one, the inverse of split_arc.

        The interior node must belong to exactly these two arcs. The
        merged arc keeps the first arc's content and gets a fresh id.
        """
        if first_id not in self.arcs:
            raise UnknownArcError(first_id)
        if second_id not in self.arcs:
            raise UnknownArcError(second_id)
        first = self.arcs[first_id]
        second = self.arcs[second_id]
        if first.end != second.start:
            raise NotMergeableError(
                f"arcs {first_id} and {second_id} do not share an interior node"
            )
        if first.arc_type != second.arc_type:
            raise NotMergeableError(
                f"arc types differ: {first.arc_type!r} vs {second.arc_type!r}"
            )
        if first.start == second.end:
            raise NotMergeableError("merging would produce a self-loop")
        interior = first.end
        if self._degree(interior) != 2:
            raise NotMergeableError(
                f"interior node {interior} has arcs besides {first_id} and {second_id}"
            )
        del self.arcs[first_id]
        del self.arcs[second_id]
        del self.nodes[interior]
        merged = self.fresh_id()
        self.arcs[merged] = Arc(merged, first.start, second.end, first.arc_type, first.content)
        return merged

    # -- validation ----------------------------------------------------------

    def validate(self) -> validation.ValidationReport:
        """Check every model invariant; never raises.

        Covers cycles, degree-zero nodes, offset order along paths, and
        dangling references (node -> timeline, arc -> node, content
        xref -> arc). Works on corrupt graphs, e.g. hand-built ones
        whose arcs name missing nodes.
        """
        report = validation.ValidationReport()
        self._find_cycles(report)
        for node_id in self.nodes:
            if self._degree(node_id) == 0:
                report.add(validation.ORPHAN_NODE, node_id, detail="degree zero")
        self._find_time_order_violations(report)
        self._find_dangling(report)
        return report.sort()

    def _find_cycles(self, report: validation.ValidationReport) -> None:
        for arc in self.arcs.values():
            if arc.start == arc.end and arc.start in self.nodes:
                report.add(validation.CYCLE, arc.start, detail=f"self-loop arc {arc.id}")
        for component in self._strongly_connected():
            if len(component) > 1:
                report.add(validation.CYCLE, *sorted(component))

    def _strongly_connected(self) -> list[set[str]]:
        """Kosaraju's algorithm, iterative so deep chains cannot overflow."""
        forward = self._adjacency()
        reverse: dict[str, list[str]] = {node_id: [] for node_id in self.nodes}
        for src, targets in forward.items():
            for dst in targets:
                reverse[dst].append(src)

        finished: list[str] = []
        seen: set[str] = set()
        for root in self.nodes:
            if root in seen:
                continue
            stack: list[tuple[str, Iterator[str]]] = [(root, iter(forward[root]))]
            seen.add(root)
            while stack:
                node_id, children = stack[-1]
                advanced = False
                for child in children:
                    if child not in seen:
                        seen.add(child)
                        stack.append((child, iter(forward[child])))
                        advanced = True
                        break
                if not advanced:
                    finished.append(node_id)
                    stack.pop()

        components: list[set[str]] = []
        assigned: set[str] = set()
        for root in reversed(finished):
            if root in assigned:
                continue
            component = {root}
            assigned.add(root)
            queue = deque([root])
            while queue:
                node_id = queue.popleft()
                for prev in reverse[node_id]:
                    if prev not in assigned:
                        assigned.add(prev)
                        component.add(prev)
                        queue.append(prev)
            components.append(component)
        return components

    def _find_time_order_violations(self, report: validation.ValidationReport) -> None:
        for node_id in sorted(self.nodes):
            node = self.nodes[node_id]
            if not node.anchored:
                continue
            for other_id in sorted(self._descendants(node_id)):
                other = self.nodes[other_id]
                if (
                    other.anchored
                    and other.timeline == node.timeline
                    and node.offset > other.offset
                ):
                    report.add(
                        validation.TIME_ORDER,
                        node_id,
                        other_id,
                        detail=f"offsets {node.offset} > {other.offset}",
                    )

    def _find_dangling(self, report: validation.ValidationReport) -> None:
        for node in self.nodes.values():
            if node.timeline not in self.timelines:
                report.add(
                    validation.DANGLING_REFERENCE,
                    node.id,
                    node.timeline,
                    detail="unknown timeline",
                )
        for arc in self.arcs.values():
            for node_id in (arc.start, arc.end):
                if node_id not in self.nodes:
                    report.add(
                        validation.DANGLING_REFERENCE, arc.id, node_id, detail="unknown node"
                    )
        for arc_id, target in dangling_xrefs(self):
            report.add(
                validation.DANGLING_REFERENCE, arc_id, target, detail="xref target not found"
            )

    # -- reachability helpers ------------------------------------------------

    def _adjacency(self, forward: bool = True) -> dict[str, list[str]]:
        adjacency: dict[str, list[str]] = {node_id: [] for node_id in self.nodes}
        for arc in self.arcs.values():
            if arc.start in self.nodes and arc.end in self.nodes:
                if forward:
                    adjacency[arc.start].append(arc.end)
                else:
                    adjacency[arc.end].append(arc.start)
        return adjacency

    def _walk(self, start: str, adjacency: dict[str, list[str]]) -> set[str]:
        reached: set[str] = set()
        queue = deque(adjacency.get(start, ()))
        while queue:
            node_id = queue.popleft()
            if node_id in reached:
                continue
            reached.add(node_id)
            queue.extend(adjacency.get(node_id, ()))
        return reached

    def _descendants(self, node_id: str) -> set[str]:
        """Nodes reachable from node_id; excludes node_id unless on a cycle."""
        return self._walk(node_id, self._adjacency())

    def _ancestors(self, node_id: str) -> set[str]:
        return self._walk(node_id, self._adjacency(forward=False))

    def _reaches(self, src: str, dst: str) -> bool:
        return dst == src or dst in self._descendants(src)

    def _degree(self, node_id: str) -> int:
        return sum(
            (arc.start == node_id) + (arc.end == node_id) for arc in self.arcs.values()
        )

    def _check_time_order(self, start: str, end: str) -> None:
        """Reject a prospective start->end arc if it would order two anchored
        same-timeline nodes against their offsets."""
        before = self._ancestors(start)
        before.add(start)
        after = self._descendants(end)
        after.add(end)
        for u_id in sorted(before):
            u = self.nodes[u_id]
            if not u.anchored:
                continue
            for v_id in sorted(after):
                v = self.nodes[v_id]
                if v.anchored and v.timeline == u.timeline and u.offset > v.offset:
                    raise TimeOrderViolationError(
                        u_id,
                        v_id,
                        f"offsets {u.offset} > {v.offset} on timeline {u.timeline}",
                    )


def dangling_xrefs(graph: AnnotationGraph) -> Iterator[tuple[str, str]]:
    """Yield (arc id, target) for every content xref naming a missing arc."""
    for arc_id in sorted(graph.arcs):
        for target in iter_xrefs(graph.arcs[arc_id].content):
            if target not in graph.arcs:
                yield arc_id, target
