"""Annotation sets: the n-dimensional generalization of annotation graphs.

Where a graph ties nodes to a single timeline offset, a set places
anchors in the coordinate space of a signal group (one unit name per
dimension) and relates regions spanned by those anchors to structured
labels. Anchors are shared by reference: moving one moves every region
built on it.

The linear case reduces to a graph and back via from_graph/to_graph at
the bottom of this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from decimal import Decimal
from enum import Enum
from typing import Iterable, Sequence

from . import validation
from .content import Content, FeatureSet, Literal, Xref, as_content, copy_content, iter_xrefs
from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    InvalidGraphError,
    SignalGroupMismatchError,
    UnknownAnchorError,
    UnknownAnnotationError,
    UnknownSignalGroupError,
    UnsupportedRegionKindError,
)
from .graph import AnnotationGraph, Arc, Node, SignalDescriptor, Timeline, as_offset


class RegionKind(str, Enum):
    INTERVAL = "interval"
    BOX = "box"
    POLYGON = "polygon"
    POLYTOPE = "polytope"


@dataclass
class SignalGroup:
    """Signals sharing one coordinate system; generalizes a timeline."""

    id: str
    unit_names: list[str] = field(default_factory=lambda: [""])
    signals: set[str] = field(default_factory=set)

    @property
    def dimensionality(self) -> int:
        return len(self.unit_names)


@dataclass
class Anchor:
    """An identified point in a signal group's space, shareable by regions.

    Offsets may be absent (an anchor whose position is not yet known);
    when present the vector length equals the group's dimensionality.
    """

    id: str
    signal_group: str
    offsets: tuple[Decimal, ...] | None = None

    @property
    def anchored(self) -> bool:
        return self.offsets is not None


@dataclass
class Region:
    """An ordered tuple of anchors delimiting an extent of signal.

    The kind is stored explicitly rather than inferred: two anchors in
    2-space could be box corners or a degenerate polygon.
    """

    anchors: list[str]
    kind: RegionKind = RegionKind.INTERVAL


@dataclass
class Annotation:
    id: str | None
    ann_type: str
    region: Region
    content: Content = field(default_factory=FeatureSet)


class AnnotationSet:
    """Mutable collection of annotations over shared anchors.

    Same concurrency contract as graphs: one writer at a time, any
    number of readers between mutations.
    """

    def __init__(self, set_id: str = "") -> None:
        self.id = set_id
        self.signal_groups: dict[str, SignalGroup] = {}
        self.anchors: dict[str, Anchor] = {}
        self.annotations: dict[str, Annotation] = {}
        self.signals: dict[str, SignalDescriptor] = {}
        self._next_id = 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnotationSet):
            return NotImplemented
        return (
            self.id == other.id
            and self.signal_groups == other.signal_groups
            and self.anchors == other.anchors
            and self.annotations == other.annotations
            and self.signals == other.signals
        )

    def __repr__(self) -> str:
        return (
            f"<AnnotationSet {self.id!r}: {len(self.anchors)} anchors, "
            f"{len(self.annotations)} annotations>"
        )

    def fresh_id(self) -> str:
        while True:
            ident = f"g{self._next_id}"
            self._next_id += 1
            if not self._id_taken(ident):
                return ident

    def _id_taken(self, ident: str) -> bool:
        return (
            ident in self.anchors
            or ident in self.annotations
            or ident in self.signal_groups
            or ident in self.signals
        )

    # -- construction ------------------------------------------------------

    def add_signal_group(
        self,
        group_id: str | None = None,
        unit_names: Iterable[str] | None = None,
        signals: Iterable[str] | None = None,
    ) -> str:
        ident = self.fresh_id() if group_id is None else group_id
        if ident in self.signal_groups:
            raise DuplicateIdError("signal group", ident)
        units = list(unit_names) if unit_names is not None else [""]
        if not units:
            raise ValueError("a signal group needs at least one unit name")
        self.signal_groups[ident] = SignalGroup(ident, units, set(signals or ()))
        return ident

    def add_signal(self, descriptor: SignalDescriptor) -> str:
        if descriptor.id in self.signals:
            raise DuplicateIdError("signal", descriptor.id)
        self.signals[descriptor.id] = descriptor
        return descriptor.id

    def add_anchor(
        self,
        group_id: str,
        offsets: Sequence[int | str | Decimal] | None = None,
        anchor_id: str | None = None,
    ) -> str:
        if group_id not in self.signal_groups:
            raise UnknownSignalGroupError(group_id)
        ident = self.fresh_id() if anchor_id is None else anchor_id
        if ident in self.anchors:
            raise DuplicateIdError("anchor", ident)
        vector = None if offsets is None else self._as_vector(group_id, offsets)
        self.anchors[ident] = Anchor(ident, group_id, vector)
        return ident

    def _as_vector(
        self, group_id: str, offsets: Sequence[int | str | Decimal]
    ) -> tuple[Decimal, ...]:
        vector = tuple(as_offset(v) for v in offsets)
        expected = self.signal_groups[group_id].dimensionality
        if len(vector) != expected:
            raise DimensionMismatchError(expected, len(vector), f"offsets for group {group_id}")
        return vector

    # -- the twelve-method surface ------------------------------------------

    def set_anchor_offset(
        self, anchor_id: str, offsets: Sequence[int | str | Decimal] | None
    ) -> None:
        """Move an anchor; every region referencing it sees the new value."""
        if anchor_id not in self.anchors:
            raise UnknownAnchorError(anchor_id)
        anchor = self.anchors[anchor_id]
        if offsets is None:
            anchor.offsets = None
            return
        if anchor.signal_group not in self.signal_groups:
            raise UnknownSignalGroupError(anchor.signal_group)
        anchor.offsets = self._as_vector(anchor.signal_group, offsets)

    def get_incoming(self, anchor_id: str) -> list[str]:
        """Annotations whose region ends (last anchor) at this anchor."""
        if anchor_id not in self.anchors:
            raise UnknownAnchorError(anchor_id)
        return sorted(
            ann.id
            for ann in self.annotations.values()
            if ann.region.anchors and ann.region.anchors[-1] == anchor_id
        )

    def get_outgoing(self, anchor_id: str) -> list[str]:
        """Annotations whose region starts (first anchor) at this anchor."""
        if anchor_id not in self.anchors:
            raise UnknownAnchorError(anchor_id)
        return sorted(
            ann.id
            for ann in self.annotations.values()
            if ann.region.anchors and ann.region.anchors[0] == anchor_id
        )

    def get_start(self, ann_id: str) -> str:
        if ann_id not in self.annotations:
            raise UnknownAnnotationError(ann_id)
        return self.annotations[ann_id].region.anchors[0]

    def set_start(self, ann_id: str, anchor_id: str) -> None:
        if ann_id not in self.annotations:
            raise UnknownAnnotationError(ann_id)
        if anchor_id not in self.anchors:
            raise UnknownAnchorError(anchor_id)
        region = self.annotations[ann_id].region
        new_group = self.anchors[anchor_id].signal_group
        current_group = self._region_group(region)
        if current_group is not None and new_group != current_group:
            raise SignalGroupMismatchError(
                f"anchor {anchor_id} lies in group {new_group}, region in {current_group}"
            )
        region.anchors[0] = anchor_id

    def set_feature(self, ann_id: str, feature: str, value: Content | str) -> None:
        """Set a feature on the annotation's content, replacing any existing
        pair of that name. Literal or xref content is first wrapped into a
        feature set under the reserved name "_content"."""
        if ann_id not in self.annotations:
            raise UnknownAnnotationError(ann_id)
        ann = self.annotations[ann_id]
        if isinstance(ann.content, (Literal, Xref)):
            ann.content = FeatureSet([("_content", ann.content)])
        ann.content.set(feature, as_content(value))

    def add_annotation(self, annotation: Annotation) -> str:
        """Store an annotation; assigns a fresh id when annotation.id is None."""
        for anchor_id in annotation.region.anchors:
            if anchor_id not in self.anchors:
                raise UnknownAnchorError(anchor_id)
        if annotation.id is None:
            annotation.id = self.fresh_id()
        elif annotation.id in self.annotations:
            raise DuplicateIdError("annotation", annotation.id)
        self.annotations[annotation.id] = annotation
        return annotation.id

    def split_annotation(self, ann_id: str) -> tuple[str, str, str]:
        """Split an interval annotation into two adjacent ones sharing a
        fresh unanchored anchor. Returns (first id, second id, anchor id);
        content stays on the first, both copy the original type."""
        if ann_id not in self.annotations:
            raise UnknownAnnotationError(ann_id)
        ann = self.annotations[ann_id]
        if ann.region.kind is not RegionKind.INTERVAL:
            raise UnsupportedRegionKindError(
                f"cannot split a {ann.region.kind.value} region, only intervals"
            )
        start_id, end_id = ann.region.anchors[0], ann.region.anchors[-1]
        group = self.anchors[start_id].signal_group
        del self.annotations[ann_id]
        mid = self.fresh_id()
        first = self.fresh_id()
        second = self.fresh_id()
        self.anchors[mid] = Anchor(mid, group, None)
        self.annotations[first] = Annotation(
            first, ann.ann_type, Region([start_id, mid], RegionKind.INTERVAL), ann.content
        )
        self.annotations[second] = Annotation(
            second, ann.ann_type, Region([mid, end_id], RegionKind.INTERVAL), FeatureSet()
        )
        return first, second, mid

    def remove_annotation(self, ann_id: str) -> None:
        """Remove an annotation; its anchors go too when nothing else uses them."""
        if ann_id not in self.annotations:
            raise UnknownAnnotationError(ann_id)
        removed = self.annotations.pop(ann_id)
        for anchor_id in set(removed.region.anchors):
            still_used = any(
                anchor_id in ann.region.anchors for ann in self.annotations.values()
            )
            if not still_used and anchor_id in self.anchors:
                del self.anchors[anchor_id]

    def anchors_at_offset(self, offsets: Sequence[int | str | Decimal]) -> list[str]:
        """Anchors whose offset vector equals the argument exactly."""
        vector = tuple(as_offset(v) for v in offsets)
        return sorted(a.id for a in self.anchors.values() if a.offsets == vector)

    def by_type(self, ann_type: str) -> list[str]:
        return sorted(a.id for a in self.annotations.values() if a.ann_type == ann_type)

    def by_feature(self, feature: str, value: Content | str) -> list[str]:
        """Annotations whose content carries a pair (feature, value).

        Matches top-level pairs of feature-set content; literal and xref
        content has no pairs and never matches.
        """
        wanted = as_content(value)
        found = []
        for ann in self.annotations.values():
            if isinstance(ann.content, FeatureSet) and any(
                name == feature and val == wanted for name, val in ann.content.pairs
            ):
                found.append(ann.id)
        return sorted(found)

    def by_signal_group(self, group_id: str) -> list[str]:
        """Annotations whose region lies in the given signal group.

        This is the timeline query of the linear API; signal groups play
        the timeline role here.
        """
        return sorted(
            ann.id
            for ann in self.annotations.values()
            if self._region_group(ann.region) == group_id
        )

    def _region_group(self, region: Region) -> str | None:
        for anchor_id in region.anchors:
            anchor = self.anchors.get(anchor_id)
            if anchor is not None:
                return anchor.signal_group
        return None

    # -- validation ----------------------------------------------------------

    def validate(self) -> validation.ValidationReport:
        """Check set-level invariants; never raises.

        Reports unknown anchor references, dimensionality and arity
        mismatches, regions mixing signal groups, dangling xrefs, and
        reversed intervals (start offset after end offset).
        """
        report = validation.ValidationReport()
        for anchor in self.anchors.values():
            group = self.signal_groups.get(anchor.signal_group)
            if group is None:
                report.add(
                    validation.DANGLING_REFERENCE,
                    anchor.id,
                    anchor.signal_group,
                    detail="unknown signal group",
                )
            elif anchor.offsets is not None and len(anchor.offsets) != group.dimensionality:
                report.add(
                    validation.DIMENSION_MISMATCH,
                    anchor.id,
                    detail=f"{len(anchor.offsets)} offsets in {group.dimensionality}-D group",
                )
        for ann_id in sorted(self.annotations):
            self._validate_annotation(self.annotations[ann_id], report)
        return report.sort()

    def _validate_annotation(
        self, ann: Annotation, report: validation.ValidationReport
    ) -> None:
        region = ann.region
        missing = False
        for anchor_id in region.anchors:
            if anchor_id not in self.anchors:
                report.add(validation.UNKNOWN_ANCHOR, ann.id, anchor_id)
                missing = True
        for target in iter_xrefs(ann.content):
            if target not in self.annotations:
                report.add(
                    validation.DANGLING_REFERENCE,
                    ann.id,
                    target,
                    detail="xref target not found",
                )
        if len(region.anchors) < 2:
            report.add(
                validation.DIMENSION_MISMATCH,
                ann.id,
                detail=f"region has {len(region.anchors)} anchors, needs at least 2",
            )
            return
        if missing:
            return
        self._validate_region_shape(ann, report)

    def _validate_region_shape(
        self, ann: Annotation, report: validation.ValidationReport
    ) -> None:
        region = ann.region
        count = len(region.anchors)
        groups = [self.anchors[a].signal_group for a in region.anchors]
        dims = [
            g.dimensionality if (g := self.signal_groups.get(gid)) is not None else None
            for gid in groups
        ]
        if region.kind is RegionKind.INTERVAL:
            # An interval is the image of an arc, and arcs may join
            # timelines, so its endpoints may lie in different groups.
            # Each endpoint's group must still be one-dimensional.
            if count != 2 or any(d not in (None, 1) for d in dims):
                report.add(
                    validation.DIMENSION_MISMATCH,
                    ann.id,
                    detail=f"interval needs 2 anchors in 1-D groups, has {count}",
                )
                return
            start, end = (self.anchors[a] for a in region.anchors)
            if (
                groups[0] == groups[1]
                and start.offsets is not None
                and end.offsets is not None
                and start.offsets[0] > end.offsets[0]
            ):
                report.add(
                    validation.REVERSED_INTERVAL,
                    ann.id,
                    detail=f"start {start.offsets[0]} > end {end.offsets[0]}",
                )
            return
        # The spatial kinds describe a figure in one coordinate space:
        # every anchor must come from the same group.
        if len(set(groups)) > 1:
            report.add(
                validation.SIGNAL_GROUP_MISMATCH,
                ann.id,
                detail="region anchors span groups " + ", ".join(sorted(set(groups))),
            )
            return
        dim = dims[0]
        if region.kind is RegionKind.BOX:
            if count != 2 or (dim is not None and dim < 2):
                report.add(
                    validation.DIMENSION_MISMATCH,
                    ann.id,
                    detail=f"box needs 2 corner anchors in >=2-D, has {count} in {dim}-D",
                )
        elif region.kind is RegionKind.POLYGON:
            if count < 3 or (dim is not None and dim != 2):
                report.add(
                    validation.DIMENSION_MISMATCH,
                    ann.id,
                    detail=f"polygon needs >=3 anchors in 2-D, has {count} in {dim}-D",
                )
        # polytopes: any >=2 anchors in any dimensionality; nothing to check


# -- the linear-case reduction ------------------------------------------------


def from_graph(graph: AnnotationGraph) -> AnnotationSet:
    """View a graph as an annotation set.

    Timelines become 1-D signal groups, nodes become anchors, arcs
    become interval annotations. Ids are preserved verbatim and content
    is deep-copied, so the set and graph evolve independently.
    """
    result = AnnotationSet()
    for signal in graph.signals.values():
        result.signals[signal.id] = replace(signal)
    for timeline in graph.timelines.values():
        members = {timeline.id} if timeline.id in graph.signals else set()
        result.signal_groups[timeline.id] = SignalGroup(
            timeline.id, list(timeline.unit_names), members
        )
    for node in graph.nodes.values():
        offsets = (node.offset,) if node.offset is not None else None
        result.anchors[node.id] = Anchor(node.id, node.timeline, offsets)
    for arc in graph.arcs.values():
        result.annotations[arc.id] = Annotation(
            arc.id,
            arc.arc_type,
            Region([arc.start, arc.end], RegionKind.INTERVAL),
            copy_content(arc.content),
        )
    result._next_id = graph._next_id
    return result


def to_graph(annotation_set: AnnotationSet) -> AnnotationGraph:
    """Reduce a linear annotation set back to a graph.

    Every region must be an interval over a 1-D signal group. The result
    is validated; a nonempty report raises InvalidGraphError, so corrupt
    sets (dangling anchors, reversed intervals) are rejected rather than
    silently converted.
    """
    graph = AnnotationGraph()
    for signal in annotation_set.signals.values():
        graph.signals[signal.id] = replace(signal)
    for group in annotation_set.signal_groups.values():
        graph.timelines[group.id] = Timeline(group.id, list(group.unit_names))
    for anchor in annotation_set.anchors.values():
        if anchor.offsets is not None and len(anchor.offsets) != 1:
            raise UnsupportedRegionKindError(
                f"anchor {anchor.id} has {len(anchor.offsets)} offsets; "
                "only 1-D data reduces to a graph"
            )
        offset = anchor.offsets[0] if anchor.offsets is not None else None
        graph.nodes[anchor.id] = Node(anchor.id, anchor.signal_group, offset)
    for ann in annotation_set.annotations.values():
        if ann.region.kind is not RegionKind.INTERVAL:
            raise UnsupportedRegionKindError(
                f"annotation {ann.id} has a {ann.region.kind.value} region; "
                "only intervals reduce to arcs"
            )
        if len(ann.region.anchors) != 2:
            raise DimensionMismatchError(
                2, len(ann.region.anchors), f"interval anchors of annotation {ann.id}"
            )
        graph.arcs[ann.id] = Arc(
            ann.id,
            ann.region.anchors[0],
            ann.region.anchors[1],
            ann.ann_type,
            copy_content(ann.content),
        )
    graph._next_id = annotation_set._next_id
    report = graph.validate()
    if report:
        raise InvalidGraphError(report)
    return graph
