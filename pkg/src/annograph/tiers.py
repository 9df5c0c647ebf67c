"""Column-format transcription tiers and their graph construction.

A tier file is line-oriented: "start end label" with integer sample
offsets, one labeled interval per line. Word and phone tiers of one
recording share boundaries (a word ends exactly where a phone does), so
building a graph from several tiers places one node per distinct offset
and lets the tiers meet at shared nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .content import Literal
from .errors import MalformedLineError, NonIntegerOffsetError, ReversedIntervalError
from .graph import AnnotationGraph

DEFAULT_UNITS = "Samples16kHz"


@dataclass
class ColumnTier:
    source_name: str
    arc_type: str
    rows: list[tuple[int, int, str]] = field(default_factory=list)
    units: str = DEFAULT_UNITS


def parse_tier(
    text: bytes | str,
    arc_type: str,
    source_name: str = "",
    units: str = DEFAULT_UNITS,
) -> ColumnTier:
    """Parse "start end label" lines into a tier.

    Rows keep file order; labels are taken verbatim (a label like "h#"
    is fine). Blank lines are skipped. Errors carry the 1-based line
    number of the offending line.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[tuple[int, int, str]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLineError(line_no, line)
        try:
            start = int(parts[0])
            end = int(parts[1])
        except ValueError:
            raise NonIntegerOffsetError(line_no, line) from None
        if start >= end:
            raise ReversedIntervalError(line_no, start, end)
        rows.append((start, end, parts[2]))
    return ColumnTier(source_name, arc_type, rows, units)


def build_graph(tiers: list[ColumnTier], timeline_id: str = "T") -> AnnotationGraph:
    """Merge tiers into one annotation graph on a shared timeline.

    One node per distinct offset across all tiers (named "n<offset>" so
    rebuilt graphs are reproducible), one arc per row labeled with the
    tier's type and the row's label as literal content. Tiers with gaps
    produce disconnected components, which is legal.
    """
    units = {tier.units for tier in tiers}
    if len(units) > 1:
        raise ValueError("tiers disagree on units: " + ", ".join(sorted(units)))
    graph = AnnotationGraph()
    offsets = sorted(
        {value for tier in tiers for start, end, _ in tier.rows for value in (start, end)}
    )
    if not offsets:
        return graph
    graph.add_timeline(timeline_id, [units.pop()])
    for value in offsets:
        graph.add_node(timeline_id, value, node_id=f"n{value}")
    for tier in tiers:
        for start, end, label in tier.rows:
            graph.insert_arc(f"n{start}", f"n{end}", tier.arc_type, Literal(label))
    return graph


def serialize_tier(graph: AnnotationGraph, arc_type: str) -> bytes:
    """Write the arcs of one type back out as column rows.

    Round-trip plumbing: every matching arc must have anchored endpoints
    and literal content, the shape build_graph produces. Rows come out
    sorted by (start, end, label), not in arc-id order.
    """
    rows = []
    for arc in graph.arcs.values():
        if arc.arc_type != arc_type:
            continue
        start = graph.nodes[arc.start].offset
        end = graph.nodes[arc.end].offset
        if start is None or end is None:
            raise ValueError(
                f"arc {arc.id} has an unanchored endpoint; rows need both offsets"
            )
        if not isinstance(arc.content, Literal):
            raise ValueError(f"arc {arc.id} does not carry a literal label")
        rows.append((start, end, arc.content.text))
    rows.sort()
    return "".join(f"{start} {end} {label}\n" for start, end, label in rows).encode("utf-8")
