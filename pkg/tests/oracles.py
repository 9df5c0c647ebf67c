"""Independent brute-force checkers used as ground truth by the tests.

Everything here is deliberately naive and written against the public
data fields only (node/arc/anchor dataclasses), never against the
library's own validation or query code, so a bug in the library cannot
hide by agreeing with itself. Quadratic and cubic algorithms are fine:
test graphs are small.
"""

from __future__ import annotations

from collections import defaultdict, deque
from decimal import Decimal

from annograph import AnnotationGraph, AnnotationSet, FeatureSet, as_content


def _edges(graph: AnnotationGraph) -> list[tuple[str, str]]:
    return [(arc.start, arc.end) for arc in graph.arcs.values()]


def has_cycle(graph: AnnotationGraph) -> bool:
    """Tri-color depth-first search, iterative."""
    adjacency = defaultdict(list)
    for start, end in _edges(graph):
        if start == end:
            return True
        if start in graph.nodes and end in graph.nodes:
            adjacency[start].append(end)
    white, gray, black = 0, 1, 2
    color = {node_id: white for node_id in graph.nodes}
    for root in graph.nodes:
        if color[root] != white:
            continue
        stack = [(root, iter(adjacency[root]))]
        color[root] = gray
        while stack:
            node_id, children = stack[-1]
            for child in children:
                if color[child] == gray:
                    return True
                if color[child] == white:
                    color[child] = gray
                    stack.append((child, iter(adjacency[child])))
                    break
            else:
                color[node_id] = black
                stack.pop()
    return False


def orphan_nodes(graph: AnnotationGraph) -> list[str]:
    """Degree count over the raw arc list."""
    touched = set()
    for start, end in _edges(graph):
        touched.add(start)
        touched.add(end)
    return sorted(node_id for node_id in graph.nodes if node_id not in touched)


def reachable_from(graph: AnnotationGraph, origin: str) -> set[str]:
    adjacency = defaultdict(list)
    for start, end in _edges(graph):
        adjacency[start].append(end)
    seen: set[str] = set()
    queue = deque(adjacency[origin])
    while queue:
        node_id = queue.popleft()
        if node_id in seen:
            continue
        seen.add(node_id)
        queue.extend(adjacency[node_id])
    return seen


def time_order_violations(graph: AnnotationGraph) -> list[tuple[str, str]]:
    """Transitive-closure scan: every anchored same-timeline pair connected
    by a path must have non-decreasing offsets."""
    bad = []
    for u_id in sorted(graph.nodes):
        u = graph.nodes[u_id]
        if u.offset is None:
            continue
        for v_id in sorted(reachable_from(graph, u_id)):
            v = graph.nodes.get(v_id)
            if (
                v is not None
                and v.offset is not None
                and v.timeline == u.timeline
                and u.offset > v.offset
            ):
                bad.append((u_id, v_id))
    return bad


def well_formed(graph: AnnotationGraph) -> bool:
    """The three structural conditions: acyclic, no degree-zero nodes,
    offsets monotone along same-timeline paths."""
    return (
        not has_cycle(graph)
        and not orphan_nodes(graph)
        and not time_order_violations(graph)
    )


def anchor_acceptable(graph: AnnotationGraph, node_id: str, offset) -> bool:
    """Would anchoring node_id at offset keep every path monotone?

    Checks all anchored ancestors and descendants by brute force.
    """
    value = Decimal(offset) if not isinstance(offset, Decimal) else offset
    timeline = graph.nodes[node_id].timeline
    descendants = reachable_from(graph, node_id)
    ancestors = {
        other for other in graph.nodes if node_id in reachable_from(graph, other)
    }
    for other_id in ancestors:
        other = graph.nodes[other_id]
        if other.offset is not None and other.timeline == timeline and other.offset > value:
            return False
    for other_id in descendants:
        other = graph.nodes[other_id]
        if other.offset is not None and other.timeline == timeline and other.offset < value:
            return False
    return True


# ---------------------------------------------------------------------------
# query oracles: plain scans over the set's public data


def oracle_by_type(annotations: AnnotationSet, ann_type: str) -> list[str]:
    return sorted(
        ann.id for ann in annotations.annotations.values() if ann.ann_type == ann_type
    )


def oracle_by_feature(annotations: AnnotationSet, feature: str, value) -> list[str]:
    wanted = as_content(value)
    matches = []
    for ann in annotations.annotations.values():
        if not isinstance(ann.content, FeatureSet):
            continue
        if any(name == feature and val == wanted for name, val in ann.content.pairs):
            matches.append(ann.id)
    return sorted(matches)


def oracle_by_signal_group(annotations: AnnotationSet, group_id: str) -> list[str]:
    matches = []
    for ann in annotations.annotations.values():
        for anchor_id in ann.region.anchors:
            anchor = annotations.anchors.get(anchor_id)
            if anchor is not None:
                if anchor.signal_group == group_id:
                    matches.append(ann.id)
                break
    return sorted(matches)


def oracle_anchors_at_offset(annotations: AnnotationSet, offsets) -> list[str]:
    wanted = tuple(Decimal(v) for v in offsets)
    return sorted(
        anchor.id
        for anchor in annotations.anchors.values()
        if anchor.offsets == wanted
    )


def oracle_incoming(annotations: AnnotationSet, anchor_id: str) -> list[str]:
    return sorted(
        ann.id
        for ann in annotations.annotations.values()
        if ann.region.anchors and ann.region.anchors[-1] == anchor_id
    )


def oracle_outgoing(annotations: AnnotationSet, anchor_id: str) -> list[str]:
    return sorted(
        ann.id
        for ann in annotations.annotations.values()
        if ann.region.anchors and ann.region.anchors[0] == anchor_id
    )
