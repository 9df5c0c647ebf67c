"""Figure rendering for the stats report.

Two views of a graph: the tier plot lays each arc type out as a lane of
labeled spans with node boundaries ticked beneath, and the histogram
counts arcs per type. Both render straight to image files through the
non-interactive backend, so they work in pipelines and on headless
machines.

Offsets are converted to floats here for plotting geometry only; the
exact decimal values in the graph are untouched.
"""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot as plt

from .content import Literal
from .graph import AnnotationGraph


def render_tier_figure(graph: AnnotationGraph, path: str) -> None:
    """Draw one lane per arc type, spans placed by their node offsets.

    Arcs with an unanchored endpoint have no position and are left out.
    A graph with nothing drawable still produces a file, with a note
    saying so, because a missing figure reads as a failed run.
    """
    spans: dict[str, list[tuple[float, float, str]]] = {}
    boundaries: set[float] = set()
    for arc in graph.arcs.values():
        start = graph.nodes[arc.start].offset if arc.start in graph.nodes else None
        end = graph.nodes[arc.end].offset if arc.end in graph.nodes else None
        if start is None or end is None:
            continue
        label = arc.content.text if isinstance(arc.content, Literal) else ""
        spans.setdefault(arc.arc_type, []).append((float(start), float(end), label))
        boundaries.update((float(start), float(end)))

    if not spans:
        _placeholder(path, "no anchored arcs to draw")
        return

    types = sorted(spans)
    fig, ax = plt.subplots(figsize=(10, 1.2 + 0.8 * len(types)))
    annotate = sum(len(rows) for rows in spans.values()) <= 40
    for lane, arc_type in enumerate(types):
        for start, end, label in spans[arc_type]:
            ax.hlines(lane, start, end, linewidth=6, alpha=0.7)
            ax.vlines((start, end), lane - 0.12, lane + 0.12, linewidth=1)
            if annotate and label:
                ax.text(
                    (start + end) / 2,
                    lane + 0.18,
                    label,
                    ha="center",
                    va="bottom",
                    fontsize=8,
                )
    for boundary in boundaries:
        ax.axvline(boundary, color="0.85", linewidth=0.5, zorder=0)
    ax.set_yticks(range(len(types)))
    ax.set_yticklabels(types)
    ax.set_ylim(-0.6, len(types) - 0.2)
    units = sorted({tl.unit for tl in graph.timelines.values() if tl.unit})
    ax.set_xlabel("offset" + (f" ({', '.join(units)})" if units else ""))
    ax.set_title(f"{len(graph.arcs)} arcs on {len(types)} tier(s)")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_type_histogram(graph: AnnotationGraph, path: str) -> None:
    """Bar chart of arc counts per type, every arc included."""
    counts = Counter(arc.arc_type for arc in graph.arcs.values())
    if not counts:
        _placeholder(path, "no arcs to count")
        return
    types = sorted(counts)
    values = [counts[t] for t in types]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(types)), 4))
    bars = ax.bar(types, values)
    ax.bar_label(bars)
    ax.set_ylabel("arcs")
    ax.set_xlabel("type")
    ax.set_title("arcs per type")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _placeholder(path: str, message: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 2))
    ax.text(0.5, 0.5, message, ha="center", va="center")
    ax.set_axis_off()
    fig.savefig(path)
    plt.close(fig)
