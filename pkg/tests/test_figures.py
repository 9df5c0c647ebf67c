"""Figure rendering. Only checks that real PNGs come out; the drawing
itself is eyeballed, not asserted."""

from annograph import AnnotationGraph, build_graph
from annograph.figures import render_tier_figure, render_type_histogram

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_tier_figure_renders(timit_graph, tmp_path):
    path = tmp_path / "tiers.png"
    render_tier_figure(timit_graph, str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_type_histogram_renders(timit_graph, tmp_path):
    path = tmp_path / "types.png"
    render_type_histogram(timit_graph, str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_empty_graph_renders_placeholder(tmp_path):
    path = tmp_path / "empty.png"
    render_tier_figure(AnnotationGraph(), str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC
    render_type_histogram(AnnotationGraph(), str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_unanchored_arcs_are_skipped(timit_graph, tmp_path):
    for node in timit_graph.nodes.values():
        node.offset = None
    path = tmp_path / "unanchored.png"
    render_tier_figure(timit_graph, str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_many_arc_labels_suppressed(tmp_path):
    # label annotation switches off above 40 arcs; must still render
    from annograph import ColumnTier

    rows = [(i * 10, i * 10 + 10, f"w{i}") for i in range(60)]
    graph = build_graph([ColumnTier("", "W", rows)])
    path = tmp_path / "many.png"
    render_tier_figure(graph, str(path))
    assert path.read_bytes()[:8] == PNG_MAGIC
