"""Column transcription files: two integer offsets and a label per line."""

import random
from decimal import Decimal

import pytest

from annograph import (
    ColumnTier,
    MalformedLineError,
    NonIntegerOffsetError,
    ReversedIntervalError,
    build_graph,
    parse_tier,
    serialize_tier,
)
from generators import WORDS, aligned_tiers, random_tier


def test_word_file_row_count(timit_tiers):
    word, phone = timit_tiers
    assert len(word.rows) == 11
    assert len(phone.rows) == 10


def test_word_file_first_and_last_rows(timit_tiers):
    word, _ = timit_tiers
    assert word.rows[0] == (2360, 5200, "she")
    assert word.rows[-1] == (44680, 49066, "year")


def test_graph_counts(timit_graph, timit_tiers):
    offsets = {off for tier in timit_tiers for row in tier.rows for off in row[:2]}
    assert len(timit_graph.nodes) == len(offsets) == 20
    assert len(timit_graph.arcs) == 21


def test_boundaries_shared_across_tiers(timit_graph):
    # word and phone tiers meet at these sample offsets
    def degree(node_id):
        return sum(
            node_id in (a.start, a.end) for a in timit_graph.arcs.values()
        )

    assert degree("n2360") >= 2
    assert degree("n5200") >= 2


def test_nodes_named_after_offsets(timit_graph):
    node = timit_graph.nodes["n2360"]
    assert node.offset == Decimal(2360)
    assert node.timeline == "T"
    assert timit_graph.timelines["T"].unit == "Samples16kHz"


def test_gap_makes_disconnected_but_valid_graph(timit_graph):
    # a silent stretch separates two word spans; no arc bridges it
    spans = {(a.start, a.end) for a in timit_graph.arcs.values()}
    assert ("n36150", "n36720") not in spans
    assert timit_graph.validate().ok


def test_labels_become_literal_content(timit_graph):
    labels = {
        (a.start, a.end, a.content.text)
        for a in timit_graph.arcs.values()
        if a.arc_type == "W"
    }
    assert ("n2360", "n5200", "she") in labels


def test_parse_skips_blank_lines():
    tier = parse_tier(b"\n10 20 a\n\n20 30 b\n\n", "W")
    assert tier.rows == [(10, 20, "a"), (20, 30, "b")]


def test_parse_empty_input():
    tier = parse_tier(b"", "W")
    assert tier.rows == []
    g = build_graph([tier])
    assert not g.nodes and not g.timelines


def test_parse_reversed_interval():
    with pytest.raises(ReversedIntervalError) as err:
        parse_tier(b"10 20 a\n5200 2360 oops\n", "W")
    assert err.value.line_no == 2


def test_parse_zero_length_interval_rejected():
    with pytest.raises(ReversedIntervalError):
        parse_tier(b"10 10 a\n", "W")


def test_parse_malformed_line():
    with pytest.raises(MalformedLineError) as err:
        parse_tier(b"10 20 a\n30 40\n", "W")
    assert err.value.line_no == 2
    with pytest.raises(MalformedLineError):
        parse_tier(b"10 20 two words\n", "W")


def test_parse_non_integer_offset():
    with pytest.raises(NonIntegerOffsetError) as err:
        parse_tier(b"10 twenty a\n", "W")
    assert err.value.line_no == 1
    with pytest.raises(NonIntegerOffsetError):
        parse_tier(b"1.5 2 a\n", "W")


def test_build_graph_counting_invariants():
    rng = random.Random(43)
    for _ in range(80):
        tiers = [random_tier(rng, "W"), random_tier(rng, "P")]
        g = build_graph(tiers)
        offsets = {off for t in tiers for row in t.rows for off in row[:2]}
        assert len(g.nodes) == len(offsets)
        assert len(g.arcs) == sum(len(t.rows) for t in tiers)
        assert g.validate().ok


def test_aligned_tiers_share_nodes():
    rng = random.Random(47)
    for _ in range(40):
        tiers = aligned_tiers(rng)
        g = build_graph(tiers)
        offsets = {off for t in tiers for row in t.rows for off in row[:2]}
        assert len(g.nodes) == len(offsets)
        shared = [
            n
            for n in g.nodes
            if sum(n in (a.start, a.end) for a in g.arcs.values()) > 2
        ]
        coarse = tiers[0]
        if len(coarse.rows) >= 2:
            # interior coarse boundaries sit on fine boundaries
            assert shared


def test_unit_mismatch_rejected():
    word = ColumnTier("w", "W", [(1, 2, "a")], "Samples16kHz")
    phone = ColumnTier("p", "P", [(1, 2, "b")], "Seconds")
    with pytest.raises(ValueError):
        build_graph([word, phone])


def test_custom_timeline_id():
    g = build_graph([ColumnTier("", "W", [(1, 2, "a")])], timeline_id="audio")
    assert set(g.timelines) == {"audio"}
    assert g.nodes["n1"].timeline == "audio"


def test_serialize_round_trip_bytes(timit_tiers, data_dir):
    word, phone = timit_tiers
    g = build_graph([word, phone])
    assert serialize_tier(g, "W") == (data_dir / "sa1.wrd").read_bytes()
    assert serialize_tier(g, "P") == (data_dir / "sa1.phn").read_bytes()


def test_serialize_rows_sorted():
    rng = random.Random(53)
    for _ in range(30):
        tier = random_tier(rng, "W")
        g = build_graph([tier])
        out = serialize_tier(g, "W").decode()
        rows = [line.split() for line in out.splitlines()]
        starts = [int(r[0]) for r in rows]
        assert starts == sorted(starts)
        assert len(rows) == len(tier.rows)


def test_serialize_requires_anchored_endpoints():
    g = build_graph([ColumnTier("", "W", [(1, 2, "a")])])
    g.nodes["n1"].offset = None
    with pytest.raises(ValueError):
        serialize_tier(g, "W")


def test_serialize_requires_plain_labels():
    from annograph import FeatureSet

    g = build_graph([ColumnTier("", "W", [(1, 2, "a")])])
    next(iter(g.arcs.values())).content = FeatureSet()
    with pytest.raises(ValueError):
        serialize_tier(g, "W")


def test_parse_serialize_identity_on_random_text():
    rng = random.Random(59)
    for _ in range(30):
        lines = []
        cursor = 0
        for _ in range(rng.randint(1, 15)):
            start = cursor + rng.randint(0, 9)
            end = start + rng.randint(1, 99)
            cursor = end
            lines.append(f"{start} {end} {rng.choice(WORDS)}")
        text = ("\n".join(lines) + "\n").encode()
        tier = parse_tier(text, "W")
        assert serialize_tier(build_graph([tier]), "W") == text
