import pytest

from annograph import FeatureSet, Literal, Xref
from annograph.content import as_content, copy_content, iter_xrefs, summarize


def test_get_returns_first_match():
    fs = FeatureSet([("a", Literal("1")), ("b", Literal("2")), ("a", Literal("3"))])
    assert fs.get("a") == Literal("1")
    assert fs.get("missing") is None


def test_get_all_preserves_order():
    fs = FeatureSet([("a", Literal("1")), ("b", Literal("2")), ("a", Literal("3"))])
    assert fs.get_all("a") == [Literal("1"), Literal("3")]


def test_set_replaces_in_place_and_drops_later_duplicates():
    fs = FeatureSet([("a", Literal("1")), ("b", Literal("2")), ("a", Literal("3"))])
    fs.set("a", Literal("9"))
    assert fs.pairs == [("a", Literal("9")), ("b", Literal("2"))]


def test_set_appends_when_absent():
    fs = FeatureSet()
    fs.set("x", Literal("1"))
    assert fs.pairs == [("x", Literal("1"))]


def test_add_allows_repeats():
    fs = FeatureSet()
    fs.add("syn", Literal("give"))
    fs.add("syn", Literal("present"))
    assert len(fs.get_all("syn")) == 2


def test_as_content_wraps_strings():
    assert as_content("hi") == Literal("hi")
    assert as_content(Xref("A2")) == Xref("A2")


def test_copy_content_is_deep():
    inner = FeatureSet([("k", Literal("v"))])
    fs = FeatureSet([("outer", inner)])
    dup = copy_content(fs)
    dup.pairs[0][1].set("k", Literal("changed"))
    assert inner.get("k") == Literal("v")


def test_iter_xrefs_walks_nested_sets():
    fs = FeatureSet(
        [
            ("a", Xref("A1")),
            ("b", FeatureSet([("c", Xref("A2")), ("d", Literal("x"))])),
        ]
    )
    assert sorted(iter_xrefs(fs)) == ["A1", "A2"]
    assert list(iter_xrefs(Literal("plain"))) == []


@pytest.mark.parametrize(
    "content,expected",
    [
        (Literal("VBD"), "VBD"),
        (Xref("A2"), "->A2"),
        (FeatureSet([("sign", Literal("e"))]), "{sign=e}"),
        (FeatureSet(), "{}"),
    ],
)
def test_summarize(content, expected):
    assert summarize(content) == expected
