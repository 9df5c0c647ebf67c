"""Reading and writing the XML interchange formats.

Two document shapes live here: annotation graph documents (root element
AnnotationGraph, with AG_Signal / AG_Node / AG_Arc children) and lexicon
documents (root element AtlasSignal, holding Entry elements). Both share
the Field/Feature/Value encoding of structured content.

The writer produces one canonical byte form: fixed attribute order,
two-space indentation, elements sorted by id, UTF-8 with a declaration.
Because parsing the canonical form and serializing again reproduces the
input byte for byte, documents can be normalized idempotently.

Annotations are stand-off: signal locations are opaque strings and are
never opened, so documents parse fine when the media they describe is
absent.
"""

from __future__ import annotations

import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from . import validation
from .content import Content, FeatureSet, Literal, Xref
from .errors import (
    ConflictingUnitsError,
    DanglingNodeRefError,
    DanglingXrefError,
    DuplicateIdError,
    InvalidGraphError,
    AifWarning,
    MalformedXmlError,
    UnknownElementError,
)
from .graph import (
    AnnotationGraph,
    Arc,
    Node,
    SignalDescriptor,
    Timeline,
    as_offset,
    dangling_xrefs,
)

XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>'

_SIGNAL_ATTRS = frozenset(
    {"SignalID", "Class", "Format", "Encoding", "ArcTypes", "Location", "Comment"}
)
_NODE_ATTRS = frozenset({"NodeId", "Signal", "Offset", "units"})
_ARC_ATTRS = frozenset({"ID", "StartNode", "EndNode", "Type"})

# Text keeps a raw apostrophe ("one's hand"); only markup characters and
# carriage returns need escaping. Attribute values additionally protect
# whitespace that XML parsers would otherwise normalize away.
_TEXT_ENTITIES = {"\r": "&#13;"}
_ATTR_ENTITIES = {'"': "&quot;", "\n": "&#10;", "\t": "&#9;", "\r": "&#13;"}


def _esc(text: str) -> str:
    return escape(text, _TEXT_ENTITIES)


def _esc_attr(value: str) -> str:
    return escape(value, _ATTR_ENTITIES)


def _attr_string(pairs: list[tuple[str, str | None]]) -> str:
    return "".join(
        f' {name}="{_esc_attr(value)}"' for name, value in pairs if value is not None
    )


# ---------------------------------------------------------------------------
# shared parsing helpers


def _parse_xml(data: bytes | str) -> ET.Element:
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        return ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXmlError(f"not well-formed XML: {exc}") from None


def _unexpected(strict: bool, message: str) -> None:
    """Unknown vocabulary: fatal under strict, warn-and-skip otherwise."""
    if strict:
        raise UnknownElementError(message)
    warnings.warn(message, AifWarning, stacklevel=2)


def _check_attrs(el: ET.Element, known: frozenset[str], strict: bool, where: str) -> None:
    for name in el.keys():
        if name not in known:
            _unexpected(strict, f"unknown attribute {name!r} on {where}")


def _require(el: ET.Element, attr: str, where: str) -> str:
    value = el.get(attr)
    if value is None:
        raise MalformedXmlError(f"{where} is missing its {attr} attribute")
    return value


def _reject_mixed(el: ET.Element) -> None:
    if el.text and el.text.strip():
        raise MalformedXmlError(f"{el.tag} mixes text with child elements")
    for child in el:
        if child.tail and child.tail.strip():
            raise MalformedXmlError(f"stray text after {child.tag} inside {el.tag}")


def _parse_content(el: ET.Element, strict: bool) -> Content:
    """Parse a Content or Value element into one of the three variants.

    Element children mean structure: Field children form a feature set,
    a lone AG_xref is a cross-reference. Otherwise the text is a literal.
    An empty or whitespace-only element is an empty feature set, which
    makes literals consisting solely of whitespace unrepresentable; the
    writer never produces them.
    """
    children = list(el)
    if not children:
        text = el.text or ""
        if text.strip():
            return Literal(text)
        return FeatureSet()
    _reject_mixed(el)
    if len(children) == 1 and children[0].tag == "AG_xref":
        return _parse_xref(children[0], strict)
    pairs: list[tuple[str, Content]] = []
    for child in children:
        if child.tag == "Field":
            pairs.append(_parse_field(child, strict))
        elif child.tag == "AG_xref":
            raise MalformedXmlError(f"AG_xref mixed with other children inside {el.tag}")
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside {el.tag}")
    return FeatureSet(pairs)


def _parse_field(el: ET.Element, strict: bool) -> tuple[str, Content]:
    _check_attrs(el, frozenset(), strict, "Field")
    _reject_mixed(el)
    feature: str | None = None
    value: Content | None = None
    for child in el:
        if child.tag == "Feature":
            if feature is not None:
                raise MalformedXmlError("Field has more than one Feature child")
            if len(child):
                raise MalformedXmlError("Feature must hold text, not elements")
            feature = child.text or ""
        elif child.tag == "Value":
            if value is not None:
                raise MalformedXmlError("Field has more than one Value child")
            value = _parse_content(child, strict)
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside Field")
    if feature is None:
        raise MalformedXmlError("Field is missing its Feature child")
    return feature, value if value is not None else FeatureSet()


def _parse_xref(el: ET.Element, strict: bool) -> Xref:
    target = _require(el, "AG_Arc", "AG_xref")
    _check_attrs(el, frozenset({"AG_Arc"}), strict, "AG_xref")
    if len(el):
        raise MalformedXmlError("AG_xref is an empty element and may not hold children")
    return Xref(target)


# ---------------------------------------------------------------------------
# annotation graph documents


def parse_aif(data: bytes | str, strict: bool = False, resolve: bool = True) -> AnnotationGraph:
    """Parse an annotation graph document.

    Timelines are implicit in the format: each distinct Signal attribute
    among the nodes becomes a 1-D timeline whose unit is taken from the
    nodes' units attributes (two different explicit units on one signal
    is an error). With resolve=True (the default) arcs naming missing
    nodes and xrefs naming missing arcs raise immediately; pass
    resolve=False to load such a document anyway and let validate()
    report the dangling references.
    """
    root = _parse_xml(data)
    if root.tag != "AnnotationGraph":
        raise MalformedXmlError(f"expected an AnnotationGraph root, got {root.tag!r}")
    _check_attrs(root, frozenset(), strict, "AnnotationGraph")
    graph = AnnotationGraph()
    node_elements: list[ET.Element] = []
    arc_elements: list[ET.Element] = []
    for child in root:
        if child.tag == "AG_Signal":
            _parse_signal(child, graph, strict)
        elif child.tag == "AG_Node":
            node_elements.append(child)
        elif child.tag == "AG_Arc":
            arc_elements.append(child)
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside AnnotationGraph")
    explicit_units: dict[str, str] = {}
    for el in node_elements:
        _parse_node(el, graph, explicit_units, strict)
    for el in arc_elements:
        _parse_arc(el, graph, strict)
    if resolve:
        for arc_id in sorted(graph.arcs):
            arc = graph.arcs[arc_id]
            for node_id in (arc.start, arc.end):
                if node_id not in graph.nodes:
                    raise DanglingNodeRefError(arc_id, node_id)
        for arc_id, target in dangling_xrefs(graph):
            raise DanglingXrefError(arc_id, target)
    return graph


def _parse_signal(el: ET.Element, graph: AnnotationGraph, strict: bool) -> None:
    signal_id = _require(el, "SignalID", "AG_Signal")
    _check_attrs(el, _SIGNAL_ATTRS, strict, f"AG_Signal {signal_id}")
    if signal_id in graph.signals:
        raise DuplicateIdError("signal", signal_id)
    for child in el:
        _unexpected(strict, f"unknown element {child.tag!r} inside AG_Signal")
    graph.signals[signal_id] = SignalDescriptor(
        id=signal_id,
        format=el.get("Format", ""),
        location=el.get("Location", ""),
        arc_types=el.get("ArcTypes"),
        signal_class=el.get("Class"),
        encoding=el.get("Encoding"),
        comment=el.get("Comment"),
    )


def _parse_node(
    el: ET.Element,
    graph: AnnotationGraph,
    explicit_units: dict[str, str],
    strict: bool,
) -> None:
    node_id = _require(el, "NodeId", "AG_Node")
    signal = _require(el, "Signal", "AG_Node")
    _check_attrs(el, _NODE_ATTRS, strict, f"AG_Node {node_id}")
    for child in el:
        _unexpected(strict, f"unknown element {child.tag!r} inside AG_Node")
    if node_id in graph.nodes:
        raise DuplicateIdError("node", node_id)
    units = el.get("units")
    if signal not in graph.timelines:
        graph.timelines[signal] = Timeline(signal, [units if units is not None else ""])
        if units is not None:
            explicit_units[signal] = units
    elif units is not None:
        prior = explicit_units.get(signal)
        if prior is None:
            explicit_units[signal] = units
            graph.timelines[signal].unit_names[0] = units
        elif prior != units:
            raise ConflictingUnitsError(signal, prior, units)
    raw = el.get("Offset")
    try:
        offset = None if raw is None else as_offset(raw)
    except (TypeError, ValueError):
        raise MalformedXmlError(f"bad Offset {raw!r} on node {node_id}") from None
    graph.nodes[node_id] = Node(node_id, signal, offset)


def _parse_arc(el: ET.Element, graph: AnnotationGraph, strict: bool) -> None:
    arc_id = _require(el, "ID", "AG_Arc")
    start = _require(el, "StartNode", "AG_Arc")
    end = _require(el, "EndNode", "AG_Arc")
    arc_type = _require(el, "Type", "AG_Arc")
    _check_attrs(el, _ARC_ATTRS, strict, f"AG_Arc {arc_id}")
    if arc_id in graph.arcs:
        raise DuplicateIdError("arc", arc_id)
    content_el: ET.Element | None = None
    for child in el:
        if child.tag == "Content":
            if content_el is not None:
                raise MalformedXmlError(f"arc {arc_id} has more than one Content child")
            content_el = child
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside AG_Arc")
    content = FeatureSet() if content_el is None else _parse_content(content_el, strict)
    graph.arcs[arc_id] = Arc(arc_id, start, end, arc_type, content)


def serialize_aif(graph: AnnotationGraph) -> bytes:
    """Serialize a graph to the canonical document form.

    The graph must validate cleanly; a graph with violations raises
    InvalidGraphError rather than producing a document that would not
    load back. Equal graphs always produce identical bytes: signals,
    nodes, and arcs are each emitted in ascending id order.
    """
    report = graph.validate()
    if report:
        raise InvalidGraphError(report)
    for timeline in graph.timelines.values():
        if timeline.dimensionality != 1:
            raise ValueError(
                f"timeline {timeline.id!r} is {timeline.dimensionality}-D; "
                "this format represents 1-D timelines only"
            )
    body: list[str] = []
    for signal_id in sorted(graph.signals):
        body.append("  " + _signal_tag(graph.signals[signal_id]))
    for node_id in sorted(graph.nodes):
        body.append("  " + _node_tag(graph, graph.nodes[node_id]))
    for arc_id in sorted(graph.arcs):
        body.extend(_arc_lines(graph.arcs[arc_id]))
    lines = [XML_DECLARATION]
    if body:
        lines.append("<AnnotationGraph>")
        lines.extend(body)
        lines.append("</AnnotationGraph>")
    else:
        lines.append("<AnnotationGraph/>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _signal_tag(signal: SignalDescriptor) -> str:
    attrs = _attr_string(
        [
            ("SignalID", signal.id),
            ("Class", signal.signal_class),
            ("Format", signal.format),
            ("Encoding", signal.encoding),
            ("ArcTypes", signal.arc_types),
            ("Location", signal.location),
            ("Comment", signal.comment),
        ]
    )
    return f"<AG_Signal{attrs}/>"


def _node_tag(graph: AnnotationGraph, node: Node) -> str:
    unit = graph.timelines[node.timeline].unit
    attrs = _attr_string(
        [
            ("NodeId", node.id),
            ("Signal", node.timeline),
            ("Offset", None if node.offset is None else str(node.offset)),
            ("units", unit if unit else None),
        ]
    )
    return f"<AG_Node{attrs}/>"


def _arc_lines(arc: Arc) -> list[str]:
    attrs = _attr_string(
        [("ID", arc.id), ("StartNode", arc.start), ("EndNode", arc.end), ("Type", arc.arc_type)]
    )
    if isinstance(arc.content, FeatureSet) and not arc.content.pairs:
        return [f"  <AG_Arc{attrs}/>"]
    lines = [f"  <AG_Arc{attrs}>"]
    lines.extend(_content_lines(arc.content, 2, "Content"))
    lines.append("  </AG_Arc>")
    return lines


def _content_lines(content: Content, depth: int, tag: str) -> list[str]:
    pad = "  " * depth
    if isinstance(content, Literal):
        return [f"{pad}<{tag}>{_esc(content.text)}</{tag}>"]
    if isinstance(content, Xref):
        return [f'{pad}<{tag}><AG_xref AG_Arc="{_esc_attr(content.target)}"/></{tag}>']
    if not content.pairs:
        return [f"{pad}<{tag}/>"]
    lines = [f"{pad}<{tag}>"]
    inner = "  " * (depth + 1)
    for name, value in content.pairs:
        lines.append(f"{inner}<Field>")
        lines.append(f"{inner}  <Feature>{_esc(name)}</Feature>")
        lines.extend(_content_lines(value, depth + 2, "Value"))
        lines.append(f"{inner}</Field>")
    lines.append(f"{pad}</{tag}>")
    return lines


def resolve_xrefs(graph: AnnotationGraph) -> validation.ValidationReport:
    """Check every content cross-reference against the graph's arc ids.

    Cycles among references are fine (contents reference, they do not
    order); only targets that do not exist are reported.
    """
    report = validation.ValidationReport()
    for arc_id, target in dangling_xrefs(graph):
        report.add(
            validation.DANGLING_REFERENCE, arc_id, target, detail="xref target not found"
        )
    return report.sort()


# ---------------------------------------------------------------------------
# lexicon documents


@dataclass
class LexiconEntry:
    """One meaning of a lexical item: its lexeme plus structured features."""

    id: str
    lexeme: str
    content: Content = field(default_factory=FeatureSet)


@dataclass
class Lexicon:
    """A parsed lexicon document: optional signal metadata plus entries."""

    signal: SignalDescriptor | None = None
    entries: list[LexiconEntry] = field(default_factory=list)


def parse_lexicon(data: bytes | str, strict: bool = False) -> Lexicon:
    """Parse a lexicon document.

    Entries keep their document order, and repeated feature names (for
    instance several Synonym fields) stay repeated and ordered.
    """
    root = _parse_xml(data)
    if root.tag != "AtlasSignal":
        raise MalformedXmlError(f"expected an AtlasSignal root, got {root.tag!r}")
    _check_attrs(root, frozenset(), strict, "AtlasSignal")
    lexicon = Lexicon()
    seen: set[str] = set()
    for child in root:
        if child.tag == "Signal":
            if lexicon.signal is not None:
                raise MalformedXmlError("document has more than one Signal element")
            lexicon.signal = _parse_lexicon_signal(child, lexicon, seen, strict)
        elif child.tag == "Entry":
            lexicon.entries.append(_parse_entry(child, seen, strict))
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside AtlasSignal")
    return lexicon


_LEX_SIGNAL_ATTRS = frozenset({"SignalID", "Class", "Format", "Encoding", "Comment"})


def _parse_lexicon_signal(
    el: ET.Element, lexicon: Lexicon, seen: set[str], strict: bool
) -> SignalDescriptor:
    signal_id = _require(el, "SignalID", "Signal")
    _check_attrs(el, _LEX_SIGNAL_ATTRS, strict, f"Signal {signal_id}")
    for child in el:
        if child.tag == "Entry":
            lexicon.entries.append(_parse_entry(child, seen, strict))
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside Signal")
    return SignalDescriptor(
        id=signal_id,
        format=el.get("Format", ""),
        signal_class=el.get("Class"),
        encoding=el.get("Encoding"),
        comment=el.get("Comment"),
    )


def _parse_entry(el: ET.Element, seen: set[str], strict: bool) -> LexiconEntry:
    ident = _require(el, "ID", "Entry")
    if ident in seen:
        raise DuplicateIdError("entry", ident)
    seen.add(ident)
    _check_attrs(el, frozenset({"ID"}), strict, f"Entry {ident}")
    lexeme = ""
    content: Content = FeatureSet()
    saw_lexeme = saw_content = False
    for child in el:
        if child.tag == "Lexeme":
            if saw_lexeme:
                raise MalformedXmlError(f"entry {ident} has more than one Lexeme")
            if len(child):
                raise MalformedXmlError("Lexeme must hold text, not elements")
            lexeme = child.text or ""
            saw_lexeme = True
        elif child.tag == "Content":
            if saw_content:
                raise MalformedXmlError(f"entry {ident} has more than one Content")
            content = _parse_content(child, strict)
            saw_content = True
        else:
            _unexpected(strict, f"unknown element {child.tag!r} inside Entry")
    return LexiconEntry(ident, lexeme, content)


def serialize_lexicon(lexicon: Lexicon) -> bytes:
    """Serialize a lexicon to the canonical document form.

    Entries are written in list order (lexicons are ordered documents,
    unlike graphs); the signal element, when present, wraps them.
    """
    lines = [XML_DECLARATION]
    if lexicon.signal is None and not lexicon.entries:
        lines.append("<AtlasSignal/>")
    else:
        lines.append("<AtlasSignal>")
        if lexicon.signal is not None:
            attrs = _attr_string(
                [
                    ("SignalID", lexicon.signal.id),
                    ("Class", lexicon.signal.signal_class),
                    ("Format", lexicon.signal.format),
                    ("Encoding", lexicon.signal.encoding),
                    ("Comment", lexicon.signal.comment),
                ]
            )
            if lexicon.entries:
                lines.append(f"  <Signal{attrs}>")
                for entry in lexicon.entries:
                    lines.extend(_entry_lines(entry, 2))
                lines.append("  </Signal>")
            else:
                lines.append(f"  <Signal{attrs}/>")
        else:
            for entry in lexicon.entries:
                lines.extend(_entry_lines(entry, 1))
        lines.append("</AtlasSignal>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _entry_lines(entry: LexiconEntry, depth: int) -> list[str]:
    pad = "  " * depth
    lines = [f'{pad}<Entry ID="{_esc_attr(entry.id)}">']
    lines.append(f"{pad}  <Lexeme>{_esc(entry.lexeme)}</Lexeme>")
    lines.extend(_content_lines(entry.content, depth + 1, "Content"))
    lines.append(f"{pad}</Entry>")
    return lines
