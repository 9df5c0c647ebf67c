"""Exception and warning types shared across the library."""

from __future__ import annotations


class AnnotationError(Exception):
    """Base class for every error this library raises deliberately."""


# ---------------------------------------------------------------------------
# graph errors


class UnknownNodeError(AnnotationError):
    def __init__(self, node_id: str):
        super().__init__(f"unknown node: {node_id!r}")
        self.node_id = node_id


class UnknownArcError(AnnotationError):
    def __init__(self, arc_id: str):
        super().__init__(f"unknown arc: {arc_id!r}")
        self.arc_id = arc_id


class UnknownTimelineError(AnnotationError):
    def __init__(self, timeline_id: str):
        super().__init__(f"unknown timeline: {timeline_id!r}")
        self.timeline_id = timeline_id


class CycleIntroducedError(AnnotationError):
    """Rejected an arc insertion that would create a directed cycle.

    Self-loops are rejected through this error as well, a self-loop being
    the smallest possible cycle.
    """


class TimeOrderViolationError(AnnotationError):
    """Rejected a mutation that would order anchored nodes backwards.

    Raised when an insertion or anchoring would connect two nodes on the
    same timeline by a directed path along which offsets decrease.
    """

    def __init__(self, earlier_id: str, later_id: str, detail: str = ""):
        msg = f"offset order violated on path {earlier_id!r} -> {later_id!r}"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)
        self.earlier_id = earlier_id
        self.later_id = later_id


class DuplicateIdError(AnnotationError):
    def __init__(self, kind: str, ident: str):
        super().__init__(f"duplicate {kind} id: {ident!r}")
        self.kind = kind
        self.ident = ident


class NotMergeableError(AnnotationError):
    """The two arcs do not form a mergeable two-arc path."""


class InvalidGraphError(AnnotationError):
    """A graph failed validation where a well-formed graph was required.

    Carries the offending :class:`~annograph.validation.ValidationReport`
    as ``report``.
    """

    def __init__(self, report):
        lines = "; ".join(v.line() for v in list(report)[:3])
        more = len(report) - 3
        if more > 0:
            lines = f"{lines}; and {more} more"
        super().__init__(f"graph is not well formed: {lines}")
        self.report = report


# ---------------------------------------------------------------------------
# annotation-set errors


class UnknownAnchorError(AnnotationError):
    def __init__(self, anchor_id: str):
        super().__init__(f"unknown anchor: {anchor_id!r}")
        self.anchor_id = anchor_id


class UnknownAnnotationError(AnnotationError):
    def __init__(self, annotation_id: str):
        super().__init__(f"unknown annotation: {annotation_id!r}")
        self.annotation_id = annotation_id


class UnknownSignalGroupError(AnnotationError):
    def __init__(self, group_id: str):
        super().__init__(f"unknown signal group: {group_id!r}")
        self.group_id = group_id


class DimensionMismatchError(AnnotationError):
    def __init__(self, expected: int, got: int, what: str = "offset vector"):
        super().__init__(f"{what} has {got} dimension(s), expected {expected}")
        self.expected = expected
        self.got = got


class SignalGroupMismatchError(AnnotationError):
    """An anchor belongs to a different signal group than its region."""


class UnsupportedRegionKindError(AnnotationError):
    """The operation is only defined for one-dimensional intervals."""


# ---------------------------------------------------------------------------
# interchange-format errors


class MalformedXmlError(AnnotationError):
    """The document is not well-formed XML or breaks the format's shape."""


class UnknownElementError(AnnotationError):
    """Strict mode met an element or attribute outside the vocabulary."""


class DanglingNodeRefError(AnnotationError):
    def __init__(self, arc_id: str, node_id: str):
        super().__init__(f"arc {arc_id!r} references missing node {node_id!r}")
        self.arc_id = arc_id
        self.node_id = node_id


class DanglingXrefError(AnnotationError):
    def __init__(self, referrer: str, target: str):
        super().__init__(f"content of {referrer!r} references missing id {target!r}")
        self.referrer = referrer
        self.target = target


class ConflictingUnitsError(AnnotationError):
    def __init__(self, timeline_id: str, old: str, new: str):
        super().__init__(
            f"signal {timeline_id!r} carries conflicting units {old!r} and {new!r}"
        )
        self.timeline_id = timeline_id


class AifWarning(UserWarning):
    """Non-fatal oddity met while reading an interchange document."""


# ---------------------------------------------------------------------------
# column-tier errors

class TierError(AnnotationError):
    """Base class for column transcription parse errors; carries line_no."""

    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


class MalformedLineError(TierError):
    def __init__(self, line_no: int, text: str):
        super().__init__(line_no, f"expected 'start end label', got {text!r}")


class NonIntegerOffsetError(TierError):
    def __init__(self, line_no: int, text: str):
        super().__init__(line_no, f"offset is not an integer: {text!r}")


class ReversedIntervalError(TierError):
    def __init__(self, line_no: int, start: int, end: int):
        super().__init__(line_no, f"interval is reversed or empty: {start} >= {end}")
        self.start = start
        self.end = end


# ---------------------------------------------------------------------------
# CLI errors


class UnsupportedConversionError(AnnotationError):
    def __init__(self, src: str, dst: str):
        super().__init__(f"conversion {src} -> {dst} is not supported")
        self.src = src
        self.dst = dst
