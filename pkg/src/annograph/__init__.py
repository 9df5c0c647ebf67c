"""Toolkit for linguistic annotation graphs and their generalizations.

The model in short: an annotation graph is a labeled acyclic digraph
whose nodes may be anchored to timeline offsets; an annotation set
generalizes this to regions anchored in n-dimensional signal spaces.
Stand-off XML documents carry both graphs and lexicons between tools,
and column-format transcription tiers can be merged into graphs.
"""

from .aif import (
    Lexicon,
    LexiconEntry,
    parse_aif,
    parse_lexicon,
    resolve_xrefs,
    serialize_aif,
    serialize_lexicon,
)
from .content import Content, FeatureSet, Literal, Xref, as_content, summarize
from .errors import (
    AifWarning,
    AnnotationError,
    ConflictingUnitsError,
    CycleIntroducedError,
    DanglingNodeRefError,
    DanglingXrefError,
    DimensionMismatchError,
    DuplicateIdError,
    InvalidGraphError,
    MalformedLineError,
    MalformedXmlError,
    NonIntegerOffsetError,
    NotMergeableError,
    ReversedIntervalError,
    SignalGroupMismatchError,
    TierError,
    TimeOrderViolationError,
    UnknownAnchorError,
    UnknownAnnotationError,
    UnknownArcError,
    UnknownElementError,
    UnknownNodeError,
    UnknownSignalGroupError,
    UnknownTimelineError,
    UnsupportedConversionError,
    UnsupportedRegionKindError,
)
from .graph import (
    AnnotationGraph,
    Arc,
    Node,
    SignalDescriptor,
    Timeline,
    as_offset,
)
from .sets import (
    Anchor,
    Annotation,
    AnnotationSet,
    Region,
    RegionKind,
    SignalGroup,
    from_graph,
    to_graph,
)
from .tiers import ColumnTier, build_graph, parse_tier, serialize_tier
from .validation import ValidationReport, Violation

__version__ = "0.1.0"

__all__ = [
    "AifWarning",
    "Anchor",
    "Annotation",
    "AnnotationError",
    "AnnotationGraph",
    "AnnotationSet",
    "Arc",
    "ColumnTier",
    "ConflictingUnitsError",
    "Content",
    "CycleIntroducedError",
    "DanglingNodeRefError",
    "DanglingXrefError",
    "DimensionMismatchError",
    "DuplicateIdError",
    "FeatureSet",
    "InvalidGraphError",
    "Lexicon",
    "LexiconEntry",
    "Literal",
    "MalformedLineError",
    "MalformedXmlError",
    "Node",
    "NonIntegerOffsetError",
    "NotMergeableError",
    "Region",
    "RegionKind",
    "ReversedIntervalError",
    "SignalDescriptor",
    "SignalGroup",
    "SignalGroupMismatchError",
    "TierError",
    "Timeline",
    "TimeOrderViolationError",
    "UnknownAnchorError",
    "UnknownAnnotationError",
    "UnknownArcError",
    "UnknownElementError",
    "UnknownNodeError",
    "UnknownSignalGroupError",
    "UnknownTimelineError",
    "UnsupportedConversionError",
    "UnsupportedRegionKindError",
    "ValidationReport",
    "Violation",
    "Xref",
    "as_content",
    "as_offset",
    "build_graph",
    "from_graph",
    "parse_aif",
    "parse_lexicon",
    "parse_tier",
    "resolve_xrefs",
    "serialize_aif",
    "serialize_lexicon",
    "serialize_tier",
    "summarize",
    "to_graph",
]
