"""Structured label payloads carried by arcs and annotations.

A content value is exactly one of three variants: a literal string, a
cross-reference to another annotation by id, or an ordered list of
feature/value pairs whose values are themselves content values. Feature
names may legally repeat (a lexicon entry can hold several "Synonym"
features), so a feature set is a list of pairs, not a mapping.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass
class Literal:
    """A bare string label, e.g. a part-of-speech tag or a word."""

    text: str


@dataclass
class Xref:
    """A reference to another annotation or arc by its unique id."""

    target: str


@dataclass
class FeatureSet:
    """An ordered list of (feature, value) pairs; names may repeat."""

    pairs: list[tuple[str, "Content"]] = field(default_factory=list)

    def get(self, feature: str) -> "Content | None":
        """Return the value of the first pair named *feature*, if any."""
        for name, value in self.pairs:
            if name == feature:
                return value
        return None

    def get_all(self, feature: str) -> list["Content"]:
        """Return the values of every pair named *feature*, in order."""
        return [value for name, value in self.pairs if name == feature]

    def add(self, feature: str, value: "Content | str") -> None:
        """Append a pair, keeping any existing pairs with the same name."""
        self.pairs.append((feature, as_content(value)))

    def set(self, feature: str, value: "Content | str") -> None:
        """Store *feature* with exactly one value (last write wins).

        The first existing pair with that name is replaced in place and
        any later duplicates are dropped; a missing feature is appended.
        """
        value = as_content(value)
        replaced = False
        kept: list[tuple[str, Content]] = []
        for name, old in self.pairs:
            if name != feature:
                kept.append((name, old))
            elif not replaced:
                kept.append((feature, value))
                replaced = True
        if not replaced:
            kept.append((feature, value))
        self.pairs[:] = kept


Content = Union[Literal, Xref, FeatureSet]


def as_content(value: Content | str) -> Content:
    """Coerce *value* to a content variant (plain strings become literals)."""
    if isinstance(value, (Literal, Xref, FeatureSet)):
        return value
    if isinstance(value, str):
        return Literal(value)
    raise TypeError(f"not a content value: {value!r}")


def copy_content(content: Content) -> Content:
    return copy.deepcopy(content)


def iter_xrefs(content: Content) -> Iterator[str]:
    """Yield every cross-reference target inside *content*, recursively."""
    if isinstance(content, Xref):
        yield content.target
    elif isinstance(content, FeatureSet):
        for _, value in content.pairs:
            yield from iter_xrefs(value)


def summarize(content: Content) -> str:
    """One-line human-readable rendering, used by query output."""
    if isinstance(content, Literal):
        return content.text
    if isinstance(content, Xref):
        return f"->{content.target}"
    inner = ", ".join(f"{name}={summarize(value)}" for name, value in content.pairs)
    return "{" + inner + "}"
