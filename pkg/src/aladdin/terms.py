"""RDF term model for broadcast payloads.

Payload graphs are tiny and blank-node-free, which keeps equality plain set
equality and gives every term a single canonical rendering. The rendering
defined here doubles as the sort key that makes text and binary
serializations canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Optional, Union

# Characters that can never appear in an IRI here: anything that would break
# the <...> rendering or the one-triple-per-line text format.
_IRI_BAD = re.compile(r'[\x00-\x20\x7f<>"{}|^`\\]')
_IRI_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_LANG_TAG = re.compile(r"^[A-Za-z0-9-]+$")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        v = self.value
        if "://" not in v and not _IRI_SCHEME.match(v):
            raise ValueError(f"not an absolute IRI: {v!r}")
        m = _IRI_BAD.search(v)
        if m:
            raise ValueError(f"illegal character {m.group()!r} in IRI: {v!r}")
        if any(ch.isspace() for ch in v):
            raise ValueError(f"whitespace in IRI: {v!r}")


@dataclass(frozen=True)
class Literal:
    """A literal term: plain, language-tagged, or typed.

    At most one of ``lang`` and ``datatype`` may be set. Literals compare
    lexically; no datatype value-space interpretation happens anywhere.
    """

    lexical: str
    lang: Optional[str] = None
    datatype: Optional[Iri] = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise ValueError("literal cannot be both language-tagged and typed")
        if self.lang is not None and not _LANG_TAG.match(self.lang):
            raise ValueError(f"bad language tag: {self.lang!r}")


Term = Union[Iri, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, Iri):
            raise TypeError("triple subject must be an Iri")
        if not isinstance(self.predicate, Iri):
            raise TypeError("triple predicate must be an Iri")
        if not isinstance(self.object, (Iri, Literal)):
            raise TypeError("triple object must be an Iri or Literal")


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def render_term(term: Term) -> str:
    """Canonical single-token rendering of a term (the text-format syntax)."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    quoted = f'"{escape_literal(term.lexical)}"'
    if term.lang is not None:
        return f"{quoted}@{term.lang}"
    if term.datatype is not None:
        return f"{quoted}^^<{term.datatype.value}>"
    return quoted


def render_triple(t: Triple) -> str:
    """One canonical text line for a triple, without the newline."""
    return f"{render_term(t.subject)} {render_term(t.predicate)} {render_term(t.object)} ."


def term_sort_key(term: Term) -> bytes:
    return render_term(term).encode("utf-8")


def triple_sort_key(t: Triple) -> bytes:
    return render_triple(t).encode("utf-8")


@total_ordering
class Graph:
    """A set of triples. Equality is set equality; iteration is canonical.

    Iteration yields triples sorted by their rendered byte sequence, so any
    code that walks a graph is deterministic regardless of hash seeds.
    """

    __slots__ = ("_triples", "_sorted")

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples = frozenset(triples)
        self._sorted: Optional[tuple[Triple, ...]] = None

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def sorted_triples(self) -> tuple[Triple, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._triples, key=triple_sort_key))
        return self._sorted

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted_triples())

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __lt__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return sorted(map(triple_sort_key, self._triples)) < sorted(
            map(triple_sort_key, other._triples)
        )

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def union(self, other: "Graph") -> "Graph":
        return Graph(self._triples | other._triples)


# ------------------------------------------------------------- vocabulary

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
FOAF_NS = "http://xmlns.com/foaf/0.1/"
DCTERMS_NS = "http://purl.org/dc/terms/"
GEO_NS = "http://www.w3.org/2003/01/geo/wgs84_pos#"
ALADDIN_NS = "http://example.org/aladdin/vocab#"

RDF_TYPE = Iri(RDF_NS + "type")
RDFS_SEEALSO = Iri(RDFS_NS + "seeAlso")

# Broadcast message classes: a generic Message plus one subclass per
# application family (signage, offers, menus, schedules, exhibits, driver
# certification).
MESSAGE_CLASSES = frozenset(
    Iri(ALADDIN_NS + name)
    for name in (
        "Message",
        "Notice",
        "Offer",
        "Menu",
        "Timetable",
        "Exhibit",
        "Certification",
    )
)
