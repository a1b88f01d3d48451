"""Compact binary encoding for payload graphs.

Keeps on-air payloads small: IRIs are split into a (prefix index, suffix)
pair against a table of seven built-in namespaces plus per-message dynamic
entries, terms are deduplicated into one table, and triples become three
16-bit term indices each. All multi-byte integers are big-endian.

Layout::

    u8   format version (0x01)
    u8   dynamic prefix count D
    D *  (u8 length, UTF-8 bytes)
    u16  term count T
    T *  tagged term (see _encode_term)
    u16  triple count N
    N *  (u16 subject, u16 predicate, u16 object) term indices

The encoding is canonical: set-equal graphs produce identical bytes. The
decoder is total over arbitrary input, either returning a graph or raising
one of the declared errors; trailing bytes after the triple section are
ignored.
"""

from __future__ import annotations

from collections import Counter

from .errors import (
    IndexOutOfRangeError,
    MalformedTermError,
    TooLargeError,
    TruncatedError,
    UnknownFormatVersionError,
)
from .terms import (
    ALADDIN_NS,
    DCTERMS_NS,
    FOAF_NS,
    GEO_NS,
    OWL_NS,
    RDF_NS,
    RDFS_NS,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
    term_sort_key,
)

FORMAT_VERSION = 0x01

# Fixed prefix table entries, indices 0..6. Dynamic entries follow.
STATIC_PREFIXES: tuple[str, ...] = (
    RDF_NS,
    RDFS_NS,
    OWL_NS,
    FOAF_NS,
    DCTERMS_NS,
    GEO_NS,
    ALADDIN_NS,
)

# Prefix indices are one byte, so the table can never exceed 256 entries.
_MAX_DYNAMIC = 256 - len(STATIC_PREFIXES)

_TAG_PREFIXED_IRI = 0x00
_TAG_FULL_IRI = 0x01
_TAG_PLAIN = 0x02
_TAG_LANG = 0x03
_TAG_TYPED = 0x04


def _u16(value: int) -> bytes:
    return value.to_bytes(2, "big")


def _fits_u8(data: bytes) -> bool:
    return len(data) <= 0xFF


def _namespace_split(value: str) -> tuple[str, str] | None:
    """Split an IRI after its last '#' or '/'; None when unusable."""
    cut = max(value.rfind("#"), value.rfind("/"))
    if cut <= 0:
        return None
    ns, suffix = value[: cut + 1], value[cut + 1 :]
    if not _fits_u8(ns.encode("utf-8")) or not _fits_u8(suffix.encode("utf-8")):
        return None
    return ns, suffix


def _static_match(value: str) -> tuple[int, str] | None:
    """Longest static prefix whose suffix still fits one length byte."""
    best: tuple[int, str] | None = None
    for idx, prefix in enumerate(STATIC_PREFIXES):
        if value.startswith(prefix) and _fits_u8(value[len(prefix):].encode("utf-8")):
            if best is None or len(prefix) > len(STATIC_PREFIXES[best[0]]):
                best = (idx, value[len(prefix):])
    return best


def _collect_terms(g: Graph) -> list[Term]:
    terms: set[Term] = set()
    for t in g.triples:
        terms.add(t.subject)
        terms.add(t.predicate)
        terms.add(t.object)
        if isinstance(t.object, Literal) and t.object.datatype is not None:
            terms.add(t.object.datatype)
    return sorted(terms, key=term_sort_key)


def _choose_dynamic(terms: list[Term]) -> list[str]:
    """Namespaces shared by two or more IRIs that no static entry covers."""
    counts: Counter[str] = Counter()
    for term in terms:
        if not isinstance(term, Iri) or _static_match(term.value):
            continue
        split = _namespace_split(term.value)
        if split and split[0] not in STATIC_PREFIXES:
            counts[split[0]] += 1
    qualifying = sorted(ns for ns, n in counts.items() if n >= 2)
    return qualifying[:_MAX_DYNAMIC]


def _encode_iri(value: str, prefix_index: dict[str, int]) -> bytes:
    match = _static_match(value)
    if match:
        idx, suffix = match
        raw = suffix.encode("utf-8")
        return bytes([_TAG_PREFIXED_IRI, idx, len(raw)]) + raw
    split = _namespace_split(value)
    if split and split[0] in prefix_index:
        ns, suffix = split
        raw = suffix.encode("utf-8")
        return bytes([_TAG_PREFIXED_IRI, prefix_index[ns], len(raw)]) + raw
    raw = value.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise TooLargeError(f"IRI of {len(raw)} bytes cannot be encoded")
    return bytes([_TAG_FULL_IRI]) + _u16(len(raw)) + raw


def _encode_term(term: Term, prefix_index: dict[str, int], term_index: dict[Term, int]) -> bytes:
    if isinstance(term, Iri):
        return _encode_iri(term.value, prefix_index)
    raw = term.lexical.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise TooLargeError(f"literal of {len(raw)} bytes cannot be encoded")
    if term.lang is not None:
        tag = term.lang.encode("ascii")
        if not _fits_u8(tag):
            raise TooLargeError("language tag too long")
        return bytes([_TAG_LANG, len(tag)]) + tag + _u16(len(raw)) + raw
    if term.datatype is not None:
        return bytes([_TAG_TYPED]) + _u16(term_index[term.datatype]) + _u16(len(raw)) + raw
    return bytes([_TAG_PLAIN]) + _u16(len(raw)) + raw


def encode_compact(g: Graph) -> bytes:
    """Encode a graph; inverse of decode_compact."""
    if len(g) > 0xFFFF:
        raise TooLargeError(f"{len(g)} triples exceeds the 16-bit triple count")
    terms = _collect_terms(g)
    if len(terms) > 0xFFFF:
        raise TooLargeError(f"{len(terms)} terms exceeds the 16-bit term count")

    dynamic = _choose_dynamic(terms)
    prefix_index = {ns: len(STATIC_PREFIXES) + i for i, ns in enumerate(dynamic)}
    term_index = {term: i for i, term in enumerate(terms)}

    out = bytearray([FORMAT_VERSION, len(dynamic)])
    for ns in dynamic:
        raw = ns.encode("utf-8")
        out.append(len(raw))
        out.extend(raw)

    out.extend(_u16(len(terms)))
    for term in terms:
        out.extend(_encode_term(term, prefix_index, term_index))

    rows = sorted(
        (term_index[t.subject], term_index[t.predicate], term_index[t.object])
        for t in g.triples
    )
    out.extend(_u16(len(rows)))
    for s, p, o in rows:
        out.extend(_u16(s) + _u16(p) + _u16(o))
    return bytes(out)


class _Cursor:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedError(
                f"needed {n} bytes at offset {self.pos}, only {len(self.data) - self.pos} left"
            )
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return int.from_bytes(self.take(2), "big")


def _decode_text(raw: bytes, what: str) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedTermError(f"{what} is not valid UTF-8: {exc}") from None


def decode_compact(data: bytes) -> Graph:
    """Decode bytes produced by encode_compact back into a graph."""
    cur = _Cursor(data)
    version = cur.u8()
    if version != FORMAT_VERSION:
        raise UnknownFormatVersionError(f"format version {version:#04x}")

    table = list(STATIC_PREFIXES)
    for _ in range(cur.u8()):
        table.append(_decode_text(cur.take(cur.u8()), "dynamic prefix"))

    term_count = cur.u16()
    # Typed literals may reference datatype terms in either direction, so
    # resolve datatype indices in a second pass.
    raw_terms: list[tuple] = []
    for _ in range(term_count):
        tag = cur.u8()
        if tag == _TAG_PREFIXED_IRI:
            idx = cur.u8()
            if idx >= len(table):
                raise IndexOutOfRangeError(f"prefix index {idx} beyond table of {len(table)}")
            suffix = _decode_text(cur.take(cur.u8()), "IRI suffix")
            raw_terms.append(("iri", table[idx] + suffix))
        elif tag == _TAG_FULL_IRI:
            raw_terms.append(("iri", _decode_text(cur.take(cur.u16()), "IRI")))
        elif tag == _TAG_PLAIN:
            raw_terms.append(("plain", _decode_text(cur.take(cur.u16()), "literal")))
        elif tag == _TAG_LANG:
            lang = _decode_text(cur.take(cur.u8()), "language tag")
            raw_terms.append(("lang", _decode_text(cur.take(cur.u16()), "literal"), lang))
        elif tag == _TAG_TYPED:
            dt_index = cur.u16()
            raw_terms.append(("typed", _decode_text(cur.take(cur.u16()), "literal"), dt_index))
        else:
            raise MalformedTermError(f"unknown term tag {tag:#04x}")

    def build(record: tuple) -> Term:
        try:
            if record[0] == "iri":
                return Iri(record[1])
            if record[0] == "plain":
                return Literal(record[1])
            if record[0] == "lang":
                return Literal(record[1], lang=record[2])
            dt_index = record[2]
            if dt_index >= term_count:
                raise IndexOutOfRangeError(f"datatype index {dt_index} beyond {term_count} terms")
            if raw_terms[dt_index][0] != "iri":
                raise MalformedTermError("datatype index does not name an IRI")
            return Literal(record[1], datatype=Iri(raw_terms[dt_index][1]))
        except ValueError as exc:
            raise MalformedTermError(str(exc)) from None

    terms = [build(rec) for rec in raw_terms]

    triples = []
    for _ in range(cur.u16()):
        s, p, o = cur.u16(), cur.u16(), cur.u16()
        for idx in (s, p, o):
            if idx >= term_count:
                raise IndexOutOfRangeError(f"term index {idx} beyond {term_count} terms")
        if not isinstance(terms[s], Iri):
            raise MalformedTermError("triple subject index names a literal")
        if not isinstance(terms[p], Iri):
            raise MalformedTermError("triple predicate index names a literal")
        triples.append(Triple(terms[s], terms[p], terms[o]))
    return Graph(triples)
