"""Text format and validation for broadcast payload graphs.

The authoring format is a line-oriented triple grammar: each line is
``<subject> <predicate> <object> .`` where terms are ``<iri>``, ``"text"``,
``"text"@lang`` or ``"text"^^<iri>``. Blank lines and ``#`` comment lines
are skipped. Blank nodes are rejected outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PayloadSyntaxError, UnsupportedTermError
from .terms import (
    MESSAGE_CLASSES,
    RDF_TYPE,
    RDFS_SEEALSO,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
    _UNESCAPES,
    render_triple,
    triple_sort_key,
)

# Default cap on payload size, in triples. Broadcast payloads carry just
# enough to classify the message plus links out; anything bigger belongs
# behind a link.
MAX_PAYLOAD_TRIPLES = 64


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of payload validation: ok iff no violations."""

    violations: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(code for code, _ in self.violations)


class _Lexer:
    """Single-line term tokenizer with 1-based column tracking."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str, at: int | None = None) -> PayloadSyntaxError:
        col = (self.pos if at is None else at) + 1
        return PayloadSyntaxError(self.line_no, col, message)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _read_iri(self) -> Iri:
        start = self.pos
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.error("unterminated IRI", at=start)
        raw = self.text[start + 1 : end]
        self.pos = end + 1
        try:
            return Iri(raw)
        except ValueError as exc:
            raise self.error(str(exc), at=start) from None

    def _read_quoted(self) -> str:
        start = self.pos
        out: list[str] = []
        i = self.pos + 1
        while i < len(self.text):
            ch = self.text[i]
            if ch == "\\":
                if i + 1 >= len(self.text):
                    raise self.error("dangling escape", at=i)
                esc = self.text[i + 1]
                if esc not in _UNESCAPES:
                    raise self.error(f"unknown escape \\{esc}", at=i)
                out.append(_UNESCAPES[esc])
                i += 2
            elif ch == '"':
                self.pos = i + 1
                return "".join(out)
            else:
                out.append(ch)
                i += 1
        raise self.error("unterminated literal", at=start)

    def read_term(self, allow_variable: bool = False):
        """Read one term. Returns Iri, Literal, or (with allow_variable) a
        bare ``?name`` string token."""
        self.skip_ws()
        if self.at_end():
            raise self.error("expected a term")
        ch = self.peek()
        if ch == "<":
            return self._read_iri()
        if ch == "_":
            raise UnsupportedTermError(self.line_no)
        if ch == "?" and allow_variable:
            start = self.pos
            self.pos += 1
            name_start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[name_start : self.pos]
            if not name:
                raise self.error("variable needs a name", at=start)
            return "?" + name
        if ch == '"':
            lexical = self._read_quoted()
            if self.peek() == "@":
                self.pos += 1
                tag_start = self.pos
                while self.pos < len(self.text) and (
                    self.text[self.pos].isalnum() or self.text[self.pos] == "-"
                ):
                    self.pos += 1
                tag = self.text[tag_start : self.pos]
                try:
                    return Literal(lexical, lang=tag)
                except ValueError as exc:
                    raise self.error(str(exc), at=tag_start - 1) from None
            if self.text.startswith("^^", self.pos):
                self.pos += 2
                if self.peek() != "<":
                    raise self.error("datatype must be an IRI")
                return Literal(lexical, datatype=self._read_iri())
            return Literal(lexical)
        raise self.error(f"unexpected character {ch!r}")


def _parse_line(line: str, line_no: int) -> Triple:
    lex = _Lexer(line, line_no)
    subject = lex.read_term()
    if not isinstance(subject, Iri):
        raise lex.error("subject must be an IRI", at=0)
    pred_at = lex.pos
    predicate = lex.read_term()
    if not isinstance(predicate, Iri):
        raise lex.error("predicate must be an IRI", at=pred_at)
    obj = lex.read_term()
    lex.skip_ws()
    if lex.peek() != ".":
        raise lex.error("expected terminating '.'")
    lex.pos += 1
    lex.skip_ws()
    if not lex.at_end():
        raise lex.error("trailing content after '.'")
    return Triple(subject, predicate, obj)


def parse_text(text: str) -> Graph:
    """Parse payload text into a graph. Duplicate lines collapse."""
    triples: list[Triple] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        triples.append(_parse_line(line, line_no))
    return Graph(triples)


def serialize_text(g: Graph) -> str:
    """Canonical text: one line per triple, sorted by rendered bytes."""
    lines = sorted((render_triple(t) for t in g.triples), key=lambda s: s.encode("utf-8"))
    return "".join(line + "\n" for line in lines)


def validate_payload(g: Graph, max_triples: int = MAX_PAYLOAD_TRIPLES) -> ValidationReport:
    """Check that a graph is a well-formed broadcast payload.

    Required shape: exactly one subject typed as a message-vocabulary class,
    carrying at least one see-also link to an IRI, and no more than
    ``max_triples`` triples in total.
    """
    violations: list[tuple[str, str]] = []

    typed = sorted(
        {
            t.subject
            for t in g.triples
            if t.predicate == RDF_TYPE and isinstance(t.object, Iri) and t.object in MESSAGE_CLASSES
        }
    )
    if not typed:
        violations.append(("NoMessageNode", "no subject typed with a message class"))
    elif len(typed) > 1:
        listed = ", ".join(s.value for s in typed)
        violations.append(("MultipleMessageNodes", f"multiple typed message nodes: {listed}"))
    else:
        node = typed[0]
        has_link = any(
            t.subject == node and t.predicate == RDFS_SEEALSO and isinstance(t.object, Iri)
            for t in g.triples
        )
        if not has_link:
            violations.append(
                ("NoSeeAlsoLink", f"message node {node.value} has no see-also IRI link")
            )

    if len(g) > max_triples:
        violations.append(
            ("TooManyTriples", f"{len(g)} triples exceeds the cap of {max_triples}")
        )

    return ValidationReport(tuple(violations))


def message_class_of(g: Graph) -> Iri | None:
    """The message class of a valid payload's single typed node.

    If the node carries several vocabulary classes the lexicographically
    first is reported.
    """
    classes = sorted(
        t.object
        for t in g.triples
        if t.predicate == RDF_TYPE and isinstance(t.object, Iri) and t.object in MESSAGE_CLASSES
    )
    return classes[0] if classes else None
