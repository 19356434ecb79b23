"""Weave a document, a version, a packet, an index, or a projection into
ASCII, LaTeX, or hyperlinked HTML.

All exporters are deterministic: the same document and request produce
byte-identical output.  The HTML anchor scheme (``rel-<id>``, ``pkt-<id>``,
``ver-<name>``, ``loc-<section>-<ordinal>``, ``sec-<number>`` for headings)
is a compatibility contract; a hyperlink is only emitted when its target
anchor is part of the same output, so partial exports never dangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..clauses import strip_refs
from ..model import ClausePacket, Document, LitweaveError, RelationDefinition
from ..projections import Projection
from ..versions import UnknownVersionError, resolve

ASCII = "ascii"
LATEX = "latex"
HTML = "html"

INDEX_KINDS = ("crossref", "versions", "words")


class UnresolvableScopeError(LitweaveError):
    code = "UNRESOLVABLE_SCOPE"


@dataclass(frozen=True)
class Scope:
    """What to export: the whole document, one version, one packet, one
    index, or a previously computed projection."""

    kind: str
    name: str | None = None
    projection: Projection | None = None

    @classmethod
    def whole(cls) -> "Scope":
        return cls("document")

    @classmethod
    def version(cls, name: str) -> "Scope":
        return cls("version", name=name)

    @classmethod
    def packet(cls, packet_id: str) -> "Scope":
        return cls("packet", name=packet_id)

    @classmethod
    def index(cls, kind: str) -> "Scope":
        return cls("index", name=kind)

    @classmethod
    def of_projection(cls, projection: Projection) -> "Scope":
        return cls("projection", projection=projection)

    def describe(self) -> str:
        if self.kind == "document":
            return "document"
        if self.kind == "projection":
            assert self.projection is not None
            return f"projection ({self.projection.criterion})"
        return f"{self.kind} {self.name}"


@dataclass(frozen=True)
class ExportRequest:
    scope: Scope
    format: str
    output_path: str


def version_pairs(doc: Document, name: str) -> list[tuple[RelationDefinition, ClausePacket]]:
    if doc.version(name) is None:
        raise UnresolvableScopeError(f"no version named {name!r}")
    return resolve(doc, name)


def find_packet(doc: Document, packet_id: str) -> tuple[RelationDefinition, ClausePacket]:
    for rel in doc.relations():
        pkt = rel.packet(packet_id)
        if pkt is not None:
            return rel, pkt
    raise UnresolvableScopeError(f"no packet with id {packet_id!r}")


def check_scope(doc: Document, scope: Scope) -> None:
    """Raise UnresolvableScopeError unless the scope names something real."""
    if scope.kind == "document":
        return
    if scope.kind == "version":
        try:
            version_pairs(doc, scope.name or "")
        except UnknownVersionError as exc:
            raise UnresolvableScopeError(str(exc)) from None
        return
    if scope.kind == "packet":
        find_packet(doc, scope.name or "")
        return
    if scope.kind == "index":
        if scope.name not in INDEX_KINDS:
            raise UnresolvableScopeError(f"unknown index kind {scope.name!r}")
        return
    if scope.kind == "projection":
        if scope.projection is None:
            raise UnresolvableScopeError("projection scope without a projection")
        return
    raise UnresolvableScopeError(f"unknown scope kind {scope.kind!r}")


def version_badges(doc: Document) -> dict[str, list[str]]:
    """Version names decorating each relation title, sorted by name."""
    badges: dict[str, list[str]] = {}
    for binding in doc.version_table:
        for rel_id in binding.bindings:
            badges.setdefault(rel_id, []).append(binding.version_name)
    return {rel_id: sorted(names) for rel_id, names in badges.items()}


def packet_display(pkt: ClausePacket) -> str:
    """Packet code as every exporter shows it: reference suffixes stripped."""
    return strip_refs(pkt.raw_text, pkt.clauses)


def relation_title(rel: RelationDefinition) -> str:
    return f"{rel.indicator} ({rel.rel_id})"


from . import ascii_format, html_format, latex_format  # noqa: E402


def export_ascii(doc: Document, scope: Scope | None = None) -> str:
    scope = scope or Scope.whole()
    check_scope(doc, scope)
    return ascii_format.render(doc, scope)


def export_latex(doc: Document, scope: Scope | None = None) -> str:
    scope = scope or Scope.whole()
    check_scope(doc, scope)
    return latex_format.render(doc, scope)


def export_html(doc: Document, scope: Scope | None = None) -> dict[str, str]:
    scope = scope or Scope.whole()
    check_scope(doc, scope)
    return html_format.render(doc, scope)
