"""In-memory document model and structural queries.

A document is an ordered tree of sections holding paragraphs and relation
definitions.  Every other part of the system consumes these values; they are
treated as immutable after construction, and every "mutation" elsewhere in
the package builds a new document instead of editing one in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Union

from . import diagnostics as dg
from .diagnostics import Diagnostic


class LitweaveError(Exception):
    """Base class for operational failures; carries a machine-readable code."""

    code = "ERROR"


class UnknownElementError(LitweaveError):
    code = "UNKNOWN_ELEMENT"


@dataclass(frozen=True)
class PredicateIndicator:
    """A predicate name with its arity; arity None stands for a bare name
    (goal/directive packets are titled by name only)."""

    name: str
    arity: int | None

    def __str__(self) -> str:
        if self.arity is None:
            return self.name
        return f"{self.name}/{self.arity}"

    def sort_key(self) -> tuple[str, int]:
        return (self.name, -1 if self.arity is None else self.arity)


@dataclass(frozen=True)
class Location:
    """Stable document coordinate: section number path plus 1-based block
    ordinal, with a stable anchor label usable as an HTML fragment id."""

    section_path: str
    ordinal: int
    anchor: str

    def label(self) -> str:
        return f"\N{SECTION SIGN}{self.section_path}#{self.ordinal}"

    def sort_key(self) -> tuple[tuple[int, ...], int]:
        return (tuple(int(p) for p in self.section_path.split(".")), self.ordinal)


@dataclass(frozen=True)
class Goal:
    """One predication in a clause body.

    ``span`` is the character range of the predication inside the owning
    packet's raw text; ``ref_span`` covers the ``^REL_ID`` suffix when a
    definition reference is attached, so exporters can drop it precisely.
    """

    indicator: PredicateIndicator
    span: tuple[int, int]
    def_ref: str | None = None
    ref_span: tuple[int, int] | None = None


@dataclass(frozen=True)
class Clause:
    """A clause of a packet; directives have no head."""

    head: PredicateIndicator | None
    body_goals: tuple[Goal, ...]
    raw_text: str
    span: tuple[int, int]


@dataclass
class ClausePacket:
    """One version of a relation's code: parsed clauses plus verbatim source."""

    packet_id: str
    raw_text: str
    clauses: list[Clause]


@dataclass
class Paragraph:
    """Prose block; ``@ix{word}`` marks inside the text feed the word index."""

    para_id: str
    text: str


@dataclass
class RelationDefinition:
    """A titled relation owning one or more clause packets, one of which is
    designated current by ``cpr``."""

    rel_id: str
    name: str
    arity: int | None
    packets: list[ClausePacket]
    cpr: str
    comment: str | None = None
    assertions: str | None = None

    @property
    def indicator(self) -> PredicateIndicator:
        return PredicateIndicator(self.name, self.arity)

    def packet(self, packet_id: str) -> ClausePacket | None:
        for pkt in self.packets:
            if pkt.packet_id == packet_id:
                return pkt
        return None

    def current_packet(self) -> ClausePacket | None:
        return self.packet(self.cpr)


Block = Union[Paragraph, RelationDefinition]


@dataclass
class Section:
    """A numbered section; blocks precede any child sections."""

    number: str
    heading: str
    blocks: list[Block] = field(default_factory=list)
    children: list["Section"] = field(default_factory=list)


@dataclass
class VersionBinding:
    """A named program version: a root relation plus a snapshot map
    relation-id -> packet-id taken when the version was named."""

    version_name: str
    root: str
    bindings: dict[str, str]


@dataclass
class Document:
    title: str
    sections: list[Section]
    date: str | None = None
    authors: list[str] = field(default_factory=list)
    keywords: list[str] = field(default_factory=list)
    bibliography: list[str] = field(default_factory=list)
    version_table: list[VersionBinding] = field(default_factory=list)

    # -- traversal helpers ------------------------------------------------

    def walk_sections(self) -> Iterator[Section]:
        def rec(secs: list[Section]) -> Iterator[Section]:
            for sec in secs:
                yield sec
                yield from rec(sec.children)

        return rec(self.sections)

    def walk_blocks(self) -> Iterator[tuple[Section, int, Block]]:
        """All blocks in document order as (section, 1-based ordinal, block)."""
        for sec in self.walk_sections():
            for i, block in enumerate(sec.blocks, start=1):
                yield sec, i, block

    def relations(self) -> list[RelationDefinition]:
        return [b for _, _, b in self.walk_blocks() if isinstance(b, RelationDefinition)]

    def relation(self, rel_id: str) -> RelationDefinition | None:
        for rel in self.relations():
            if rel.rel_id == rel_id:
                return rel
        return None

    def version(self, name: str) -> VersionBinding | None:
        for binding in self.version_table:
            if binding.version_name == name:
                return binding
        return None

    def with_version_table(self, table: list[VersionBinding]) -> "Document":
        return replace(self, version_table=table)


def block_anchor(block: Block, section: Section, ordinal: int) -> str:
    if isinstance(block, RelationDefinition):
        return f"rel-{block.rel_id}"
    return f"loc-{section.number}-{ordinal}"


def locate(doc: Document, element_id: str) -> Location:
    """Location of the block enclosing ``element_id``.

    Accepts paragraph ids, relation ids, and packet ids; packet locations
    share the relation block's coordinate but anchor to the packet itself.
    """
    for sec, ordinal, block in doc.walk_blocks():
        if isinstance(block, Paragraph):
            if block.para_id == element_id:
                return Location(sec.number, ordinal, block_anchor(block, sec, ordinal))
        else:
            if block.rel_id == element_id:
                return Location(sec.number, ordinal, f"rel-{block.rel_id}")
            for pkt in block.packets:
                if pkt.packet_id == element_id:
                    return Location(sec.number, ordinal, f"pkt-{pkt.packet_id}")
    raise UnknownElementError(f"no element with id {element_id!r}")


def find_relation(doc: Document, name: str, arity: int | None = None) -> list[RelationDefinition]:
    """All relations named ``name`` in document order; ``arity`` narrows the
    match when given, otherwise any arity (including none) matches."""
    found = []
    for rel in doc.relations():
        if rel.name != name:
            continue
        if arity is not None and rel.arity != arity:
            continue
        found.append(rel)
    return found


def validate(doc: Document) -> list[Diagnostic]:
    """Check every structural invariant; an empty result means the document
    is accepted by every other operation in the package."""
    diags: list[Diagnostic] = []

    def at(element_id: str) -> Location | None:
        try:
            return locate(doc, element_id)
        except UnknownElementError:
            return None

    if not doc.title.strip():
        diags.append(Diagnostic(dg.MISSING_TITLE, "document has no title"))
    if not doc.sections:
        diags.append(Diagnostic(dg.NO_SECTION, "document has no sections"))

    relations = doc.relations()
    if not relations:
        diags.append(Diagnostic(dg.NO_RELATION, "document defines no relation"))

    # Global id uniqueness over paragraphs, relations, and packets.
    seen: dict[str, str] = {}
    for sec, ordinal, block in doc.walk_blocks():
        ids: list[str]
        if isinstance(block, Paragraph):
            ids = [block.para_id]
        else:
            ids = [block.rel_id] + [p.packet_id for p in block.packets]
        for element_id in ids:
            if element_id in seen:
                diags.append(
                    Diagnostic(
                        dg.DUP_ID,
                        f"id {element_id!r} already used by {seen[element_id]}",
                        location=Location(sec.number, ordinal, block_anchor(block, sec, ordinal)),
                    )
                )
            else:
                seen[element_id] = f"\N{SECTION SIGN}{sec.number}#{ordinal}"

    # Section numbers must match tree position.
    def check_numbers(secs: list[Section], prefix: str) -> None:
        for k, sec in enumerate(secs, start=1):
            expected = f"{prefix}{k}"
            if sec.number != expected:
                diags.append(
                    Diagnostic(
                        dg.UNEXPECTED_DIRECTIVE,
                        f"section number {sec.number!r} does not match tree position {expected!r}",
                    )
                )
            check_numbers(sec.children, f"{expected}.")

    check_numbers(doc.sections, "")

    by_id = {rel.rel_id: rel for rel in relations}
    for rel in relations:
        loc = at(rel.rel_id)
        if not rel.packets:
            diags.append(Diagnostic(dg.NO_PACKET, f"relation {rel.rel_id} has no packets", location=loc))
        if rel.packet(rel.cpr) is None:
            diags.append(
                Diagnostic(
                    dg.DANGLING_CPR,
                    f"relation {rel.rel_id}: cpr names no packet of this relation ({rel.cpr!r})",
                    location=loc,
                )
            )
        for pkt in rel.packets:
            pkt_loc = at(pkt.packet_id)
            for clause in pkt.clauses:
                if clause.head is None:
                    continue
                if rel.arity is None:
                    diags.append(
                        Diagnostic(
                            dg.GOAL_PACKET_HEAD,
                            f"relation {rel.rel_id} is a goal/directive packet but "
                            f"{pkt.packet_id} holds a clause for {clause.head}",
                            location=pkt_loc,
                        )
                    )
                elif clause.head != rel.indicator:
                    diags.append(
                        Diagnostic(
                            dg.HEAD_MISMATCH,
                            f"clause head {clause.head} does not match relation title {rel.indicator}",
                            severity=dg.WARNING,
                            location=pkt_loc,
                        )
                    )
                for goal in clause.body_goals:
                    if goal.def_ref is None:
                        continue
                    target = by_id.get(goal.def_ref)
                    if target is None:
                        diags.append(
                            Diagnostic(
                                dg.DANGLING_DEF,
                                f"goal {goal.indicator} references unknown relation id {goal.def_ref!r}",
                                location=pkt_loc,
                            )
                        )
                    elif target.indicator != goal.indicator:
                        diags.append(
                            Diagnostic(
                                dg.ARITY_MISMATCH,
                                f"goal {goal.indicator} references {goal.def_ref} "
                                f"which defines {target.indicator}",
                                severity=dg.WARNING,
                                location=pkt_loc,
                            )
                        )

    names_seen: set[str] = set()
    for binding in doc.version_table:
        if binding.version_name in names_seen:
            diags.append(
                Diagnostic(dg.DUP_VERSION, f"version name {binding.version_name!r} bound twice")
            )
        names_seen.add(binding.version_name)
        if binding.root not in binding.bindings:
            diags.append(
                Diagnostic(
                    dg.BAD_ROOT,
                    f"version {binding.version_name}: root {binding.root} is not bound",
                )
            )
        for rel_id, pkt_id in binding.bindings.items():
            rel = by_id.get(rel_id)
            if rel is None or rel.packet(pkt_id) is None:
                diags.append(
                    Diagnostic(
                        dg.STALE_BINDING,
                        f"version {binding.version_name}: {rel_id}={pkt_id} "
                        "names no existing packet of that relation",
                    )
                )

    return diags
