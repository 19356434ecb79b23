"""Filtered sub-documents selected by five criteria.

A projection is materialized data, not a live view: each projected block
keeps its source location and anchor so exporters can link back into the
full document.  Manual, regex and index-based projections keep document
order; version and recursive projections use chain order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .clauses import strip_refs
from .markup import display_text
from .model import (
    Block,
    ClausePacket,
    Document,
    LitweaveError,
    Location,
    Paragraph,
    PredicateIndicator,
    RelationDefinition,
    UnknownElementError,
    locate,
)
from .versions import chain, resolve

MANUAL = "manual"
REGEX = "regex"
RECURSIVE = "recursive"
VERSION = "version"
INDEX_BASED = "index_based"


class BadPatternError(LitweaveError):
    code = "BAD_PATTERN"


class UnknownEntryError(LitweaveError):
    code = "UNKNOWN_ENTRY"


@dataclass(frozen=True)
class ProjectedBlock:
    """A selected block; ``packet`` narrows the selection to one packet of a
    relation (the location anchor then points at the packet)."""

    location: Location
    block: Block
    packet: ClausePacket | None = None


@dataclass(frozen=True)
class Highlight:
    """A matched word: character span within the displayed text of the item
    at ``location``."""

    location: Location
    span: tuple[int, int]
    word: str


@dataclass(frozen=True)
class UnresolvedGoal:
    """A predication in a chained packet that has no definition reference and
    is not a direct recursive call."""

    relation: str
    packet: str
    indicator: PredicateIndicator
    location: Location


@dataclass
class Projection:
    criterion: str
    params: dict[str, str]
    blocks: list[ProjectedBlock]
    highlights: list[Highlight] = field(default_factory=list)
    unresolved: list[UnresolvedGoal] = field(default_factory=list)


def _packet_item(doc: Document, rel: RelationDefinition, pkt: ClausePacket) -> ProjectedBlock:
    return ProjectedBlock(locate(doc, pkt.packet_id), rel, pkt)


def project_manual(doc: Document, element_ids: list[str]) -> Projection:
    """Whole enclosing paragraph or relation definition for each selected
    element, deduplicated, in document order."""
    wanted: set[str] = set()
    for element_id in element_ids:
        block = _enclosing_block(doc, element_id)
        wanted.add(block.para_id if isinstance(block, Paragraph) else block.rel_id)
    blocks = []
    for sec, ordinal, block in doc.walk_blocks():
        block_id = block.para_id if isinstance(block, Paragraph) else block.rel_id
        if block_id in wanted:
            blocks.append(ProjectedBlock(locate(doc, block_id), block))
    return Projection(MANUAL, {"ids": ",".join(element_ids)}, blocks)


def _enclosing_block(doc: Document, element_id: str) -> Block:
    for _, _, block in doc.walk_blocks():
        if isinstance(block, Paragraph):
            if block.para_id == element_id:
                return block
        else:
            if block.rel_id == element_id:
                return block
            if block.packet(element_id) is not None:
                return block
    raise UnknownElementError(f"no element with id {element_id!r}")


def project_regex(doc: Document, pattern: str) -> Projection:
    """All paragraphs and packets whose displayed text matches ``pattern``.

    The text searched is what exporters show: paragraph text with index
    marks unwrapped, packet code with reference suffixes stripped.  Matches
    are widened to whole whitespace-delimited words.
    """
    try:
        compiled = re.compile(pattern)
    except re.error as exc:
        raise BadPatternError(f"bad pattern {pattern!r}: {exc}") from None

    blocks: list[ProjectedBlock] = []
    highlights: list[Highlight] = []

    def scan(text: str, location: Location) -> bool:
        spans: list[tuple[int, int]] = []
        for m in compiled.finditer(text):
            spans.append(_word_span(text, m.start(), m.end()))
        if not spans:
            return False
        for span in dict.fromkeys(spans):
            highlights.append(Highlight(location, span, text[span[0] : span[1]]))
        return True

    for sec, ordinal, block in doc.walk_blocks():
        if isinstance(block, Paragraph):
            loc = locate(doc, block.para_id)
            if scan(display_text(block.text), loc):
                blocks.append(ProjectedBlock(loc, block))
        else:
            for pkt in block.packets:
                loc = locate(doc, pkt.packet_id)
                if scan(strip_refs(pkt.raw_text, pkt.clauses), loc):
                    blocks.append(_packet_item(doc, block, pkt))
    return Projection(REGEX, {"pattern": pattern}, blocks, highlights=highlights)


def _word_span(text: str, start: int, end: int) -> tuple[int, int]:
    """Widen a match to the whitespace-delimited word(s) containing it."""
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    while end < len(text) and not text[end].isspace():
        end += 1
    return (start, end)


def project_recursive(doc: Document, relation_ids: list[str]) -> Projection:
    """Every packet in the chain of each selected relation, in chain order,
    with UNRESOLVED annotations for predications that still lack a
    definition reference and are not direct recursive calls."""
    blocks: list[ProjectedBlock] = []
    unresolved: list[UnresolvedGoal] = []
    seen_packets: set[str] = set()
    for rel_id in relation_ids:
        for step in chain(doc, rel_id):
            if step.packet in seen_packets:
                continue
            seen_packets.add(step.packet)
            rel = doc.relation(step.relation)
            assert rel is not None
            pkt = rel.packet(step.packet)
            assert pkt is not None
            blocks.append(_packet_item(doc, rel, pkt))
            for clause in pkt.clauses:
                for goal in clause.body_goals:
                    if goal.def_ref is None and goal.indicator != rel.indicator:
                        unresolved.append(
                            UnresolvedGoal(
                                relation=rel.rel_id,
                                packet=pkt.packet_id,
                                indicator=goal.indicator,
                                location=locate(doc, pkt.packet_id),
                            )
                        )
    return Projection(
        RECURSIVE, {"relations": ",".join(relation_ids)}, blocks, unresolved=unresolved
    )


def project_version(doc: Document, name: str) -> Projection:
    """The packets composing a named version, in chain order."""
    pairs = resolve(doc, name)
    blocks = [_packet_item(doc, rel, pkt) for rel, pkt in pairs]
    return Projection(VERSION, {"name": name}, blocks)


def project_index(doc: Document, index_kind: str, entry_key: str) -> Projection:
    """Projection from an index entry.

    For the versions index: the relation definitions that are part of the
    version, and only them, in chain order.  For the cross-reference index:
    every relation definition whose indicator matches the entry, in document
    order.
    """
    if index_kind == "versions":
        if doc.version(entry_key) is None:
            raise UnknownEntryError(f"no versions-index entry {entry_key!r}")
        blocks = []
        seen: set[str] = set()
        for rel, _ in resolve(doc, entry_key):
            if rel.rel_id not in seen:
                seen.add(rel.rel_id)
                blocks.append(ProjectedBlock(locate(doc, rel.rel_id), rel))
        return Projection(INDEX_BASED, {"index": index_kind, "entry": entry_key}, blocks)
    if index_kind == "crossref":
        name, _, arity_text = entry_key.partition("/")
        arity = int(arity_text) if arity_text else None
        wanted = PredicateIndicator(name, arity)
        blocks = [
            ProjectedBlock(locate(doc, rel.rel_id), rel)
            for rel in doc.relations()
            if rel.indicator == wanted
        ]
        if not blocks:
            raise UnknownEntryError(f"no cross-reference entry {entry_key!r}")
        return Projection(INDEX_BASED, {"index": index_kind, "entry": entry_key}, blocks)
    raise UnknownEntryError(f"unknown index kind {index_kind!r}")
