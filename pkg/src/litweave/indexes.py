"""The three document indexes: cross reference, versions, and words.

Each index is a pure function of the document, built as structured data so
any exporter can render it and projections can select from it.  Entries list
locations in document order, deduplicated; the cross-reference index is
absolute, aggregating every relation with the same indicator independently
of versions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagnostics import Diagnostic
from .markup import ix_marks
from .model import (
    Document,
    Location,
    Paragraph,
    PredicateIndicator,
    UnknownElementError,
    locate,
)
from .versions import resolve_lenient

STYLE_DEFINITION = "def"
STYLE_CURRENT = "cpd"
STYLE_USE = "use"


@dataclass
class CrossRefEntry:
    """Everywhere one predicate indicator appears: where relations with it
    are titled, where their current packets sit, and where it is used
    (linked goals plus direct recursion)."""

    indicator: PredicateIndicator
    relation_locs: list[Location] = field(default_factory=list)
    cpd_locs: list[Location] = field(default_factory=list)
    use_locs: list[Location] = field(default_factory=list)


@dataclass
class VersionIndexEntry:
    version_name: str
    first_defined: Location | None
    members: list[tuple[str, Location]]
    problems: list[Diagnostic] = field(default_factory=list)


@dataclass
class WordIndexEntry:
    word: str
    locs: list[Location]


def _dedup(locs: list[Location]) -> list[Location]:
    seen = set()
    out = []
    for loc in locs:
        if loc not in seen:
            seen.add(loc)
            out.append(loc)
    return out


def cross_reference_index(doc: Document) -> list[CrossRefEntry]:
    """One entry per distinct indicator, sorted by name then arity.

    Uses count only linked goals (definition references) and direct-recursive
    calls; an unlinked same-name goal is a checker warning, not an index
    entry.
    """
    entries: dict[PredicateIndicator, CrossRefEntry] = {}

    def entry(ind: PredicateIndicator) -> CrossRefEntry:
        if ind not in entries:
            entries[ind] = CrossRefEntry(ind)
        return entries[ind]

    relations = doc.relations()
    by_id = {rel.rel_id: rel for rel in relations}
    for rel in relations:
        ent = entry(rel.indicator)
        ent.relation_locs.append(locate(doc, rel.rel_id))
        if rel.packet(rel.cpr) is not None:
            ent.cpd_locs.append(locate(doc, rel.cpr))
    for rel in relations:
        for pkt in rel.packets:
            pkt_loc = locate(doc, pkt.packet_id)
            for clause in pkt.clauses:
                for goal in clause.body_goals:
                    if goal.def_ref is not None:
                        target = by_id.get(goal.def_ref)
                        if target is not None:
                            entry(target.indicator).use_locs.append(pkt_loc)
                    elif goal.indicator == rel.indicator:
                        entry(rel.indicator).use_locs.append(pkt_loc)

    out = sorted(entries.values(), key=lambda e: e.indicator.sort_key())
    for ent in out:
        ent.relation_locs = _dedup(ent.relation_locs)
        ent.cpd_locs = _dedup(ent.cpd_locs)
        ent.use_locs = _dedup(ent.use_locs)
    return out


def versions_index(doc: Document) -> list[VersionIndexEntry]:
    """One entry per named version, sorted by name; members come from
    resolution, so their order is the chain order.  Stale bindings surface
    as per-entry problems rather than failures."""
    out = []
    for binding in sorted(doc.version_table, key=lambda b: b.version_name):
        pairs, problems = resolve_lenient(doc, binding.version_name)
        members = [(rel.rel_id, locate(doc, pkt.packet_id)) for rel, pkt in pairs]
        first = None
        root_pkt = binding.bindings.get(binding.root)
        if root_pkt is not None:
            try:
                first = locate(doc, root_pkt)
            except UnknownElementError:
                first = None
        out.append(
            VersionIndexEntry(
                version_name=binding.version_name,
                first_defined=first,
                members=members,
                problems=problems,
            )
        )
    return out


def word_index(doc: Document) -> list[WordIndexEntry]:
    """One entry per distinct ``@ix{word}`` mark (case-sensitive), with the
    deduplicated locations of the paragraphs carrying the mark."""
    hits: dict[str, list[Location]] = {}
    for sec, ordinal, block in doc.walk_blocks():
        if not isinstance(block, Paragraph):
            continue
        for word in ix_marks(block.text):
            hits.setdefault(word, []).append(locate(doc, block.para_id))
    return [WordIndexEntry(word, _dedup(locs)) for word, locs in sorted(hits.items())]


# -- deterministic serialization -------------------------------------------


def _loc_json(loc: Location | None) -> dict | None:
    if loc is None:
        return None
    return {"section": loc.section_path, "ordinal": loc.ordinal, "anchor": loc.anchor}


def crossref_to_json(entries: list[CrossRefEntry]) -> str:
    lines = []
    for ent in entries:
        lines.append(
            json.dumps(
                {
                    "indicator": str(ent.indicator),
                    "defined": [_loc_json(l) for l in ent.relation_locs],
                    "current": [_loc_json(l) for l in ent.cpd_locs],
                    "used": [_loc_json(l) for l in ent.use_locs],
                },
                sort_keys=False,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def versions_to_json(entries: list[VersionIndexEntry]) -> str:
    lines = []
    for ent in entries:
        lines.append(
            json.dumps(
                {
                    "version": ent.version_name,
                    "first_defined": _loc_json(ent.first_defined),
                    "members": [
                        {"relation": rel_id, "at": _loc_json(loc)} for rel_id, loc in ent.members
                    ],
                    "problems": [d.render() for d in ent.problems],
                }
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def words_to_json(entries: list[WordIndexEntry]) -> str:
    lines = []
    for ent in entries:
        lines.append(
            json.dumps({"word": ent.word, "locations": [_loc_json(l) for l in ent.locs]})
        )
    return "\n".join(lines) + ("\n" if lines else "")
