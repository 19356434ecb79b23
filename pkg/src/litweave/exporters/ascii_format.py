"""Plain-text export: headings underlined, index styles tagged
[def]/[cpd]/[use], packet code flush left and byte-identical to the
packet-scope export so partial output is a substring of the whole."""

from __future__ import annotations

from ..indexes import cross_reference_index, versions_index, word_index
from ..markup import display_text
from ..model import Document, Location, Paragraph, RelationDefinition, Section, locate
from ..projections import Projection
from . import (
    Scope,
    find_packet,
    packet_display,
    relation_title,
    version_badges,
    version_pairs,
)


def render(doc: Document, scope: Scope) -> str:
    if scope.kind == "document":
        return _whole(doc)
    if scope.kind == "version":
        return _version(doc, scope.name or "")
    if scope.kind == "packet":
        _, pkt = find_packet(doc, scope.name or "")
        return packet_display(pkt)
    if scope.kind == "index":
        return "\n".join(_index_lines(doc, scope.name or "")) + "\n"
    assert scope.projection is not None
    return _projection(doc, scope.projection)


def _underlined(text: str, char: str) -> list[str]:
    return [text, char * max(len(text), 1)]


def _code_lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _loc(loc: Location) -> str:
    return loc.label()


def _whole(doc: Document) -> str:
    lines: list[str] = []
    lines += _underlined(doc.title, "=")
    if doc.date:
        lines.append(f"date: {doc.date}")
    for author in doc.authors:
        lines.append(f"author: {author}")
    if doc.keywords:
        lines.append("keywords: " + ", ".join(doc.keywords))
    lines.append("")

    lines += _underlined("Contents", "-")
    for sec in doc.walk_sections():
        lines.append(f"{sec.number}. {sec.heading}")
    lines.append("")

    badges = version_badges(doc)
    for sec in doc.sections:
        _section(doc, sec, badges, lines)

    if doc.bibliography:
        lines += _underlined("Bibliography", "-")
        for entry in doc.bibliography:
            lines.append(entry)
            lines.append("")
    if doc.version_table:
        lines += _underlined("Versions", "-")
        for binding in doc.version_table:
            lines.append(f"{binding.version_name}: root {binding.root}")
            for rel_id, pkt_id in sorted(binding.bindings.items()):
                lines.append(f"  {rel_id} -> {pkt_id}")
        lines.append("")

    for kind in ("crossref", "versions", "words"):
        lines += _index_lines(doc, kind)
        lines.append("")
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def _section(doc: Document, sec: Section, badges, lines: list[str]) -> None:
    lines += _underlined(f"{sec.number}. {sec.heading}", "-")
    lines.append("")
    for block in sec.blocks:
        if isinstance(block, Paragraph):
            lines.append(display_text(block.text))
            lines.append("")
        else:
            _relation(block, badges, lines)
    for child in sec.children:
        _section(doc, child, badges, lines)


def _relation(rel: RelationDefinition, badges, lines: list[str]) -> None:
    title = relation_title(rel)
    names = badges.get(rel.rel_id)
    if names:
        title += "  [" + " ".join(names) + "]"
    lines.append(title)
    if rel.comment is not None:
        for text_line in rel.comment.split("\n"):
            lines.append(f"  {text_line}".rstrip())
    if rel.assertions is not None:
        lines.append("  assertions:")
        for text_line in rel.assertions.split("\n"):
            lines.append(f"  {text_line}".rstrip())
    for pkt in rel.packets:
        marker = " (current)" if pkt.packet_id == rel.cpr else ""
        lines.append(f"packet {pkt.packet_id}{marker}:")
        lines.extend(_code_lines(packet_display(pkt)))
        lines.append("")


def _version(doc: Document, name: str) -> str:
    lines = _underlined(f"Version {name}", "=")
    lines.append("")
    for rel, pkt in version_pairs(doc, name):
        lines.append(f"{relation_title(rel)}  packet {pkt.packet_id}")
        lines.extend(_code_lines(packet_display(pkt)))
        lines.append("")
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def _index_lines(doc: Document, kind: str) -> list[str]:
    if kind == "crossref":
        lines = _underlined("Cross Reference Index", "-")
        for ent in cross_reference_index(doc):
            parts = [str(ent.indicator)]
            if ent.relation_locs:
                parts.append("[def] " + ", ".join(_loc(l) for l in ent.relation_locs))
            if ent.cpd_locs:
                parts.append("[cpd] " + ", ".join(_loc(l) for l in ent.cpd_locs))
            if ent.use_locs:
                parts.append("[use] " + ", ".join(_loc(l) for l in ent.use_locs))
            lines.append("  ".join(parts))
        return lines
    if kind == "versions":
        lines = _underlined("Versions Index", "-")
        for ent in versions_index(doc):
            first = f"  first defined {_loc(ent.first_defined)}" if ent.first_defined else ""
            lines.append(f"{ent.version_name}{first}")
            for rel_id, loc in ent.members:
                rel = doc.relation(rel_id)
                title = relation_title(rel) if rel else rel_id
                lines.append(f"  {title}  {_loc(loc)}")
            for problem in ent.problems:
                lines.append(f"  ! {problem.code}: {problem.message}")
        return lines
    lines = _underlined("Word Index", "-")
    for ent in word_index(doc):
        lines.append(f"{ent.word}  " + ", ".join(_loc(l) for l in ent.locs))
    return lines


def _projection(doc: Document, proj: Projection) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(proj.params.items()))
    lines = _underlined(f"Projection: {proj.criterion} ({params})", "=")
    lines.append("")
    by_loc: dict[Location, list[str]] = {}
    for hit in proj.highlights:
        by_loc.setdefault(hit.location, []).append(hit.word)
    badges = version_badges(doc)
    for item in proj.blocks:
        if isinstance(item.block, Paragraph):
            lines.append(f"{_loc(item.location)} paragraph {item.block.para_id}:")
            lines.append(display_text(item.block.text))
        elif item.packet is not None:
            lines.append(f"{_loc(item.location)} {relation_title(item.block)} "
                         f"packet {item.packet.packet_id}:")
            lines.extend(_code_lines(packet_display(item.packet)))
        else:
            lines.append(f"{_loc(item.location)}:")
            _relation(item.block, badges, lines)
        for word in by_loc.get(item.location, []):
            lines.append(f"  matched: {word}")
        lines.append("")
    if proj.unresolved:
        lines += _underlined("Unresolved predications", "-")
        for goal in proj.unresolved:
            lines.append(
                f"{goal.indicator} in packet {goal.packet} of {goal.relation} "
                f"({_loc(goal.location)})"
            )
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
