"""Random document builders shared by the property tests.

Two flavours: ``linked_documents`` builds small documents whose relations
reference each other through definition references (for chain properties),
and ``documents`` layers prose, nesting, comments and versions on top (for
round-trip properties).  Packets are built from generated clause text via
the real clause reader, so raw text and parsed clauses always agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import hypothesis.strategies as st

from litweave import (
    ClausePacket,
    Document,
    Paragraph,
    RelationDefinition,
    Section,
    name_version,
    parse_clauses,
)

NAMES = ["a", "b", "c", "p", "q", "run"]
VARS = ["X", "Y", "Z"]


def make_packet(pkt_id: str, text: str) -> ClausePacket:
    clauses, diags = parse_clauses(text)
    assert not diags, diags
    return ClausePacket(pkt_id, text, clauses)


@dataclass
class LinkedDoc:
    document: Document
    rel_ids: list[str]
    start: str
    overrides: dict[str, str]


def _goal_text(name: str, arity: int, ref: str | None) -> str:
    args = "" if arity == 0 else "(" + ", ".join(VARS[:arity]) + ")"
    suffix = f"^{ref}" if ref else ""
    return f"{name}{args}{suffix}"


@st.composite
def linked_documents(draw, max_relations: int = 12) -> LinkedDoc:
    n = draw(st.integers(min_value=1, max_value=max_relations))
    rel_ids = [f"r{i}" for i in range(n)]
    names = [draw(st.sampled_from(NAMES)) for _ in range(n)]
    arities = [draw(st.integers(min_value=0, max_value=2)) for _ in range(n)]

    relations = []
    for i in range(n):
        packet_count = draw(st.integers(min_value=1, max_value=3))
        packets = []
        for k in range(packet_count):
            clause_count = draw(st.integers(min_value=1, max_value=3))
            lines = []
            for _ in range(clause_count):
                head = _goal_text(names[i], arities[i], None)
                target_ixs = draw(st.lists(st.integers(0, n - 1), max_size=3))
                goals = []
                for j in target_ixs:
                    if j == i and draw(st.booleans()):
                        goals.append(_goal_text(names[i], arities[i], None))
                    else:
                        goals.append(_goal_text(names[j], arities[j], rel_ids[j]))
                if goals:
                    lines.append(f"{head} :- {', '.join(goals)}.")
                else:
                    lines.append(f"{head}.")
            packets.append(make_packet(f"{rel_ids[i]}pk{k}", "".join(l + "\n" for l in lines)))
        cpr = packets[draw(st.integers(0, packet_count - 1))].packet_id
        relations.append(
            RelationDefinition(
                rel_id=rel_ids[i],
                name=names[i],
                arity=arities[i],
                packets=packets,
                cpr=cpr,
            )
        )

    doc = Document(title="generated", sections=[Section("1", "Main", list(relations))])
    start = rel_ids[draw(st.integers(0, n - 1))]
    overrides = {}
    for rel in relations:
        if draw(st.booleans()):
            pick = draw(st.integers(0, len(rel.packets) - 1))
            overrides[rel.rel_id] = rel.packets[pick].packet_id
    return LinkedDoc(doc, rel_ids, start, overrides)


_WORDS = st.text(alphabet="abcdefghij", min_size=1, max_size=8)
_PROSE_LINE = st.text(alphabet="abcdefg hij", min_size=0, max_size=40).map(str.strip)


@st.composite
def _paragraphs(draw, para_id: str) -> Paragraph:
    lines = draw(st.lists(_PROSE_LINE, min_size=1, max_size=3))
    if draw(st.booleans()):
        lines.append("marked @ix{" + draw(_WORDS) + "} here")
    return Paragraph(para_id, "\n".join(lines))


@st.composite
def documents(draw) -> Document:
    linked = draw(linked_documents(max_relations=6))
    doc = linked.document
    relations = doc.sections[0].blocks

    counter = iter(range(1000))
    blocks: list = []
    for rel in relations:
        if draw(st.booleans()):
            blocks.append(draw(_paragraphs(f"gp{next(counter)}")))
        if draw(st.booleans()):
            rel.comment = draw(_PROSE_LINE)
        if draw(st.booleans()):
            rel.assertions = draw(_PROSE_LINE)
        blocks.append(rel)

    # Distribute blocks over a small section tree; blocks precede children.
    split = draw(st.integers(0, len(blocks)))
    top = Section("1", draw(_PROSE_LINE) or "Top", blocks[:split])
    if blocks[split:]:
        top.children.append(Section("1.1", "Details", blocks[split:]))
    doc = Document(
        title=draw(_PROSE_LINE) or "generated",
        date=draw(st.none() | st.just("2001-12-01")),
        authors=draw(st.lists(_WORDS, max_size=2)),
        keywords=draw(st.lists(_WORDS, max_size=3)),
        sections=[top],
        bibliography=draw(st.lists(_PROSE_LINE, max_size=2)),
    )
    if draw(st.booleans()):
        doc = name_version(doc, "V1", linked.start)
    return doc
