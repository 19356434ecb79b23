"""Static HTML export.

The hypertext structure of the document is kept: current-packet references,
definition references and version badges become intra-document links, and
index entries link to the blocks they describe.  A link is emitted only when
its target anchor exists in the same output, so every href resolves whatever
the scope.  Output is two dependency-free files: ``index.html`` and
``style.css``.
"""

from __future__ import annotations

from html import escape

from ..indexes import cross_reference_index, versions_index, word_index
from ..markup import display_text
from ..model import (
    ClausePacket,
    Document,
    Location,
    Paragraph,
    RelationDefinition,
    Section,
)
from ..projections import Projection
from . import (
    Scope,
    find_packet,
    packet_display,
    relation_title,
    version_badges,
    version_pairs,
)

STYLESHEET = """\
body { font-family: Georgia, serif; max-width: 52rem; margin: 2rem auto; padding: 0 1rem;
       color: #222; }
h1, h2, h3 { font-family: Helvetica, Arial, sans-serif; }
nav ul { list-style: none; padding-left: 0; }
article.relation { border-left: 3px solid #b8c4d0; padding-left: 1rem; margin: 1.5rem 0; }
article.relation h3 { margin-bottom: 0.3rem; }
span.relid { color: #667; font-size: 0.8em; margin-left: 0.5em; }
a.badge { background: #eef2f7; border-radius: 3px; padding: 0 0.4em; margin-left: 0.4em;
          font-size: 0.8em; text-decoration: none; }
div.packet { margin: 0.8rem 0; }
div.packet.current > .packet-label { font-weight: bold; }
.packet-label { font-family: monospace; font-size: 0.85em; color: #446; }
pre.code { background: #f6f6f2; padding: 0.6rem; overflow-x: auto; }
pre.assert { background: #fdf3e5; padding: 0.6rem; }
section.index ul { list-style: none; padding-left: 0; }
section.index li { margin: 0.25rem 0; }
.locs-def a, .locs-def span { font-style: italic; }
.locs-cpd a, .locs-cpd span { font-weight: bold; }
.annotation { color: #855; font-size: 0.9em; }
"""


class _Writer:
    def __init__(self, anchors: set[str]):
        self.anchors = anchors
        self.out: list[str] = []

    def add(self, fragment: str) -> None:
        self.out.append(fragment)

    def link(self, target: str, inner_html: str, css_class: str | None = None) -> str:
        cls = f' class="{css_class}"' if css_class else ""
        if target in self.anchors:
            return f'<a{cls} href="#{escape(target)}">{inner_html}</a>'
        if css_class:
            return f"<span{cls}>{inner_html}</span>"
        return inner_html

    def loc_link(self, loc: Location) -> str:
        return self.link(loc.anchor, escape(loc.label()))

    def html(self) -> str:
        return "".join(self.out)


def render(doc: Document, scope: Scope) -> dict[str, str]:
    writer = _Writer(_anchor_set(doc, scope))
    if scope.kind == "document":
        _whole(doc, writer)
        title = doc.title
    elif scope.kind == "version":
        _version(doc, scope.name or "", writer)
        title = f"{doc.title} - version {scope.name}"
    elif scope.kind == "packet":
        rel, pkt = find_packet(doc, scope.name or "")
        _packet_block(rel, pkt, writer, current=pkt.packet_id == rel.cpr)
        title = f"{doc.title} - packet {scope.name}"
    elif scope.kind == "index":
        _index(doc, scope.name or "", writer)
        title = f"{doc.title} - {scope.name} index"
    else:
        assert scope.projection is not None
        _projection(doc, scope.projection, writer)
        title = f"{doc.title} - projection"
    page = (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n<head>\n<meta charset="utf-8">\n'
        f"<title>{escape(title)}</title>\n"
        '<link rel="stylesheet" href="style.css">\n</head>\n<body>\n'
        f"{writer.html()}"
        "</body>\n</html>\n"
    )
    return {"index.html": page, "style.css": STYLESHEET}


def _anchor_set(doc: Document, scope: Scope) -> set[str]:
    anchors: set[str] = set()

    def add_relation(rel: RelationDefinition) -> None:
        anchors.add(f"rel-{rel.rel_id}")
        anchors.update(f"pkt-{pkt.packet_id}" for pkt in rel.packets)

    if scope.kind == "document":
        for sec, ordinal, block in doc.walk_blocks():
            if isinstance(block, Paragraph):
                anchors.add(f"loc-{sec.number}-{ordinal}")
            else:
                add_relation(block)
        anchors.update(f"sec-{sec.number}" for sec in doc.walk_sections())
        anchors.update(f"ver-{b.version_name}" for b in doc.version_table)
    elif scope.kind == "version":
        anchors.add(f"ver-{scope.name}")
        for rel, pkt in version_pairs(doc, scope.name or ""):
            anchors.add(f"rel-{rel.rel_id}")
            anchors.add(f"pkt-{pkt.packet_id}")
    elif scope.kind == "packet":
        anchors.add(f"pkt-{scope.name}")
    elif scope.kind == "projection":
        assert scope.projection is not None
        for item in scope.projection.blocks:
            if isinstance(item.block, Paragraph):
                anchors.add(item.location.anchor)
            elif item.packet is not None:
                anchors.add(f"pkt-{item.packet.packet_id}")
            else:
                add_relation(item.block)
    return anchors


# -- building blocks ---------------------------------------------------------


def _code_html(pkt: ClausePacket, writer: _Writer) -> str:
    """Packet code with reference suffixes dropped and linked goals."""
    text = pkt.raw_text
    events: list[tuple[int, int, str | None]] = []
    for clause in pkt.clauses:
        for goal in clause.body_goals:
            if goal.def_ref is not None:
                events.append((goal.span[0], goal.span[1], goal.def_ref))
            if goal.ref_span is not None:
                events.append((goal.ref_span[0], goal.ref_span[1], None))
    events.sort()
    out = []
    pos = 0
    for start, end, target in events:
        out.append(escape(text[pos:start]))
        if target is not None:
            out.append(writer.link(f"rel-{target}", escape(text[start:end]), "defref"))
        pos = end
    out.append(escape(text[pos:]))
    return "".join(out).rstrip("\n")


def _packet_block(
    rel: RelationDefinition, pkt: ClausePacket, writer: _Writer, current: bool
) -> None:
    cls = "packet current" if current else "packet"
    label = f"packet {pkt.packet_id}" + (" (current)" if current else "")
    writer.add(f'<div class="{cls}" id="pkt-{escape(pkt.packet_id)}">')
    writer.add(f'<div class="packet-label">{escape(label)}</div>')
    writer.add(f'<pre class="code">{_code_html(pkt, writer)}</pre></div>\n')


def _relation_block(doc: Document, rel: RelationDefinition, writer: _Writer) -> None:
    badges = version_badges(doc).get(rel.rel_id, [])
    writer.add(f'<article class="relation" id="rel-{escape(rel.rel_id)}">')
    title = (
        f"{escape(str(rel.indicator))} "
        f'<span class="relid">{escape(rel.rel_id)}</span>'
    )
    cpr = writer.link(f"pkt-{rel.cpr}", escape(f"current: {rel.cpr}"), "badge")
    badge_html = "".join(writer.link(f"ver-{name}", escape(name), "badge") for name in badges)
    writer.add(f"<h3>{title} {cpr}{badge_html}</h3>\n")
    if rel.comment is not None:
        writer.add(f'<p class="comment">{escape(rel.comment)}</p>\n')
    if rel.assertions is not None:
        writer.add(f'<pre class="assert">{escape(rel.assertions)}</pre>\n')
    for pkt in rel.packets:
        _packet_block(rel, pkt, writer, current=pkt.packet_id == rel.cpr)
    writer.add("</article>\n")


def _section(doc: Document, sec: Section, writer: _Writer) -> None:
    depth = min(sec.number.count(".") + 2, 6)
    writer.add(f'<section id="sec-{escape(sec.number)}">')
    writer.add(f"<h{depth}>{escape(sec.number)}. {escape(sec.heading)}</h{depth}>\n")
    for ordinal, block in enumerate(sec.blocks, start=1):
        if isinstance(block, Paragraph):
            writer.add(
                f'<p class="para" id="loc-{escape(sec.number)}-{ordinal}">'
                f"{escape(display_text(block.text))}</p>\n"
            )
        else:
            _relation_block(doc, block, writer)
    for child in sec.children:
        _section(doc, child, writer)
    writer.add("</section>\n")


def _whole(doc: Document, writer: _Writer) -> None:
    writer.add(f"<h1>{escape(doc.title)}</h1>\n")
    meta = []
    if doc.date:
        meta.append(escape(doc.date))
    meta.extend(escape(a) for a in doc.authors)
    if doc.keywords:
        meta.append("keywords: " + escape(", ".join(doc.keywords)))
    if meta:
        writer.add('<p class="meta">' + " &middot; ".join(meta) + "</p>\n")
    writer.add("<nav><h2>Contents</h2><ul>\n")
    for sec in doc.walk_sections():
        label = f"{sec.number}. {sec.heading}"
        writer.add(f"<li>{writer.link(f'sec-{sec.number}', escape(label))}</li>\n")
    writer.add("</ul></nav>\n")
    for sec in doc.sections:
        _section(doc, sec, writer)
    if doc.bibliography:
        writer.add('<section class="bibliography"><h2>Bibliography</h2>\n')
        for entry in doc.bibliography:
            writer.add(f"<p>{escape(entry)}</p>\n")
        writer.add("</section>\n")
    if doc.version_table:
        writer.add('<section class="versions"><h2>Versions</h2><dl>\n')
        for binding in doc.version_table:
            writer.add(
                f'<dt id="ver-{escape(binding.version_name)}">'
                f"{escape(binding.version_name)}</dt><dd>root "
                + writer.link(f"rel-{binding.root}", escape(binding.root))
                + ": "
            )
            pairs = [
                writer.link(f"pkt-{pkt_id}", escape(f"{rel_id}={pkt_id}"))
                for rel_id, pkt_id in sorted(binding.bindings.items())
            ]
            writer.add(", ".join(pairs) + "</dd>\n")
        writer.add("</dl></section>\n")
    for kind in ("crossref", "versions", "words"):
        _index(doc, kind, writer)


def _index(doc: Document, kind: str, writer: _Writer) -> None:
    if kind == "crossref":
        writer.add('<section class="index"><h2>Cross Reference Index</h2><ul>\n')
        for ent in cross_reference_index(doc):
            parts = [f"<code>{escape(str(ent.indicator))}</code>"]
            if ent.relation_locs:
                locs = ", ".join(writer.loc_link(l) for l in ent.relation_locs)
                parts.append(f'<span class="locs-def">{locs}</span>')
            if ent.cpd_locs:
                locs = ", ".join(writer.loc_link(l) for l in ent.cpd_locs)
                parts.append(f'<span class="locs-cpd">{locs}</span>')
            if ent.use_locs:
                locs = ", ".join(writer.loc_link(l) for l in ent.use_locs)
                parts.append(f'<span class="locs-use">{locs}</span>')
            writer.add("<li>" + " &mdash; ".join(parts) + "</li>\n")
        writer.add("</ul></section>\n")
    elif kind == "versions":
        writer.add('<section class="index"><h2>Versions Index</h2><ul>\n')
        for ent in versions_index(doc):
            first = (
                f" &mdash; first defined {writer.loc_link(ent.first_defined)}"
                if ent.first_defined
                else ""
            )
            members = ", ".join(
                writer.link(f"rel-{rel_id}", escape(rel_id)) + " " + writer.loc_link(loc)
                for rel_id, loc in ent.members
            )
            problems = "".join(
                f' <span class="annotation">[{escape(p.code)}]</span>' for p in ent.problems
            )
            writer.add(
                f"<li><strong>{escape(ent.version_name)}</strong>{first}: "
                f"{members}{problems}</li>\n"
            )
        writer.add("</ul></section>\n")
    else:
        writer.add('<section class="index"><h2>Word Index</h2><ul>\n')
        for ent in word_index(doc):
            locs = ", ".join(writer.loc_link(l) for l in ent.locs)
            writer.add(f"<li>{escape(ent.word)}: {locs}</li>\n")
        writer.add("</ul></section>\n")


def _version(doc: Document, name: str, writer: _Writer) -> None:
    writer.add(f'<h1 id="ver-{escape(name)}">Version {escape(name)}</h1>\n')
    for rel, pkt in version_pairs(doc, name):
        writer.add(f'<article class="relation" id="rel-{escape(rel.rel_id)}">')
        writer.add(f"<h3>{escape(relation_title(rel))}</h3>\n")
        _packet_block(rel, pkt, writer, current=False)
        writer.add("</article>\n")


def _projection(doc: Document, proj: Projection, writer: _Writer) -> None:
    params = ", ".join(f"{k}={v}" for k, v in sorted(proj.params.items()))
    writer.add(f"<h1>Projection: {escape(proj.criterion)} ({escape(params)})</h1>\n")
    by_loc: dict[Location, list[str]] = {}
    for hit in proj.highlights:
        by_loc.setdefault(hit.location, []).append(hit.word)
    for item in proj.blocks:
        writer.add(f'<div class="projected" data-source="{escape(item.location.label())}">')
        writer.add(f'<div class="packet-label">{escape(item.location.label())}</div>\n')
        if isinstance(item.block, Paragraph):
            writer.add(
                f'<p class="para" id="{escape(item.location.anchor)}">'
                f"{escape(display_text(item.block.text))}</p>\n"
            )
        elif item.packet is not None:
            writer.add(f"<h3>{escape(relation_title(item.block))}</h3>\n")
            _packet_block(item.block, item.packet, writer, current=False)
        else:
            _relation_block(doc, item.block, writer)
        matched = by_loc.get(item.location)
        if matched:
            words = ", ".join(escape(w) for w in matched)
            writer.add(f'<p class="annotation">matched: {words}</p>\n')
        writer.add("</div>\n")
    if proj.unresolved:
        writer.add('<section class="index"><h2>Unresolved predications</h2><ul>\n')
        for goal in proj.unresolved:
            writer.add(
                f"<li><code>{escape(str(goal.indicator))}</code> in "
                f"{escape(goal.packet)} ({writer.loc_link(goal.location)})</li>\n"
            )
        writer.add("</ul></section>\n")
