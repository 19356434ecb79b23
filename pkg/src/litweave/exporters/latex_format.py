"""LaTeX export: the logical structure is reflected with sectioning
commands, relation titles become labeled headings, code sits in verbatim
blocks, and the three indexes are mirrored at the end so the hypertext
information survives on paper.  Hyperlinks themselves are dropped."""

from __future__ import annotations

from ..indexes import cross_reference_index, versions_index, word_index
from ..markup import display_text
from ..model import Document, Location, Paragraph, RelationDefinition, Section
from ..projections import Projection
from . import (
    Scope,
    find_packet,
    packet_display,
    relation_title,
    version_badges,
    version_pairs,
)

_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}

_SECTIONING = [r"\section", r"\subsection", r"\subsubsection", r"\paragraph"]


def escape(text: str) -> str:
    return "".join(_SPECIALS.get(ch, ch) for ch in text)


def _loc(loc: Location) -> str:
    return rf"\S{loc.section_path}\#{loc.ordinal}"


def _verbatim(code: str, lines: list[str]) -> None:
    lines.append(r"\begin{verbatim}")
    body = code if code.endswith("\n") or not code else code + "\n"
    lines.append(body.rstrip("\n"))
    lines.append(r"\end{verbatim}")


def _preamble(doc: Document, with_title: bool) -> list[str]:
    lines = [
        r"\documentclass{article}",
        r"\usepackage[T1]{fontenc}",
        r"\usepackage[utf8]{inputenc}",
        "",
    ]
    if with_title:
        lines.append(rf"\title{{{escape(doc.title)}}}")
        authors = r" \and ".join(escape(a) for a in doc.authors)
        lines.append(rf"\author{{{authors}}}")
        lines.append(rf"\date{{{escape(doc.date or '')}}}")
    lines.append(r"\begin{document}")
    if with_title:
        lines.append(r"\maketitle")
    return lines


def render(doc: Document, scope: Scope) -> str:
    if scope.kind == "document":
        return _whole(doc)
    if scope.kind == "version":
        return _version(doc, scope.name or "")
    if scope.kind == "packet":
        _, pkt = find_packet(doc, scope.name or "")
        lines = _preamble(doc, with_title=False)
        _verbatim(packet_display(pkt), lines)
        lines.append(r"\end{document}")
        return "\n".join(lines) + "\n"
    if scope.kind == "index":
        lines = _preamble(doc, with_title=False)
        lines += _index_lines(doc, scope.name or "")
        lines.append(r"\end{document}")
        return "\n".join(lines) + "\n"
    assert scope.projection is not None
    return _projection(doc, scope.projection)


def _whole(doc: Document) -> str:
    lines = _preamble(doc, with_title=True)
    if doc.keywords:
        lines.append(r"\noindent\textbf{Keywords}: " + escape(", ".join(doc.keywords)))
        lines.append("")
    lines.append(r"\tableofcontents")
    lines.append("")
    badges = version_badges(doc)
    for sec in doc.sections:
        _section(sec, badges, lines, doc)
    if doc.bibliography:
        lines.append(r"\section*{Bibliography}")
        for entry in doc.bibliography:
            lines.append(escape(entry))
            lines.append("")
    if doc.version_table:
        lines.append(r"\section*{Versions}")
        lines.append(r"\begin{itemize}")
        for binding in doc.version_table:
            pairs = ", ".join(
                rf"\texttt{{{escape(rel)}}} $\rightarrow$ \texttt{{{escape(pkt)}}}"
                for rel, pkt in sorted(binding.bindings.items())
            )
            lines.append(
                rf"\item\label{{ver-{binding.version_name}}}"
                rf"\textbf{{{escape(binding.version_name)}}} "
                rf"(root \texttt{{{escape(binding.root)}}}): {pairs}"
            )
        lines.append(r"\end{itemize}")
    for kind in ("crossref", "versions", "words"):
        lines += _index_lines(doc, kind)
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"


def _section(sec: Section, badges, lines: list[str], doc: Document) -> None:
    depth = sec.number.count(".")
    command = _SECTIONING[min(depth, len(_SECTIONING) - 1)]
    lines.append(rf"{command}{{{escape(sec.heading)}}}\label{{sec-{sec.number}}}")
    lines.append("")
    for block in sec.blocks:
        if isinstance(block, Paragraph):
            lines.append(escape(display_text(block.text)))
            lines.append("")
        else:
            _relation(block, badges, lines)
    for child in sec.children:
        _section(child, badges, lines, doc)


def _relation(rel: RelationDefinition, badges, lines: list[str]) -> None:
    title = escape(relation_title(rel))
    names = badges.get(rel.rel_id)
    if names:
        title += " [" + " ".join(escape(n) for n in names) + "]"
    lines.append(rf"\paragraph*{{{title}}}\label{{rel-{rel.rel_id}}}")
    lines.append("")
    if rel.comment is not None:
        lines.append(escape(rel.comment))
        lines.append("")
    if rel.assertions is not None:
        lines.append(r"\emph{Assertions:}")
        _verbatim(rel.assertions, lines)
    for pkt in rel.packets:
        marker = " (current)" if pkt.packet_id == rel.cpr else ""
        lines.append(rf"Packet \texttt{{{escape(pkt.packet_id)}}}{escape(marker)}:"
                     rf"\label{{pkt-{pkt.packet_id}}}")
        _verbatim(packet_display(pkt), lines)
    lines.append("")


def _version(doc: Document, name: str) -> str:
    lines = _preamble(doc, with_title=False)
    lines.append(rf"\section*{{Version {escape(name)}}}")
    for rel, pkt in version_pairs(doc, name):
        lines.append(
            rf"\paragraph*{{{escape(relation_title(rel))} "
            rf"packet \texttt{{{escape(pkt.packet_id)}}}}}"
        )
        _verbatim(packet_display(pkt), lines)
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"


def _index_lines(doc: Document, kind: str) -> list[str]:
    lines: list[str] = []
    if kind == "crossref":
        lines.append(r"\section*{Cross Reference Index}")
        entries = cross_reference_index(doc)
        if entries:
            lines.append(r"\begin{itemize}")
            for ent in entries:
                parts = []
                if ent.relation_locs:
                    parts.append(r"\textit{" + ", ".join(_loc(l) for l in ent.relation_locs) + "}")
                if ent.cpd_locs:
                    parts.append(r"\textbf{" + ", ".join(_loc(l) for l in ent.cpd_locs) + "}")
                if ent.use_locs:
                    parts.append(", ".join(_loc(l) for l in ent.use_locs))
                lines.append(
                    rf"\item \texttt{{{escape(str(ent.indicator))}}}: " + "; ".join(parts)
                )
            lines.append(r"\end{itemize}")
        return lines
    if kind == "versions":
        lines.append(r"\section*{Versions Index}")
        entries = versions_index(doc)
        if entries:
            lines.append(r"\begin{itemize}")
            for ent in entries:
                first = f" (first defined {_loc(ent.first_defined)})" if ent.first_defined else ""
                members = ", ".join(
                    rf"\texttt{{{escape(rel_id)}}} {_loc(loc)}" for rel_id, loc in ent.members
                )
                problems = " ".join(escape(f"[{p.code}]") for p in ent.problems)
                lines.append(
                    rf"\item \textbf{{{escape(ent.version_name)}}}{first}: {members} {problems}".rstrip()
                )
            lines.append(r"\end{itemize}")
        return lines
    lines.append(r"\section*{Word Index}")
    entries = word_index(doc)
    if entries:
        lines.append(r"\begin{itemize}")
        for ent in entries:
            locs = ", ".join(_loc(l) for l in ent.locs)
            lines.append(rf"\item {escape(ent.word)}: {locs}")
        lines.append(r"\end{itemize}")
    return lines


def _projection(doc: Document, proj: Projection) -> str:
    lines = _preamble(doc, with_title=False)
    params = ", ".join(f"{k}={v}" for k, v in sorted(proj.params.items()))
    lines.append(rf"\section*{{Projection: {escape(proj.criterion)} ({escape(params)})}}")
    by_loc: dict[Location, list[str]] = {}
    for hit in proj.highlights:
        by_loc.setdefault(hit.location, []).append(hit.word)
    badges = version_badges(doc)
    for item in proj.blocks:
        lines.append(rf"\subsection*{{{_loc(item.location)}}}")
        if isinstance(item.block, Paragraph):
            lines.append(escape(display_text(item.block.text)))
        elif item.packet is not None:
            lines.append(escape(relation_title(item.block)) + ":")
            _verbatim(packet_display(item.packet), lines)
        else:
            _relation(item.block, badges, lines)
        matched = by_loc.get(item.location)
        if matched:
            lines.append(r"\emph{Matched:} " + escape(", ".join(matched)))
        lines.append("")
    if proj.unresolved:
        lines.append(r"\section*{Unresolved predications}")
        lines.append(r"\begin{itemize}")
        for goal in proj.unresolved:
            lines.append(
                rf"\item \texttt{{{escape(str(goal.indicator))}}} in "
                rf"\texttt{{{escape(goal.packet)}}} ({_loc(goal.location)})"
            )
        lines.append(r"\end{itemize}")
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"
