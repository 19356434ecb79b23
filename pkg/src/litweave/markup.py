"""Parse and re-serialize the ``.lw`` plain-text document format.

The format is line oriented: every ``@`` directive starts at column 1, and
block bodies (``@para``, ``@comment``, ``@assert``, ``@bib``, ``@packet``)
run verbatim until the matching ``@end...`` line.  Packet bodies hold Prolog
clause text in which a goal may carry a ``^REL_ID`` definition-reference
suffix.  ``@version`` lines are normally written by the version engine, not
by hand.

Layout of a document::

    @title Peano arithmetic
    @author A. Hacker
    @keywords peano, arithmetic
    @section Programs
    @para intro
    Prose with an @ix{indexed} word.
    @endpara
    @relation R_add add/3
    @packet P_add_1
    add(zero, Y, Y).
    add(s(X), Y, s(Z)) :- add(X, Y, Z).
    @endpacket
    @cpr P_add_1
    @endrelation
    @endsection
    @version V1 root=R_add R_add=P_add_1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import diagnostics as dg
from .clauses import parse_clauses
from .diagnostics import Diagnostic
from .model import (
    ClausePacket,
    Document,
    Paragraph,
    RelationDefinition,
    Section,
    VersionBinding,
    validate,
)

FILE_EXTENSION = ".lw"

IX_MARK_RE = re.compile(r"@ix\{([^}]*)\}")
_ID_RE = re.compile(r"[A-Za-z_]\w*$")
_INDICATOR_RE = re.compile(r"([a-z]\w*|'[^']*')(?:/(\d+))?$")

_BODY_DIRECTIVES = {
    "@para": "@endpara",
    "@comment": "@endcomment",
    "@assert": "@endassert",
    "@bib": "@endbib",
    "@packet": "@endpacket",
}


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str


@dataclass
class ParseResult:
    document: Document | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None


def display_text(text: str) -> str:
    """Paragraph text as a reader sees it, with index marks unwrapped."""
    return IX_MARK_RE.sub(lambda m: m.group(1), text)


def ix_marks(text: str) -> list[str]:
    return IX_MARK_RE.findall(text)


class _OpenRelation:
    def __init__(self, rel_id: str, name: str, arity: int | None, line: int):
        self.rel_id = rel_id
        self.name = name
        self.arity = arity
        self.line = line
        self.comment: str | None = None
        self.assertions: str | None = None
        self.packets: list[ClausePacket] = []
        self.cpr: str | None = None


class _OpenSection:
    def __init__(self, section: Section):
        self.section = section
        self.saw_child = False


class _Parser:
    def __init__(self, src: SourceFile):
        self.src = src
        self.lines = src.text.split("\n")
        self.diags: list[Diagnostic] = []
        self.title: str | None = None
        self.date: str | None = None
        self.authors: list[str] = []
        self.keywords: list[str] = []
        self.bibliography: list[str] = []
        self.version_table: list[VersionBinding] = []
        self.top_sections: list[Section] = []
        self.stack: list[_OpenSection] = []
        self.relation: _OpenRelation | None = None
        self.i = 0  # 0-based index into self.lines

    # -- helpers -----------------------------------------------------------

    def error(self, line: int, code: str, message: str, column: int = 1) -> None:
        self.diags.append(Diagnostic(code, message, line=line, column=column))

    def _take_body(self, end_directive: str, start_line: int) -> list[str] | None:
        """Collect verbatim lines until ``end_directive`` at column 1."""
        body: list[str] = []
        while self.i < len(self.lines):
            line = self.lines[self.i]
            self.i += 1
            if line.rstrip() == end_directive:
                return body
            body.append(line)
        self.error(
            start_line,
            dg.UNCLOSED_BLOCK,
            f"block opened here is never closed by {end_directive}",
        )
        return None

    def _add_block(self, block, line: int) -> None:
        if not self.stack:
            self.error(line, dg.UNEXPECTED_DIRECTIVE, "content must appear inside a @section")
            return
        open_sec = self.stack[-1]
        if open_sec.saw_child:
            self.error(
                line,
                dg.BLOCK_AFTER_SUBSECTION,
                "blocks of a section must precede its subsections",
            )
            return
        open_sec.section.blocks.append(block)

    # -- directive handlers --------------------------------------------------

    def parse(self) -> ParseResult:
        while self.i < len(self.lines):
            lineno = self.i + 1
            raw = self.lines[self.i]
            self.i += 1
            line = raw.rstrip()
            if not line.startswith("@"):
                if line.strip():
                    self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "text outside any block")
                continue
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            handler = getattr(self, "_dir_" + word[1:], None)
            if handler is None:
                self.error(lineno, dg.UNKNOWN_DIRECTIVE, f"unknown directive {word!r}")
                continue
            handler(rest, lineno)

        for open_sec in self.stack:
            self.error(1, dg.UNCLOSED_BLOCK, f"@section {open_sec.section.heading!r} never closed")
        if self.relation is not None:
            self.error(self.relation.line, dg.UNCLOSED_BLOCK, "@relation never closed")

        doc = self._build()
        if dg.errors(self.diags):
            return ParseResult(None, self.diags)
        return ParseResult(doc, self.diags)

    def _dir_title(self, rest: str, lineno: int) -> None:
        if self.title is not None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "duplicate @title")
        self.title = rest

    def _dir_date(self, rest: str, lineno: int) -> None:
        self.date = rest

    def _dir_author(self, rest: str, lineno: int) -> None:
        self.authors.append(rest)

    def _dir_keywords(self, rest: str, lineno: int) -> None:
        self.keywords.extend(w.strip() for w in rest.split(",") if w.strip())

    def _dir_section(self, rest: str, lineno: int) -> None:
        if self.relation is not None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@section inside @relation")
            return
        siblings = self.stack[-1].section.children if self.stack else self.top_sections
        prefix = f"{self.stack[-1].section.number}." if self.stack else ""
        section = Section(number=f"{prefix}{len(siblings) + 1}", heading=rest)
        siblings.append(section)
        if self.stack:
            self.stack[-1].saw_child = True
        self.stack.append(_OpenSection(section))

    def _dir_endsection(self, rest: str, lineno: int) -> None:
        if not self.stack:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@endsection without open @section")
            return
        self.stack.pop()

    def _dir_para(self, rest: str, lineno: int) -> None:
        if self.relation is not None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@para inside @relation")
        para_id = rest or None
        if para_id and not _ID_RE.match(para_id):
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, f"bad paragraph id {para_id!r}")
            para_id = None
        body = self._take_body("@endpara", lineno)
        if body is None:
            return
        self._add_block(Paragraph(para_id or "", "\n".join(body)), lineno)

    def _dir_relation(self, rest: str, lineno: int) -> None:
        if self.relation is not None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@relation inside @relation")
            return
        parts = rest.split()
        if len(parts) != 2 or not _ID_RE.match(parts[0]):
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@relation needs an id and name[/arity]")
            return
        m = _INDICATOR_RE.match(parts[1])
        if not m:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, f"bad predicate indicator {parts[1]!r}")
            return
        name = m.group(1).strip("'")
        arity = int(m.group(2)) if m.group(2) is not None else None
        self.relation = _OpenRelation(parts[0], name, arity, lineno)

    def _dir_comment(self, rest: str, lineno: int) -> None:
        body = self._take_body("@endcomment", lineno)
        if body is None or self.relation is None:
            if self.relation is None:
                self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@comment outside @relation")
            return
        self.relation.comment = "\n".join(body)

    def _dir_assert(self, rest: str, lineno: int) -> None:
        body = self._take_body("@endassert", lineno)
        if body is None or self.relation is None:
            if self.relation is None:
                self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@assert outside @relation")
            return
        self.relation.assertions = "\n".join(body)

    def _dir_packet(self, rest: str, lineno: int) -> None:
        if self.relation is None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@packet outside @relation")
            self._take_body("@endpacket", lineno)
            return
        if not _ID_RE.match(rest):
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, f"@packet needs an id, got {rest!r}")
            self._take_body("@endpacket", lineno)
            return
        body = self._take_body("@endpacket", lineno)
        if body is None:
            return
        raw_text = "".join(line + "\n" for line in body)
        clauses, clause_diags = parse_clauses(raw_text)
        for diag in clause_diags:
            self.diags.append(
                Diagnostic(
                    diag.code,
                    diag.message,
                    severity=diag.severity,
                    line=lineno + (diag.line or 1),
                    column=diag.column,
                )
            )
        if not clauses and not clause_diags:
            self.error(lineno, dg.EMPTY_PACKET, f"packet {rest} holds no clauses")
        self.relation.packets.append(ClausePacket(rest, raw_text, clauses))

    def _dir_cpr(self, rest: str, lineno: int) -> None:
        if self.relation is None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@cpr outside @relation")
            return
        if self.relation.cpr is not None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "duplicate @cpr")
        self.relation.cpr = rest

    def _dir_endrelation(self, rest: str, lineno: int) -> None:
        rel = self.relation
        if rel is None:
            self.error(lineno, dg.UNEXPECTED_DIRECTIVE, "@endrelation without open @relation")
            return
        self.relation = None
        if not rel.packets:
            self.error(rel.line, dg.NO_PACKET, f"relation {rel.rel_id} has no packets")
            return
        if rel.cpr is None:
            self.error(rel.line, dg.MISSING_CPR, f"relation {rel.rel_id} has no @cpr")
            return
        self._add_block(
            RelationDefinition(
                rel_id=rel.rel_id,
                name=rel.name,
                arity=rel.arity,
                packets=rel.packets,
                cpr=rel.cpr,
                comment=rel.comment,
                assertions=rel.assertions,
            ),
            rel.line,
        )

    def _dir_bib(self, rest: str, lineno: int) -> None:
        body = self._take_body("@endbib", lineno)
        if body is not None:
            self.bibliography.append("\n".join(body))

    def _dir_version(self, rest: str, lineno: int) -> None:
        parts = rest.split()
        if len(parts) < 2:
            self.error(lineno, dg.BAD_VERSION_LINE, "@version needs a name and bindings")
            return
        name = parts[0]
        root: str | None = None
        bindings: dict[str, str] = {}
        for pair in parts[1:]:
            key, eq, value = pair.partition("=")
            if not eq or not key or not value:
                self.error(lineno, dg.BAD_VERSION_LINE, f"bad binding {pair!r}")
                return
            if key == "root":
                root = value
            else:
                bindings[key] = value
        if root is None:
            self.error(lineno, dg.BAD_VERSION_LINE, "@version is missing root=")
            return
        self.version_table.append(VersionBinding(name, root, bindings))

    # -- assembly --------------------------------------------------------------

    def _build(self) -> Document | None:
        if self.title is None:
            self.error(1, dg.MISSING_TITLE, "document has no @title")
        if not self.top_sections:
            self.error(1, dg.NO_SECTION, "document has no @section")
        doc = Document(
            title=self.title or "",
            date=self.date,
            authors=self.authors,
            keywords=self.keywords,
            sections=self.top_sections,
            bibliography=self.bibliography,
            version_table=self.version_table,
        )
        self._assign_para_ids(doc)
        if not doc.relations():
            self.error(1, dg.NO_RELATION, "at least one relation definition must be present")
        return doc

    def _assign_para_ids(self, doc: Document) -> None:
        taken = set()
        for _, _, block in doc.walk_blocks():
            if isinstance(block, Paragraph) and block.para_id:
                taken.add(block.para_id)
            elif isinstance(block, RelationDefinition):
                taken.add(block.rel_id)
                taken.update(p.packet_id for p in block.packets)
        counter = 1
        for _, _, block in doc.walk_blocks():
            if isinstance(block, Paragraph) and not block.para_id:
                while f"p{counter}" in taken:
                    counter += 1
                block.para_id = f"p{counter}"
                taken.add(block.para_id)


def parse(src: SourceFile) -> ParseResult:
    """Parse a source file; the document is None when errors were found.

    Structural requirements (title, at least one section and one relation)
    are enforced here; the table of contents and the word index are derived
    artifacts and never appear in the source.
    """
    return _Parser(src).parse()


def parse_text(text: str, path: str = "<string>") -> ParseResult:
    return parse(SourceFile(path, text))


def parse_file(path) -> ParseResult:
    with open(path, encoding="utf-8") as handle:
        return parse(SourceFile(str(path), handle.read()))


def check(src: SourceFile) -> list[Diagnostic]:
    """Syntax verification: parse diagnostics plus document validation."""
    result = parse(src)
    diags = list(result.diagnostics)
    if result.document is not None:
        diags.extend(validate(result.document))
    return diags


def _body_lines(text: str) -> list[str]:
    return text.split("\n") if text else []


def render_version_line(binding: VersionBinding) -> str:
    pairs = " ".join(f"{rel}={pkt}" for rel, pkt in sorted(binding.bindings.items()))
    return f"@version {binding.version_name} root={binding.root} {pairs}".rstrip()


def render(doc: Document) -> str:
    """Serialize a document back to markup.

    ``parse(render(doc))`` is structurally identical to ``doc`` for every
    valid document (packet raw text must be newline terminated, as parsing
    always leaves it).
    """
    out: list[str] = []
    out.append(f"@title {doc.title}".rstrip())
    if doc.date is not None:
        out.append(f"@date {doc.date}".rstrip())
    for author in doc.authors:
        out.append(f"@author {author}".rstrip())
    if doc.keywords:
        out.append("@keywords " + ", ".join(doc.keywords))

    def emit_section(section: Section) -> None:
        out.append("")
        out.append(f"@section {section.heading}".rstrip())
        for block in section.blocks:
            if isinstance(block, Paragraph):
                out.append(f"@para {block.para_id}".rstrip())
                out.extend(_body_lines(block.text))
                out.append("@endpara")
            else:
                arity = "" if block.arity is None else f"/{block.arity}"
                out.append(f"@relation {block.rel_id} {block.name}{arity}")
                if block.comment is not None:
                    out.append("@comment")
                    out.extend(_body_lines(block.comment))
                    out.append("@endcomment")
                if block.assertions is not None:
                    out.append("@assert")
                    out.extend(_body_lines(block.assertions))
                    out.append("@endassert")
                for pkt in block.packets:
                    out.append(f"@packet {pkt.packet_id}")
                    raw = pkt.raw_text
                    if raw and not raw.endswith("\n"):
                        raw += "\n"
                    out.extend(raw.split("\n")[:-1] if raw else [])
                    out.append("@endpacket")
                out.append(f"@cpr {block.cpr}")
                out.append("@endrelation")
        for child in section.children:
            emit_section(child)
        out.append("@endsection")

    for section in doc.sections:
        emit_section(section)

    for entry in doc.bibliography:
        out.append("")
        out.append("@bib")
        out.extend(_body_lines(entry))
        out.append("@endbib")

    if doc.version_table:
        out.append("")
        for binding in doc.version_table:
            out.append(render_version_line(binding))
    return "\n".join(out) + "\n"
