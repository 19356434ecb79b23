"""Minimal reader for packets of Prolog clauses.

The reader recovers exactly what the rest of the system needs: clause heads,
the flattened list of body predications in textual order, and the optional
``^REL_ID`` definition-reference suffix on each predication.  Conjunction,
disjunction and if-then are flattened rather than kept as a term tree;
``\\+ G`` is traversed into G.  Operator syntax beyond these control
constructs is rejected with UNSUPPORTED_SYNTAX -- goal identification only
needs functor/arity, never term semantics.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from . import diagnostics as dg
from .diagnostics import Diagnostic
from .model import Clause, Goal, PredicateIndicator

ATOM = "atom"
VAR = "var"
INT = "int"
STRING = "string"
PUNCT = "punct"
END = "end"
EOF = "eof"

_SYMBOLIC = {"(", ")", "[", "]", ",", "|", ";", "->", ":-", "^", "\\+"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


class ClauseSyntaxError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(i + 1)

    def line_col(self, offset: int) -> tuple[int, int]:
        row = bisect.bisect_right(self.line_starts, offset) - 1
        return row + 1, offset - self.line_starts[row] + 1

    def fail(self, offset: int, code: str, message: str) -> ClauseSyntaxError:
        line, col = self.line_col(min(offset, max(len(self.text) - 1, 0)))
        return ClauseSyntaxError(Diagnostic(code, message, line=line, column=col))

    def _skip_layout(self) -> None:
        text, n = self.text, len(self.text)
        while self.pos < n:
            ch = text[self.pos]
            if ch in " \t\r\n":
                self.pos += 1
            elif ch == "%":
                while self.pos < n and text[self.pos] != "\n":
                    self.pos += 1
            elif text.startswith("/*", self.pos):
                close = text.find("*/", self.pos + 2)
                if close < 0:
                    raise self.fail(self.pos, dg.UNBALANCED_TERM, "unterminated /* comment")
                self.pos = close + 2
            else:
                return

    def next_token(self) -> Token:
        self._skip_layout()
        text, n = self.text, len(self.text)
        start = self.pos
        if start >= n:
            return Token(EOF, "", start, start)
        ch = text[start]

        # Clause terminator: '.' followed by layout, comment or end of input.
        if ch == ".":
            nxt = text[start + 1] if start + 1 < n else ""
            if nxt in ("", " ", "\t", "\r", "\n", "%"):
                self.pos = start + 1
                return Token(END, ".", start, self.pos)
            raise self.fail(start, dg.UNSUPPORTED_SYNTAX, "'.' inside a term is not supported")

        if ch.isalpha() or ch == "_":
            end = start + 1
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            self.pos = end
            word = text[start:end]
            kind = VAR if (ch == "_" or ch.isupper()) else ATOM
            return Token(kind, word, start, end)

        if ch.isdigit() or (ch == "-" and start + 1 < n and text[start + 1].isdigit()):
            end = start + 1
            while end < n and text[end].isdigit():
                end += 1
            if end < n and text[end] == "." and end + 1 < n and text[end + 1].isdigit():
                raise self.fail(start, dg.UNSUPPORTED_SYNTAX, "float literals are not supported")
            self.pos = end
            return Token(INT, text[start:end], start, end)

        if ch == "'":
            end = self._scan_quoted(start, "'")
            return Token(ATOM, text[start:end], start, end)
        if ch == '"':
            end = self._scan_quoted(start, '"')
            return Token(STRING, text[start:end], start, end)

        for sym in ("\\+", ":-", "->"):
            if text.startswith(sym, start):
                self.pos = start + len(sym)
                return Token(PUNCT, sym, start, self.pos)
        if ch in "()[],|;^":
            self.pos = start + 1
            return Token(PUNCT, ch, start, self.pos)

        raise self.fail(
            start,
            dg.UNSUPPORTED_SYNTAX,
            f"unsupported character {ch!r} (user-defined operators are out of scope)",
        )

    def _scan_quoted(self, start: int, quote: str) -> int:
        text, n = self.text, len(self.text)
        i = start + 1
        while i < n:
            ch = text[i]
            if ch == "\\" and i + 1 < n:
                i += 2
                continue
            if ch == quote:
                # Doubled quote is an escaped quote inside the literal.
                if i + 1 < n and text[i + 1] == quote:
                    i += 2
                    continue
                self.pos = i + 1
                return i + 1
            i += 1
        raise self.fail(start, dg.UNBALANCED_TERM, f"unterminated {quote} literal")


class _Reader:
    """Recursive-descent reader over the token stream."""

    def __init__(self, text: str):
        self.scanner = _Scanner(text)
        self.text = text
        self.tok = self.scanner.next_token()

    def advance(self) -> Token:
        tok = self.tok
        self.tok = self.scanner.next_token()
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        if self.tok.kind != kind or (text is not None and self.tok.text != text):
            want = text or kind
            raise self.scanner.fail(
                self.tok.start,
                dg.UNBALANCED_TERM,
                f"expected {want!r}, found {self.tok.text or 'end of input'!r}",
            )
        return self.advance()

    def at_punct(self, text: str) -> bool:
        return self.tok.kind == PUNCT and self.tok.text == text

    # -- clauses -----------------------------------------------------------

    def clauses(self) -> list[Clause]:
        out = []
        while self.tok.kind != EOF:
            out.append(self.clause())
        return out

    def clause(self) -> Clause:
        start = self.tok.start
        if self.at_punct(":-"):
            self.advance()
            goals = self.body()
            end = self._end_token(start)
            if not goals:
                raise self.scanner.fail(start, dg.UNBALANCED_TERM, "directive with empty body")
            head = None
        else:
            head, _ = self.predication(allow_ref=False)
            goals = []
            if self.at_punct(":-"):
                self.advance()
                goals = self.body()
            end = self._end_token(start)
        return Clause(
            head=head,
            body_goals=tuple(goals),
            raw_text=self.text[start : end.end],
            span=(start, end.end),
        )

    def _end_token(self, clause_start: int) -> Token:
        if self.tok.kind != END:
            if self.tok.kind == EOF:
                raise self.scanner.fail(
                    clause_start, dg.MISSING_PERIOD, "clause is missing its terminating period"
                )
            raise self.scanner.fail(
                self.tok.start,
                dg.UNSUPPORTED_SYNTAX,
                f"unexpected {self.tok.text!r} after term "
                "(user-defined operators are out of scope)",
            )
        return self.advance()

    # -- bodies ------------------------------------------------------------

    def body(self) -> list[Goal]:
        goals = list(self.goal())
        while self.tok.kind == PUNCT and self.tok.text in (",", ";", "->"):
            self.advance()
            goals.extend(self.goal())
        return goals

    def goal(self) -> list[Goal]:
        if self.at_punct("\\+"):
            self.advance()
            return self.goal()
        if self.at_punct("("):
            self.advance()
            inner = self.body()
            self.expect(PUNCT, ")")
            return inner
        if self.tok.kind == VAR:
            self.advance()
            return []  # meta-call through a variable names no predicate
        if self.tok.kind == ATOM:
            indicator, goal = self.predication(allow_ref=True)
            assert goal is not None
            return [goal]
        raise self.scanner.fail(
            self.tok.start,
            dg.UNBALANCED_TERM,
            f"expected a goal, found {self.tok.text or 'end of input'!r}",
        )

    def predication(self, allow_ref: bool) -> tuple[PredicateIndicator, Goal | None]:
        functor = self.expect(ATOM)
        arity = 0
        end = functor.end
        if self.at_punct("("):
            self.advance()
            arity = 1
            self.term()
            while self.at_punct(","):
                self.advance()
                self.term()
                arity += 1
            close = self.expect(PUNCT, ")")
            end = close.end
        name = _atom_value(functor.text)
        indicator = PredicateIndicator(name, arity)
        if not allow_ref:
            return indicator, None
        def_ref = None
        ref_span = None
        if self.at_punct("^"):
            caret = self.advance()
            if self.tok.kind not in (ATOM, VAR, INT):
                raise self.scanner.fail(
                    caret.start, dg.UNBALANCED_TERM, "'^' must be followed by a relation id"
                )
            ref = self.advance()
            def_ref = ref.text
            ref_span = (caret.start, ref.end)
        return indicator, Goal(
            indicator=indicator, span=(functor.start, end), def_ref=def_ref, ref_span=ref_span
        )

    # -- terms ---------------------------------------------------------------

    def term(self) -> None:
        tok = self.tok
        if tok.kind in (VAR, INT, STRING):
            self.advance()
            return
        if tok.kind == ATOM:
            self.advance()
            if self.at_punct("("):
                self.advance()
                self.term()
                while self.at_punct(","):
                    self.advance()
                    self.term()
                self.expect(PUNCT, ")")
            return
        if self.at_punct("["):
            self.advance()
            if not self.at_punct("]"):
                self.term()
                while self.at_punct(","):
                    self.advance()
                    self.term()
                if self.at_punct("|"):
                    self.advance()
                    self.term()
            self.expect(PUNCT, "]")
            return
        if self.at_punct("("):
            self.advance()
            self.term()
            self.expect(PUNCT, ")")
            return
        raise self.scanner.fail(
            tok.start,
            dg.UNBALANCED_TERM,
            f"expected a term, found {tok.text or 'end of input'!r}",
        )


def _atom_value(text: str) -> str:
    if text.startswith("'") and text.endswith("'") and len(text) >= 2:
        return text[1:-1].replace("''", "'").replace("\\'", "'")
    return text


def parse_clauses(text: str) -> tuple[list[Clause], list[Diagnostic]]:
    """Read a packet body into clauses.

    Returns ``(clauses, diagnostics)``; on a syntax error the clause list is
    empty and one diagnostic pinpoints the failure.  Unknown ``^`` target ids
    are accepted here and left to document validation.
    """
    try:
        return _Reader(text).clauses(), []
    except ClauseSyntaxError as exc:
        return [], [exc.diagnostic]


def strip_refs(text: str, clauses: list[Clause]) -> str:
    """Remove every ``^REL_ID`` suffix from packet text, byte-precisely."""
    spans = sorted(
        goal.ref_span
        for clause in clauses
        for goal in clause.body_goals
        if goal.ref_span is not None
    )
    out = []
    last = 0
    for start, end in spans:
        out.append(text[last:start])
        last = end
    out.append(text[last:])
    return "".join(out)
