"""Run extracted code through an external interpreter.

Three modes select what is loaded -- a named version, a single packet or
relation, or the whole reference chain of a relation -- and that is the only
thing that differs between them: the extracted program text is written to a
temporary file, the configured interpreter consumes it, and the streams,
exit code and timing come back in a report.  The temporary file never
survives the call.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from .clauses import strip_refs
from .model import Document, LitweaveError, UnknownElementError
from .projections import project_recursive
from .versions import chain, tangle, tangle_pairs

MODE_VERSION = "version"
MODE_PACKET = "packet"
MODE_RECURSIVE = "recursive"


class InterpreterNotFoundError(LitweaveError):
    code = "INTERPRETER_NOT_FOUND"


class BadInterpreterConfig(LitweaveError):
    code = "BAD_INTERPRETER_CONFIG"


@dataclass(frozen=True)
class InterpreterConfig:
    """How to invoke the external interpreter.

    ``command_template`` must mention ``{file}`` exactly once; when a goal is
    passed and ``goal_flag_template`` is set, its expansion is appended to
    the argument list.  Without a goal flag the interpreter only consults
    the file (stdin is closed).
    """

    command_template: str
    goal_flag_template: str | None = None
    timeout: float = 10.0

    def validate(self) -> None:
        if self.command_template.count("{file}") != 1:
            raise BadInterpreterConfig("command template must contain {file} exactly once")
        if self.timeout <= 0:
            raise BadInterpreterConfig("timeout must be positive")

    def argv(self, path: str, goal: str | None) -> list[str]:
        args = [token.replace("{file}", path) for token in shlex.split(self.command_template)]
        if goal is not None and self.goal_flag_template is not None:
            args.extend(
                token.replace("{goal}", goal) for token in shlex.split(self.goal_flag_template)
            )
        return args


@dataclass
class TestReport:
    mode: str
    loaded_code: str
    exit_code: int
    stdout: str
    stderr: str
    duration: float
    timed_out: bool
    unresolved: list[str] = field(default_factory=list)


def _run(mode: str, code: str, cfg: InterpreterConfig, goal: str | None) -> TestReport:
    cfg.validate()
    fd, path = tempfile.mkstemp(suffix=".pl", prefix="litweave_")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(code)
        argv = cfg.argv(path, goal)
        started = time.monotonic()
        timed_out = False
        try:
            proc = subprocess.run(
                argv,
                capture_output=True,
                text=True,
                timeout=cfg.timeout,
                stdin=subprocess.DEVNULL,
            )
            exit_code, stdout, stderr = proc.returncode, proc.stdout, proc.stderr
        except FileNotFoundError:
            raise InterpreterNotFoundError(f"interpreter not found: {argv[0]!r}") from None
        except subprocess.TimeoutExpired as exc:
            timed_out = True
            exit_code = -1
            stdout = _text(exc.stdout)
            stderr = _text(exc.stderr)
        duration = time.monotonic() - started
        return TestReport(
            mode=mode,
            loaded_code=code,
            exit_code=exit_code,
            stdout=stdout,
            stderr=stderr,
            duration=duration,
            timed_out=timed_out,
        )
    finally:
        os.unlink(path)


def _text(data) -> str:
    if data is None:
        return ""
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def test_version(
    doc: Document, name: str, cfg: InterpreterConfig, goal: str | None = None
) -> TestReport:
    """Load a named version, chain order from the root."""
    code = tangle(doc, name)
    return _run(MODE_VERSION, code, cfg, goal)


def test_packet(
    doc: Document, element_id: str, cfg: InterpreterConfig, goal: str | None = None
) -> TestReport:
    """Load one packet; a relation id loads its current packet."""
    rel = doc.relation(element_id)
    pkt = None
    if rel is not None:
        pkt = rel.current_packet()
    else:
        for candidate in doc.relations():
            pkt = candidate.packet(element_id)
            if pkt is not None:
                break
    if pkt is None:
        raise UnknownElementError(f"no packet or relation with id {element_id!r}")
    code = strip_refs(pkt.raw_text, pkt.clauses)
    return _run(MODE_PACKET, code, cfg, goal)


def test_recursive(
    doc: Document, rel_id: str, cfg: InterpreterConfig, goal: str | None = None
) -> TestReport:
    """Load the whole reference chain starting from the selected relation.

    An incomplete chain is loaded as-is; predications that still lack a
    definition reference are listed on the report.
    """
    steps = chain(doc, rel_id)
    pairs = []
    for step in steps:
        rel = doc.relation(step.relation)
        assert rel is not None
        pkt = rel.packet(step.packet)
        assert pkt is not None
        pairs.append((rel, pkt))
    code = tangle_pairs(pairs)
    report = _run(MODE_RECURSIVE, code, cfg, goal)
    projection = project_recursive(doc, [rel_id])
    report.unresolved = [
        f"{goal_.indicator} in {goal_.packet}" for goal_ in projection.unresolved
    ]
    return report
