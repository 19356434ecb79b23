"""Command-line surface: one subcommand per utility.

Exit codes: 0 success, 1 diagnostics or operational errors, 2 usage errors.
Commands that rewrite the document (``name-version``, ``delete-version``)
splice or drop single ``@version`` lines and write atomically, so hand
formatting elsewhere in the file survives and errors leave it untouched.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import exporters, indexes, markup, projections, testrun, versions
from .exporters import Scope
from .model import Document, LitweaveError, validate


class _Failure(Exception):
    """Abort command with exit code 1 after messages were printed."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise _Failure() from None


def _load(path: str) -> Document:
    result = markup.parse(markup.SourceFile(path, _read(path)))
    for diag in result.diagnostics:
        print(f"{path}:{diag.render()}", file=sys.stderr)
    if result.document is None:
        raise _Failure()
    return result.document


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".litweave_")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_files(files: dict[str, str], output: str | None) -> None:
    if not output:
        print("error: HTML output needs -o DIRECTORY", file=sys.stderr)
        raise _Failure()
    outdir = Path(output)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, content in sorted(files.items()):
        (outdir / name).write_text(content, encoding="utf-8")


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    diags = markup.check(markup.SourceFile(args.file, _read(args.file)))
    for diag in diags:
        print(f"{args.file}:{diag.render()}")
    return 1 if diags else 0


def cmd_name_version(args) -> int:
    doc = _load(args.file)
    new_doc = versions.name_version(doc, args.name, args.start)
    binding = new_doc.version(args.name)
    assert binding is not None
    line = markup.render_version_line(binding)
    _atomic_write(args.file, _splice_version_line(_read(args.file), line))
    return 0


def cmd_delete_version(args) -> int:
    doc = _load(args.file)
    versions.delete_version(doc, args.name)
    _atomic_write(args.file, _remove_version_lines(_read(args.file), args.name))
    return 0


def _splice_version_line(text: str, line: str) -> str:
    lines = text.split("\n")
    insert_at = None
    for i, existing in enumerate(lines):
        if existing.startswith("@version "):
            insert_at = i + 1
    if insert_at is not None:
        lines.insert(insert_at, line)
    else:
        while lines and lines[-1] == "":
            lines.pop()
        lines += ["", line, ""]
    out = "\n".join(lines)
    return out if out.endswith("\n") else out + "\n"


def _remove_version_lines(text: str, name: str) -> str:
    kept = [
        line
        for line in text.split("\n")
        if not (line.startswith("@version ") and line.split()[1:2] == [name])
    ]
    out = "\n".join(kept)
    return out if out.endswith("\n") else out + "\n"


def cmd_list_versions(args) -> int:
    doc = _load(args.file)
    for binding in doc.version_table:
        print(f"{binding.version_name} root={binding.root} relations={len(binding.bindings)}")
    return 0


def cmd_audit(args) -> int:
    doc = _load(args.file)
    diags = versions.audit_version(doc, args.version)
    for diag in diags:
        print(diag.render())
    return 1 if diags else 0


def cmd_tangle(args) -> int:
    doc = _load(args.file)
    _emit(versions.tangle(doc, args.version), args.output)
    return 0


def cmd_index(args) -> int:
    doc = _load(args.file)
    _require_valid(doc)
    if args.format is None:
        builders = {
            "crossref": lambda: indexes.crossref_to_json(indexes.cross_reference_index(doc)),
            "versions": lambda: indexes.versions_to_json(indexes.versions_index(doc)),
            "words": lambda: indexes.words_to_json(indexes.word_index(doc)),
        }
        _emit(builders[args.kind](), args.output)
        return 0
    return _export(doc, Scope.index(args.kind), args.format, args.output)


def _require_valid(doc: Document) -> None:
    problems = validate(doc)
    for diag in problems:
        print(diag.render(), file=sys.stderr)
    if any(d.severity == "error" for d in problems):
        raise _Failure()


def cmd_project(args) -> int:
    doc = _load(args.file)
    if args.criterion == "manual":
        if not args.id:
            print("error: project manual needs --id", file=sys.stderr)
            return 2
        proj = projections.project_manual(doc, args.id)
    elif args.criterion == "regex":
        if args.pattern is None:
            print("error: project regex needs --pattern", file=sys.stderr)
            return 2
        proj = projections.project_regex(doc, args.pattern)
    elif args.criterion == "recursive":
        if not args.relation:
            print("error: project recursive needs --relation", file=sys.stderr)
            return 2
        proj = projections.project_recursive(doc, args.relation)
    elif args.criterion == "version":
        if args.name is None:
            print("error: project version needs --name", file=sys.stderr)
            return 2
        proj = projections.project_version(doc, args.name)
    else:
        if args.kind is None or args.entry is None:
            print("error: project index needs --kind and --entry", file=sys.stderr)
            return 2
        proj = projections.project_index(doc, args.kind, args.entry)
    return _export(doc, Scope.of_projection(proj), args.format, args.output)


def _parse_scope(text: str | None) -> Scope:
    if text is None or text == "whole":
        return Scope.whole()
    kind, eq, value = text.partition("=")
    if not eq or kind not in ("version", "packet", "index"):
        print(f"error: bad scope {text!r} (use version=NAME, packet=ID, index=KIND)",
              file=sys.stderr)
        raise _Failure()
    return Scope(kind, name=value)


def cmd_export(args) -> int:
    doc = _load(args.file)
    return _export(doc, _parse_scope(args.scope), args.format, args.output)


def _export(doc: Document, scope: Scope, fmt: str, output: str | None) -> int:
    if fmt == "ascii":
        _emit(exporters.export_ascii(doc, scope), output)
    elif fmt == "latex":
        _emit(exporters.export_latex(doc, scope), output)
    else:
        _emit_files(exporters.export_html(doc, scope), output)
    return 0


def cmd_test(args) -> int:
    doc = _load(args.file)
    template = args.interp or os.environ.get("LITWEAVE_INTERP")
    if not template:
        print("error: no interpreter (use --interp or LITWEAVE_INTERP)", file=sys.stderr)
        return 2
    cfg = testrun.InterpreterConfig(
        command_template=template,
        goal_flag_template=args.goal_flag,
        timeout=args.timeout,
    )
    runners = {
        "version": testrun.test_version,
        "packet": testrun.test_packet,
        "recursive": testrun.test_recursive,
    }
    report = runners[args.mode](doc, args.target, cfg, goal=args.goal)
    sys.stdout.write(report.stdout)
    sys.stderr.write(report.stderr)
    for item in report.unresolved:
        print(f"unresolved: {item}", file=sys.stderr)
    if report.timed_out:
        print(f"error: interpreter timed out after {args.timeout}s", file=sys.stderr)
        return 1
    return max(0, min(report.exit_code, 255))


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="litweave",
        description="Literate constraint-logic-programming documents: "
        "check, version, tangle, index, project, export, and test.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "verify syntax and structure")
    p.add_argument("file")

    p = add("name-version", cmd_name_version, "snapshot a program version")
    p.add_argument("name")
    p.add_argument("--start", required=True, metavar="REL_ID",
                   help="root relation of the version")
    p.add_argument("file")

    p = add("delete-version", cmd_delete_version, "remove a named version")
    p.add_argument("name")
    p.add_argument("file")

    p = add("list-versions", cmd_list_versions, "list named versions")
    p.add_argument("file")

    p = add("audit", cmd_audit, "report drift between a version and the document")
    p.add_argument("version")
    p.add_argument("file")

    p = add("tangle", cmd_tangle, "extract a version as runnable program text")
    p.add_argument("version")
    p.add_argument("file")
    p.add_argument("-o", "--output")

    p = add("index", cmd_index, "build an index")
    p.add_argument("kind", choices=["crossref", "versions", "words"])
    p.add_argument("file")
    p.add_argument("--format", choices=["ascii", "latex", "html"],
                   help="render through an exporter instead of JSON lines")
    p.add_argument("-o", "--output")

    p = add("project", cmd_project, "compute a filtered view")
    p.add_argument("criterion", choices=["manual", "regex", "recursive", "version", "index"])
    p.add_argument("--id", action="append", help="element id (manual; repeatable)")
    p.add_argument("--pattern", help="regular expression (regex)")
    p.add_argument("--relation", action="append", help="relation id (recursive; repeatable)")
    p.add_argument("--name", help="version name (version)")
    p.add_argument("--kind", choices=["crossref", "versions"], help="index kind (index)")
    p.add_argument("--entry", help="index entry key (index)")
    p.add_argument("--format", choices=["ascii", "latex", "html"], default="ascii")
    p.add_argument("-o", "--output")
    p.add_argument("file")

    p = add("export", cmd_export, "weave the document or a part of it")
    p.add_argument("format", choices=["ascii", "latex", "html"])
    p.add_argument("--scope", help="whole | version=NAME | packet=ID | index=KIND")
    p.add_argument("-o", "--output")
    p.add_argument("file")

    p = add("test", cmd_test, "run extracted code through an interpreter")
    p.add_argument("mode", choices=["version", "packet", "recursive"])
    p.add_argument("target", help="version name, packet/relation id, or relation id")
    p.add_argument("file")
    p.add_argument("--interp", help="command template with {file} "
                   "(default: LITWEAVE_INTERP)")
    p.add_argument("--goal", help="goal to pass to the interpreter")
    p.add_argument("--goal-flag", default="-g {goal}",
                   help="template expanding the goal (default: '-g {goal}')")
    p.add_argument("--timeout", type=float, default=10.0)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure:
        return 1
    except LitweaveError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
