#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled sample document.

Parses the sample, names two program versions, tangles one, builds the
indexes, and writes the woven ASCII, LaTeX and HTML output under
``demo_out/``.  Run from the repository root:

    python scripts/demo.py [path/to/document.lw]
"""

import sys
from pathlib import Path

import litweave as lw
from litweave import Scope

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    path = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "tests" / "fixtures" / "peano.lw"
    result = lw.parse_file(path)
    if result.document is None:
        for diag in result.diagnostics:
            print(f"{path}:{diag.render()}", file=sys.stderr)
        return 1
    doc = result.document
    print(f"parsed {path}: {len(doc.relations())} relations")

    if doc.version("V1") is None:
        doc = lw.name_version(doc, "V1", "R_a11")
    if doc.version("V2") is None:
        doc = lw.name_version(doc, "V2", "R_a12")
    for binding in doc.version_table:
        print(f"version {binding.version_name}: {sorted(binding.bindings)}")

    print("\ntangle V2:")
    print(lw.tangle(doc, "V2"))

    for entry in lw.cross_reference_index(doc):
        uses = ", ".join(loc.label() for loc in entry.use_locs) or "-"
        print(f"xref {entry.indicator}: used at {uses}")

    outdir = ROOT / "demo_out"
    outdir.mkdir(exist_ok=True)
    (outdir / "document.txt").write_text(lw.export_ascii(doc), encoding="utf-8")
    (outdir / "document.tex").write_text(lw.export_latex(doc), encoding="utf-8")
    for name, content in lw.export_html(doc, Scope.whole()).items():
        (outdir / name).write_text(content, encoding="utf-8")
    print(f"\nwrote ASCII, LaTeX and HTML to {outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
