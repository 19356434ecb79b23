"""litweave: literate documents for constraint logic programs.

A ``.lw`` file interleaves prose with versioned packets of Prolog clauses.
This package parses the format, resolves named program versions along
reference chains, builds indexes, computes projections, tangles runnable
code for an external interpreter, and weaves ASCII, LaTeX, and hyperlinked
HTML.
"""

from .clauses import parse_clauses, strip_refs
from .diagnostics import Diagnostic
from .exporters import (
    ExportRequest,
    Scope,
    UnresolvableScopeError,
    export_ascii,
    export_html,
    export_latex,
)
from .indexes import (
    CrossRefEntry,
    VersionIndexEntry,
    WordIndexEntry,
    cross_reference_index,
    versions_index,
    word_index,
)
from .markup import ParseResult, SourceFile, check, parse, parse_file, parse_text, render
from .model import (
    Block,
    Clause,
    ClausePacket,
    Document,
    Goal,
    LitweaveError,
    Location,
    Paragraph,
    PredicateIndicator,
    RelationDefinition,
    Section,
    UnknownElementError,
    VersionBinding,
    find_relation,
    locate,
    validate,
)
from .projections import (
    BadPatternError,
    Highlight,
    ProjectedBlock,
    Projection,
    UnknownEntryError,
    UnresolvedGoal,
    project_index,
    project_manual,
    project_recursive,
    project_regex,
    project_version,
)
from .testrun import (
    InterpreterConfig,
    InterpreterNotFoundError,
    TestReport,
    test_packet,
    test_recursive,
    test_version,
)
from .versions import (
    ChainStep,
    DanglingDefError,
    DuplicateVersionError,
    StaleBindingError,
    UnknownRelationError,
    UnknownVersionError,
    audit_version,
    chain,
    delete_version,
    name_version,
    resolve,
    tangle,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "BadPatternError",
    "ChainStep",
    "Clause",
    "ClausePacket",
    "CrossRefEntry",
    "Diagnostic",
    "Document",
    "DanglingDefError",
    "DuplicateVersionError",
    "ExportRequest",
    "Goal",
    "Highlight",
    "InterpreterConfig",
    "InterpreterNotFoundError",
    "LitweaveError",
    "Location",
    "Paragraph",
    "ParseResult",
    "PredicateIndicator",
    "ProjectedBlock",
    "Projection",
    "RelationDefinition",
    "Scope",
    "Section",
    "SourceFile",
    "StaleBindingError",
    "TestReport",
    "UnknownElementError",
    "UnknownEntryError",
    "UnknownRelationError",
    "UnknownVersionError",
    "UnresolvableScopeError",
    "UnresolvedGoal",
    "VersionBinding",
    "VersionIndexEntry",
    "WordIndexEntry",
    "audit_version",
    "chain",
    "check",
    "cross_reference_index",
    "delete_version",
    "export_ascii",
    "export_html",
    "export_latex",
    "find_relation",
    "locate",
    "name_version",
    "parse",
    "parse_clauses",
    "parse_file",
    "parse_text",
    "project_index",
    "project_manual",
    "project_recursive",
    "project_regex",
    "project_version",
    "render",
    "resolve",
    "strip_refs",
    "tangle",
    "test_packet",
    "test_recursive",
    "test_version",
    "validate",
    "versions_index",
    "word_index",
]
