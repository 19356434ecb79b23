"""Version life-cycle: chain traversal, naming, deletion, resolution, tangle.

A version is a named snapshot taken by walking the current-packet/definition-
reference chain from a root relation.  Naming records one packet per reached
relation; later edits to a relation's current packet never touch existing
snapshots, which is what makes several versions of the same program coexist
in one document.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diagnostics as dg
from .clauses import strip_refs
from .diagnostics import Diagnostic
from .model import (
    ClausePacket,
    Document,
    LitweaveError,
    RelationDefinition,
    VersionBinding,
    locate,
)


class UnknownVersionError(LitweaveError):
    code = "UNKNOWN_VERSION"


class DuplicateVersionError(LitweaveError):
    code = "DUP_VERSION"


class DanglingDefError(LitweaveError):
    code = "DANGLING_DEF"


class StaleBindingError(LitweaveError):
    code = "STALE_BINDING"


class UnknownRelationError(LitweaveError):
    code = "UNKNOWN_RELATION"


@dataclass(frozen=True)
class ChainStep:
    """One visit of the chain walk: a relation with its selected packet and
    the (relation id, goal span) that led here, None for the root."""

    relation: str
    packet: str
    reached_from: tuple[str, tuple[int, int]] | None = None


def chain(
    doc: Document,
    start: str,
    overrides: dict[str, str] | None = None,
) -> list[ChainStep]:
    """Depth-first walk from ``start`` following definition references.

    Each relation is visited once, with the packet chosen by ``overrides``
    when present, its current packet otherwise; goals are followed in clause
    order then goal order.  The visited set makes the walk terminate on any
    document, mutual recursion included.
    """
    steps, diags = _walk(doc, start, overrides or {}, strict=True)
    assert not diags
    return steps


def _walk(
    doc: Document,
    start: str,
    overrides: dict[str, str],
    strict: bool,
) -> tuple[list[ChainStep], list[Diagnostic]]:
    by_id = {rel.rel_id: rel for rel in doc.relations()}
    if start not in by_id:
        raise UnknownRelationError(f"no relation with id {start!r}")
    steps: list[ChainStep] = []
    diags: list[Diagnostic] = []
    visited: set[str] = set()

    def visit(rel_id: str, reached_from) -> None:
        if rel_id in visited:
            return
        visited.add(rel_id)
        rel = by_id[rel_id]
        pkt_id = overrides.get(rel_id, rel.cpr)
        pkt = rel.packet(pkt_id)
        if pkt is None:
            problem = Diagnostic(
                dg.STALE_BINDING,
                f"{rel_id}: packet {pkt_id!r} no longer exists",
                location=locate(doc, rel_id),
            )
            if strict:
                raise StaleBindingError(problem.message)
            diags.append(problem)
            return
        steps.append(ChainStep(rel_id, pkt_id, reached_from))
        for clause in pkt.clauses:
            for goal in clause.body_goals:
                if goal.def_ref is None:
                    continue
                if goal.def_ref not in by_id:
                    problem = Diagnostic(
                        dg.DANGLING_DEF,
                        f"goal {goal.indicator} in {pkt_id} references "
                        f"unknown relation id {goal.def_ref!r}",
                        location=locate(doc, pkt_id),
                    )
                    if strict:
                        raise DanglingDefError(problem.message)
                    diags.append(problem)
                    continue
                visit(goal.def_ref, (rel_id, goal.span))

    visit(start, None)
    return steps, diags


def name_version(doc: Document, name: str, start: str) -> Document:
    """New document whose version table gains a snapshot named ``name``.

    The bindings capture the packet every chain relation currently points
    to; re-pointing a relation afterwards does not rewrite them.
    """
    if not name or any(ch.isspace() for ch in name):
        raise LitweaveError(f"bad version name {name!r}")
    if doc.version(name) is not None:
        raise DuplicateVersionError(f"version name {name!r} is already bound")
    steps = chain(doc, start)
    binding = VersionBinding(
        version_name=name,
        root=start,
        bindings={step.relation: step.packet for step in steps},
    )
    return doc.with_version_table(doc.version_table + [binding])


def delete_version(doc: Document, name: str) -> Document:
    """New document without the named version; its badges disappear from
    every rendered relation title."""
    if doc.version(name) is None:
        raise UnknownVersionError(f"no version named {name!r}")
    table = [b for b in doc.version_table if b.version_name != name]
    return doc.with_version_table(table)


def resolve(doc: Document, name: str) -> list[tuple[RelationDefinition, ClausePacket]]:
    """The version's (relation, packet) pairs, recomputed in chain order from
    its root with the stored bindings as overrides."""
    binding = doc.version(name)
    if binding is None:
        raise UnknownVersionError(f"no version named {name!r}")
    steps = chain(doc, binding.root, overrides=binding.bindings)
    pairs = []
    for step in steps:
        rel = doc.relation(step.relation)
        assert rel is not None
        pkt = rel.packet(step.packet)
        assert pkt is not None
        pairs.append((rel, pkt))
    return pairs


def tangle_pairs(pairs: list[tuple[RelationDefinition, ClausePacket]]) -> str:
    chunks = []
    for _, pkt in pairs:
        text = strip_refs(pkt.raw_text, pkt.clauses)
        if text and not text.endswith("\n"):
            text += "\n"
        chunks.append(text)
    return "\n".join(chunks)


def tangle(doc: Document, name: str) -> str:
    """Consultable program text for a version: the resolved packets in chain
    order, reference suffixes stripped, one blank line between packets."""
    return tangle_pairs(resolve(doc, name))


def audit_version(doc: Document, name: str) -> list[Diagnostic]:
    """Warnings where a snapshot has drifted from the live document.

    BINDING_DIVERGED: a bound packet is no longer the relation's current one.
    CHAIN_BROKEN: a definition reference inside a bound packet targets a
    relation the binding map does not cover.
    STALE_BINDING: a bound relation or packet no longer exists at all.
    """
    binding = doc.version(name)
    if binding is None:
        raise UnknownVersionError(f"no version named {name!r}")
    diags: list[Diagnostic] = []
    for rel_id, pkt_id in sorted(binding.bindings.items()):
        rel = doc.relation(rel_id)
        if rel is None:
            diags.append(
                Diagnostic(
                    dg.STALE_BINDING,
                    f"version {name}: bound relation {rel_id} no longer exists",
                    severity=dg.WARNING,
                )
            )
            continue
        pkt = rel.packet(pkt_id)
        if pkt is None:
            diags.append(
                Diagnostic(
                    dg.STALE_BINDING,
                    f"version {name}: bound packet {pkt_id} of {rel_id} no longer exists",
                    severity=dg.WARNING,
                    location=locate(doc, rel_id),
                )
            )
            continue
        if rel.cpr != pkt_id:
            diags.append(
                Diagnostic(
                    dg.BINDING_DIVERGED,
                    f"version {name}: {rel_id} is bound to {pkt_id} but its "
                    f"current packet is now {rel.cpr}",
                    severity=dg.WARNING,
                    location=locate(doc, rel_id),
                )
            )
        for clause in pkt.clauses:
            for goal in clause.body_goals:
                if goal.def_ref is not None and goal.def_ref not in binding.bindings:
                    diags.append(
                        Diagnostic(
                            dg.CHAIN_BROKEN,
                            f"version {name}: {pkt_id} references {goal.def_ref} "
                            "which the version does not bind",
                            severity=dg.WARNING,
                            location=locate(doc, pkt_id),
                        )
                    )
    return diags


def resolve_lenient(
    doc: Document, name: str
) -> tuple[list[tuple[RelationDefinition, ClausePacket]], list[Diagnostic]]:
    """Like resolve, but stale bindings and dangling references become
    diagnostics instead of aborting; used by the versions index."""
    binding = doc.version(name)
    if binding is None:
        raise UnknownVersionError(f"no version named {name!r}")
    try:
        steps, diags = _walk(doc, binding.root, binding.bindings, strict=False)
    except UnknownRelationError as exc:
        stale = Diagnostic(dg.STALE_BINDING, f"version {name}: {exc}", severity=dg.WARNING)
        return [], [stale]
    pairs = []
    for step in steps:
        rel = doc.relation(step.relation)
        assert rel is not None
        pkt = rel.packet(step.packet)
        assert pkt is not None
        pairs.append((rel, pkt))
    return pairs, diags
