"""Document model queries: locate, find_relation, validate."""

import dataclasses

import pytest
from hypothesis import given

import litweave as lw
from litweave import Location

from .strategies import linked_documents


class TestLocate:
    def test_first_block_of_first_section(self, peano_doc):
        assert lw.locate(peano_doc, "intro") == Location("1", 1, "loc-1-1")

    def test_relation_first_block_of_subsection(self, peano_doc):
        loc = lw.locate(peano_doc, "R_a12")
        assert (loc.section_path, loc.ordinal) == ("1.2", 1)
        assert loc.anchor == "rel-R_a12"

    def test_packet_shares_block_coordinate(self, peano_doc):
        rel = lw.locate(peano_doc, "R_a11")
        pkt = lw.locate(peano_doc, "P_a11_2")
        assert (pkt.section_path, pkt.ordinal) == (rel.section_path, rel.ordinal)
        assert pkt.anchor == "pkt-P_a11_2"

    def test_unknown_element(self, peano_doc):
        with pytest.raises(lw.UnknownElementError):
            lw.locate(peano_doc, "nope")

    def test_injective_on_block_ids(self, peano_doc):
        block_ids = []
        for _, _, block in peano_doc.walk_blocks():
            block_ids.append(
                block.para_id if isinstance(block, lw.Paragraph) else block.rel_id
            )
        locations = [lw.locate(peano_doc, i) for i in block_ids]
        assert len(set(locations)) == len(block_ids)

    def test_label_rendering(self, peano_doc):
        assert lw.locate(peano_doc, "R_a12").label() == "§1.2#1"


class TestFindRelation:
    def test_same_indicator_twice_in_document_order(self, peano_doc):
        found = lw.find_relation(peano_doc, "a", 1)
        assert [r.rel_id for r in found] == ["R_a11", "R_a12"]

    def test_no_match(self, peano_doc):
        assert lw.find_relation(peano_doc, "zzz", 0) == []

    def test_wildcard_arity_matches_linear_scan(self, peano_doc):
        oracle = [r for r in peano_doc.relations() if r.name == "a"]
        assert lw.find_relation(peano_doc, "a") == oracle

    @given(linked_documents(max_relations=8))
    def test_arity_narrowing_is_a_subset(self, linked):
        doc = linked.document
        for name in {r.name for r in doc.relations()}:
            wide = lw.find_relation(doc, name)
            for arity in {r.arity for r in doc.relations() if r.arity is not None}:
                narrow = lw.find_relation(doc, name, arity)
                assert set(r.rel_id for r in narrow) <= set(r.rel_id for r in wide)


class TestValidate:
    def test_fixture_is_valid(self, peano_doc, lists_doc):
        assert lw.validate(peano_doc) == []
        assert lw.validate(lists_doc) == []

    def test_dangling_cpr(self, peano_doc):
        rel = peano_doc.relation("R_b")
        bad = dataclasses.replace(rel, cpr="P_gone")
        sec = peano_doc.sections[0].children[0]
        sec.blocks[sec.blocks.index(rel)] = bad
        codes = [d.code for d in lw.validate(peano_doc)]
        assert "DANGLING_CPR" in codes

    def test_duplicate_version_name(self, versioned_doc):
        clone = versioned_doc.version_table[0]
        doc = versioned_doc.with_version_table(versioned_doc.version_table + [clone])
        codes = [d.code for d in lw.validate(doc)]
        assert "DUP_VERSION" in codes

    def test_duplicate_ids(self, peano_doc):
        para = next(
            b for _, _, b in peano_doc.walk_blocks() if isinstance(b, lw.Paragraph)
        )
        para.para_id = "R_a11"
        codes = [d.code for d in lw.validate(peano_doc)]
        assert "DUP_ID" in codes

    def test_dangling_def_ref(self, peano_doc):
        sec = peano_doc.sections[0].children[1]
        rel = sec.blocks[0]
        pkt = rel.packets[0]
        goal = pkt.clauses[1].body_goals[0]
        patched = dataclasses.replace(goal, def_ref="R_missing")
        pkt.clauses[1] = dataclasses.replace(pkt.clauses[1], body_goals=(pkt.clauses[1].body_goals[0],))
        pkt.clauses[1] = dataclasses.replace(pkt.clauses[1], body_goals=(patched,))
        codes = [d.code for d in lw.validate(peano_doc)]
        assert "DANGLING_DEF" in codes

    def test_stale_version_binding(self, versioned_doc):
        binding = versioned_doc.version("V1")
        binding.bindings["R_b"] = "P_gone"
        codes = [d.code for d in lw.validate(versioned_doc)]
        assert "STALE_BINDING" in codes
