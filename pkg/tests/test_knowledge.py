"""Knowledge base: parsing, generalization, bridging."""

from __future__ import annotations

import pytest

from centerline import (
    KBFormatError,
    KnowledgeBase,
    UnknownConceptError,
    bridging_relation,
    is_generalization_of,
    parse_kb,
)
from centerline.fixtures import fixture_kb_bytes


def test_fixture_kb_parses():
    kb = parse_kb(fixture_kb_bytes())
    assert len(kb.concepts) == 12
    assert ("DELL-316LT", "COMPUTER") in kb.isa_edges
    assert ("NiMH-ACCU", "ACCU") in kb.isa_edges
    assert ("ACCU", "part-of", "DELL-316LT") in kb.bridging_edges


def test_comments_and_blank_lines_ignored():
    kb = parse_kb("# header\n\nconcept(A)\n  # indented comment\nconcept(B)\n")
    assert kb.concepts == frozenset({"A", "B"})


def test_whitespace_inside_parentheses_tolerated():
    kb = parse_kb("concept( A )\nconcept(B)\nisa( A , B )\n")
    assert ("A", "B") in kb.isa_edges


def test_unparseable_line_names_its_number():
    with pytest.raises(KBFormatError, match="line 2"):
        parse_kb("concept(A)\nconcept A\n")


def test_wrong_arity_rejected():
    with pytest.raises(KBFormatError, match="isa takes 2 arguments"):
        parse_kb("concept(A)\nisa(A)\n")
    with pytest.raises(KBFormatError, match="bridge takes 3 arguments"):
        parse_kb("concept(A)\nbridge(A, part-of)\n")


def test_unknown_declaration_rejected():
    with pytest.raises(KBFormatError, match="unknown declaration"):
        parse_kb("fact(A)\n")


def test_undeclared_endpoint_rejected():
    with pytest.raises(KBFormatError, match="undeclared concept 'B'"):
        parse_kb("concept(A)\nisa(A, B)\n")
    with pytest.raises(KBFormatError, match="undeclared"):
        parse_kb("concept(A)\nbridge(A, part-of, C)\n")


def test_isa_cycle_rejected():
    with pytest.raises(KBFormatError, match="isa cycle"):
        parse_kb("concept(A)\nconcept(B)\nisa(A, B)\nisa(B, A)\n")


def test_self_loop_rejected():
    with pytest.raises(KBFormatError, match="isa cycle"):
        parse_kb("concept(A)\nisa(A, A)\n")


def test_generalization_is_reflexive():
    kb = parse_kb(fixture_kb_bytes())
    assert is_generalization_of(kb, "ACCU", "ACCU")


def test_generalization_follows_direct_edge():
    kb = parse_kb(fixture_kb_bytes())
    assert is_generalization_of(kb, "COMPUTER", "DELL-316LT")
    assert not is_generalization_of(kb, "DELL-316LT", "COMPUTER")


def test_generalization_is_transitive():
    kb = parse_kb(
        "concept(A)\nconcept(B)\nconcept(C)\nisa(A, B)\nisa(B, C)\n"
    )
    assert is_generalization_of(kb, "C", "A")
    assert not is_generalization_of(kb, "A", "C")


def test_generalization_rejects_unknown_concepts():
    kb = parse_kb(fixture_kb_bytes())
    with pytest.raises(UnknownConceptError):
        is_generalization_of(kb, "TOASTER", "ACCU")
    with pytest.raises(UnknownConceptError):
        is_generalization_of(kb, "ACCU", "TOASTER")


def test_unrelated_concepts_are_not_generalizations():
    kb = parse_kb(fixture_kb_bytes())
    assert not is_generalization_of(kb, "USER", "ACCU")


def test_bridging_direct_edge():
    kb = parse_kb(fixture_kb_bytes())
    assert bridging_relation(kb, "ACCU", "DELL-316LT") == "part-of"
    assert bridging_relation(kb, "CHARGE-TIME", "NiMH-ACCU") == "attribute-of"


def test_bridging_composes_two_steps():
    kb = parse_kb(fixture_kb_bytes())
    # DISCHARGE relates to the computer only through the accumulator.
    assert bridging_relation(kb, "DISCHARGE", "DELL-316LT") == "via:ACCU"


def test_bridging_prefers_direct_over_composed():
    kb = parse_kb(
        "concept(A)\nconcept(B)\nconcept(M)\n"
        "bridge(A, part-of, M)\nbridge(M, part-of, B)\n"
        "bridge(A, attribute-of, B)\n"
    )
    assert bridging_relation(kb, "A", "B") == "attribute-of"


def test_bridging_picks_smallest_label_among_direct_edges():
    kb = parse_kb(
        "concept(A)\nconcept(B)\n"
        "bridge(A, part-of, B)\nbridge(A, attribute-of, B)\n"
    )
    assert bridging_relation(kb, "A", "B") == "attribute-of"


def test_bridging_picks_smallest_midpoint():
    kb = parse_kb(
        "concept(A)\nconcept(B)\nconcept(M1)\nconcept(M2)\n"
        "bridge(A, part-of, M2)\nbridge(M2, part-of, B)\n"
        "bridge(A, part-of, M1)\nbridge(M1, part-of, B)\n"
    )
    assert bridging_relation(kb, "A", "B") == "via:M1"


def test_bridging_none_when_unrelated():
    kb = parse_kb(fixture_kb_bytes())
    assert bridging_relation(kb, "USER", "POWER") is None


def test_bridging_rejects_unknown_concepts():
    kb = parse_kb(fixture_kb_bytes())
    with pytest.raises(UnknownConceptError):
        bridging_relation(kb, "TOASTER", "ACCU")


def test_kb_constructor_validates_endpoints():
    with pytest.raises(KBFormatError):
        KnowledgeBase(
            concepts=frozenset({"A"}),
            isa_edges=frozenset({("A", "B")}),
            bridging_edges=frozenset(),
        )
