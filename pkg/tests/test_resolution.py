"""Antecedent search and the scoring of its decisions."""

from __future__ import annotations

import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from centerline import (
    Agreement,
    CfList,
    Expression,
    Form,
    Gender,
    GoldLink,
    KnowledgeBase,
    LinkType,
    Number,
    Outcome,
    Strategy,
    UnknownConceptError,
    UnsupportedCategory,
    Utterance,
    agreement_compatible,
    attempt_resolution,
    build_center_candidates,
    gold_registry,
    rank_cf,
    resolve_ellipsis,
    resolve_nominal_anaphor,
    resolve_pronoun,
    resolve_utterance,
)
from centerline.resolution import _is_ordering_error

from gen import CONCEPT_POOL, center_elements

MASC_SG = Agreement(gender=Gender.MASCULINE, number=Number.SINGULAR)
FEM_SG = Agreement(gender=Gender.FEMININE, number=Number.SINGULAR)
NEUT_SG = Agreement(gender=Gender.NEUTER, number=Number.SINGULAR)


def _element(concept: str, agreement: Agreement):
    from centerline import CenterElement, UNBOUND

    return CenterElement(
        entity=f"{concept}-chain",
        concept=concept,
        status=UNBOUND,
        position_key=1,
        expression_id=f"{concept}-expr",
        surface=concept.lower(),
        agreement=agreement,
    )


def _expr(
    expression_id: str,
    concept: str,
    form: Form = Form.DEFINITE_NP,
    agreement: Agreement = MASC_SG,
    target: str | None = None,
    link_type: LinkType = LinkType.COREFERENCE,
    relation: str | None = None,
    unsupported: UnsupportedCategory | None = None,
    exclude: bool = False,
    position: int = 1,
) -> Expression:
    link = None
    if target is not None:
        link = GoldLink(
            target=target,
            link_type=link_type,
            relation=relation,
            unsupported_category=unsupported,
        )
    return Expression(
        id=expression_id,
        utterance_index=9,
        position=position,
        surface=expression_id,
        head=expression_id,
        concept=concept,
        form=form,
        agreement=agreement,
        gold_link=link,
        exclude_from_cf=exclude,
    )


def _functional_cf(discourse, index: int, kb) -> CfList:
    from centerline import Link

    registry = gold_registry(discourse)
    utterance = discourse.utterances[index]
    links = {}
    for expression in utterance.expressions:
        gold = expression.gold_link
        if expression.exclude_from_cf or gold is None or gold.unsupported_category:
            continue
        links[expression.id] = Link(gold.target, gold.link_type, gold.relation)
    return rank_cf(
        build_center_candidates(utterance, links, registry), Strategy.FUNCTIONAL
    )


# --- agreement ---


def test_agreement_exact_match():
    assert agreement_compatible(MASC_SG, MASC_SG)
    assert not agreement_compatible(MASC_SG, FEM_SG)
    assert not agreement_compatible(
        MASC_SG, Agreement(gender=Gender.MASCULINE, number=Number.PLURAL)
    )


def test_agreement_unknown_is_wildcard():
    unknown = Agreement()
    assert agreement_compatible(unknown, MASC_SG)
    assert agreement_compatible(FEM_SG, unknown)
    assert agreement_compatible(
        Agreement(gender=Gender.UNKNOWN, number=Number.SINGULAR), MASC_SG
    )


# --- the three mechanisms ---


def test_pronoun_takes_first_agreeing_candidate(battery, kb):
    cf = _functional_cf(battery, 2, kb)
    pronoun = _expr("p", "DELL-316LT", form=Form.PERSONAL_PRONOUN, agreement=MASC_SG)
    antecedent = resolve_pronoun(pronoun, cf)
    assert antecedent.surface == "Rechner"

    feminine = _expr("p", "DISCHARGE", form=Form.PERSONAL_PRONOUN, agreement=FEM_SG)
    assert resolve_pronoun(feminine, cf).concept == "DISCHARGE"


def test_pronoun_without_match_returns_none(battery, kb):
    cf = _functional_cf(battery, 2, kb)
    neuter = _expr("p", "DELL-316LT", form=Form.PERSONAL_PRONOUN, agreement=NEUT_SG)
    assert resolve_pronoun(neuter, cf) is None


def test_nominal_anaphor_by_generalization(battery, kb):
    cf = _functional_cf(battery, 1, kb)
    rechner = _expr("n", "COMPUTER")
    antecedent = resolve_nominal_anaphor(rechner, cf, kb)
    assert antecedent.concept == "DELL-316LT"


def test_nominal_anaphor_by_specialization(nimh, kb):
    cf = _functional_cf(nimh, 0, kb)
    nimh_np = _expr("n", "NiMH-ACCU")
    antecedent = resolve_nominal_anaphor(nimh_np, cf, kb)
    assert antecedent.entity == "2a-nimh"


def test_nominal_anaphor_requires_known_concept(battery, kb):
    cf = _functional_cf(battery, 1, kb)
    with pytest.raises(UnknownConceptError):
        resolve_nominal_anaphor(_expr("n", "TOASTER"), cf, kb)


def test_nominal_anaphor_none_when_nothing_related(battery, kb):
    cf = _functional_cf(battery, 0, kb)
    assert resolve_nominal_anaphor(_expr("n", "USER"), cf, kb) is None


def test_ellipsis_prefers_direct_edge_over_better_ranked_composed(battery, kb):
    cf = _functional_cf(battery, 1, kb)
    # the computer outranks the accumulator here, but only the
    # accumulator carries a direct bridging edge for DISCHARGE; the
    # computer is reachable through a composed path only
    discharge = _expr("n", "DISCHARGE")
    antecedent, label = resolve_ellipsis(discharge, cf, kb)
    assert antecedent.concept == "ACCU"
    assert label == "attribute-of"


def test_ellipsis_falls_back_to_composed_path(battery, kb):
    cf = _functional_cf(battery, 0, kb)
    # only the computer is on this list; DISCHARGE reaches it via the
    # accumulator concept
    discharge = _expr("n", "DISCHARGE")
    antecedent, label = resolve_ellipsis(discharge, cf, kb)
    assert antecedent.concept == "DELL-316LT"
    assert label == "via:ACCU"


def test_ellipsis_none_without_any_path(battery, kb):
    cf = _functional_cf(battery, 0, kb)
    assert resolve_ellipsis(_expr("n", "USER"), cf, kb) is None


# --- routing ---


def test_attempt_routes_pronouns(battery, kb):
    cf = _functional_cf(battery, 2, kb)
    pronoun = _expr("p", "DELL-316LT", form=Form.PERSONAL_PRONOUN)
    antecedent, link_type, relation = attempt_resolution(pronoun, cf, kb)
    assert link_type is LinkType.COREFERENCE
    assert relation is None
    assert antecedent.surface == "Rechner"


def test_attempt_tries_coreference_before_bridging(nimh, kb):
    cf = _functional_cf(nimh, 0, kb)
    akku = _expr("n", "ACCU")
    antecedent, link_type, _ = attempt_resolution(akku, cf, kb)
    assert link_type is LinkType.COREFERENCE
    assert antecedent.entity == "2a-nimh"

    ladezeit = _expr("n", "CHARGE-TIME")
    antecedent, link_type, relation = attempt_resolution(ladezeit, cf, kb)
    assert link_type is LinkType.TEXTUAL_ELLIPSIS
    assert antecedent.entity == "2a-nimh"
    assert relation == "attribute-of"


def test_attempt_skips_entity_introducing_forms(battery, kb):
    cf = _functional_cf(battery, 0, kb)
    for form in (Form.INDEFINITE_NP, Form.PROPER_NAME, Form.OTHER_NP):
        assert attempt_resolution(_expr("n", "COMPUTER", form=form), cf, kb) is None


# --- scoring ---


def test_fixture_pronoun_scored_correct(battery, kb):
    cf = _functional_cf(battery, 2, kb)
    registry = gold_registry(battery)
    links, decisions = resolve_utterance(
        battery.utterances[3], cf, kb, gold_entity_of=registry.entity
    )
    assert links["1d-er"].target == "1c-rechner"
    [decision] = decisions
    assert decision.outcome is Outcome.CORRECT
    assert not decision.ordering_error


def test_wrong_antecedent_is_an_ordering_error_when_reordering_fixes_it(battery, kb):
    from centerline import Link

    registry = gold_registry(battery)
    utterance = battery.utterances[2]
    links = {}
    for expression in utterance.expressions:
        gold = expression.gold_link
        if gold is None:
            continue
        links[expression.id] = Link(gold.target, gold.link_type, gold.relation)
    naive_cf = rank_cf(
        build_center_candidates(utterance, links, registry), Strategy.NAIVE
    )
    _, decisions = resolve_utterance(
        battery.utterances[3], naive_cf, kb, gold_entity_of=registry.entity
    )
    [decision] = decisions
    assert decision.outcome is Outcome.WRONG_ANTECEDENT
    assert decision.predicted == "1b-akku"  # the implicit accumulator wins
    assert decision.ordering_error  # the computer was available, just outranked


def test_spurious_prediction(kb):
    cf = CfList([_element("ACCU", MASC_SG)])
    utterance = Utterance(9, "s", (_expr("s1", "ACCU"),))
    _, decisions = resolve_utterance(utterance, cf, kb)
    [decision] = decisions
    assert decision.outcome is Outcome.SPURIOUS
    assert decision.gold is None


def test_missed_prediction(kb):
    cf = CfList([_element("USER", MASC_SG)])
    utterance = Utterance(9, "m", (_expr("m1", "ACCU", target="earlier"),))
    _, decisions = resolve_utterance(utterance, cf, kb)
    [decision] = decisions
    assert decision.outcome is Outcome.MISSED
    assert decision.predicted is None
    assert not decision.ordering_error  # the gold antecedent is not on the list


def test_unsupported_category_wins_over_any_prediction(kb):
    element = _element("ACCU", MASC_SG)
    cf = CfList([element])
    utterance = Utterance(
        9,
        "u",
        (
            _expr(
                "u1",
                "ACCU",
                target=element.realization_id,
                unsupported=UnsupportedCategory.PLURAL_ANAPHOR,
            ),
        ),
    )
    _, decisions = resolve_utterance(utterance, cf, kb)
    [decision] = decisions
    assert decision.outcome is Outcome.UNSUPPORTED_CATEGORY


def test_excluded_expressions_get_no_decision(kb):
    cf = CfList([_element("ACCU", MASC_SG)])
    utterance = Utterance(9, "x", (_expr("x1", "ACCU", target="t", exclude=True),))
    links, decisions = resolve_utterance(utterance, cf, kb)
    assert links == {}
    assert decisions == []


def test_unlinked_unresolved_expression_gets_no_decision(kb):
    cf = CfList([_element("USER", MASC_SG)])
    utterance = Utterance(9, "q", (_expr("q1", "POWER", form=Form.OTHER_NP),))
    _, decisions = resolve_utterance(utterance, cf, kb)
    assert decisions == []


def test_type_mismatch_is_not_an_ordering_error(kb):
    # gold says bridging, but the concept match means every ordering
    # resolves this NP as coreference instead
    element = _element("ACCU", MASC_SG)
    cf = CfList([element])
    expression = _expr(
        "t1",
        "ACCU",
        target=element.realization_id,
        link_type=LinkType.TEXTUAL_ELLIPSIS,
        relation="part-of",
    )
    utterance = Utterance(9, "t", (expression,))
    _, decisions = resolve_utterance(utterance, cf, kb)
    [decision] = decisions
    assert decision.outcome is Outcome.WRONG_ANTECEDENT
    assert not decision.ordering_error


# --- the reordering check against a brute-force oracle ---

_LABELS = ["part-of", "attribute-of"]
_CONCEPTS = CONCEPT_POOL


@st.composite
def _resolution_cases(draw):
    elements = draw(
        st.lists(
            center_elements(),
            min_size=1,
            max_size=4,
            unique_by=lambda element: element.entity,
        )
    )
    isa = draw(
        st.sets(
            st.sampled_from(
                [
                    (a, b)
                    for i, a in enumerate(_CONCEPTS)
                    for b in _CONCEPTS[i + 1 :]
                ]
            ),
            max_size=3,
        )
    )
    bridges = draw(
        st.sets(
            st.tuples(
                st.sampled_from(_CONCEPTS),
                st.sampled_from(_LABELS),
                st.sampled_from(_CONCEPTS),
            ),
            max_size=4,
        )
    )
    kb = KnowledgeBase(
        concepts=frozenset(_CONCEPTS),
        isa_edges=frozenset(isa),
        bridging_edges=frozenset(bridges),
    )
    form = draw(
        st.sampled_from([Form.PERSONAL_PRONOUN, Form.POSSESSIVE_PRONOUN, Form.DEFINITE_NP])
    )
    gold_type = draw(st.sampled_from(list(LinkType)))
    present = draw(st.booleans())
    if present:
        gold_target = draw(st.sampled_from(elements)).realization_id
    else:
        gold_target = "elsewhere"
    expression = _expr(
        "probe",
        draw(st.sampled_from(_CONCEPTS)),
        form=form,
        agreement=draw(
            st.builds(
                Agreement,
                gender=st.sampled_from(list(Gender)),
                number=st.sampled_from(list(Number)),
            )
        ),
        target=gold_target,
        link_type=gold_type,
    )
    return elements, kb, expression


@given(case=_resolution_cases())
@settings(max_examples=500)
def test_reordering_check_equals_permutation_search(case):
    elements, kb, expression = case
    gold = expression.gold_link
    chain_of = {element.realization_id: element.concept for element in elements}
    gold_entity_of = lambda expression_id: chain_of.get(expression_id, expression_id)

    def brute_force() -> bool:
        gold_chain = gold_entity_of(gold.target)
        for permutation in itertools.permutations(elements):
            result = attempt_resolution(expression, CfList(permutation), kb)
            if result is None:
                continue
            antecedent, link_type, _ = result
            if (
                link_type is gold.link_type
                and gold_entity_of(antecedent.realization_id) == gold_chain
            ):
                return True
        return False

    assert (
        _is_ordering_error(
            expression, CfList(elements), kb, gold_entity_of, gold.target, gold.link_type
        )
        == brute_force()
    )
