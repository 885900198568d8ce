"""Anaphor resolution against the prior utterance's center list.

Candidates come from the forward-looking centers of the previous
utterance, tried in rank order, first fit wins.  Three mechanisms
cover three kinds of referring expression:

* pronouns match on agreement (gender and number, unknown matches
  anything),
* definite noun phrases corefer with a candidate whose concept is a
  generalization or specialization of their own,
* failing that, a definite noun phrase can be a textual ellipsis,
  bridging to the candidate via a labeled knowledge-base path.

For ellipsis, candidates reachable through a direct bridging edge are
preferred over candidates reachable only through a composed two-step
path, whatever their rank; rank breaks ties inside each group.
Without that preference a high-ranked entity that is merely two hops
away would shadow the intended antecedent sitting one hop away.

The driver scores its predictions against gold annotation per
expression.  Besides the plain outcome, each miss is tested for being
an ordering error: would the resolver have found the gold antecedent
had the candidate list been permuted to put it first?  Errors that no
permutation can repair (the antecedent is absent or incompatible) are
inherent to the resolver, not to the ranking strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from centerline.corpus import (
    Agreement,
    Expression,
    Form,
    Gender,
    LinkType,
    Number,
    Utterance,
)
from centerline.knowledge import KnowledgeBase, bridging_relation, is_generalization_of
from centerline.ranking import CenterElement, CfList, Link

_PRONOUN_FORMS = frozenset({Form.PERSONAL_PRONOUN, Form.POSSESSIVE_PRONOUN})


class Outcome(str, Enum):
    CORRECT = "correct"
    WRONG_ANTECEDENT = "wrong-antecedent"
    SPURIOUS = "spurious"
    MISSED = "missed"
    UNSUPPORTED_CATEGORY = "unsupported-category"


@dataclass(frozen=True)
class ResolutionDecision:
    """Prediction and verdict for one potentially anaphoric expression."""

    expression_id: str
    predicted: str | None
    gold: str | None
    link_type: LinkType | None
    outcome: Outcome
    relation: str | None = None
    ordering_error: bool = False


def agreement_compatible(a: Agreement, b: Agreement) -> bool:
    """Gender and number match, with unknown compatible with anything."""

    gender_ok = (
        a.gender is Gender.UNKNOWN or b.gender is Gender.UNKNOWN or a.gender is b.gender
    )
    number_ok = (
        a.number is Number.UNKNOWN or b.number is Number.UNKNOWN or a.number is b.number
    )
    return gender_ok and number_ok


def resolve_pronoun(pronoun: Expression, cf_prev: CfList) -> CenterElement | None:
    """First candidate, in rank order, that agrees with the pronoun."""

    for candidate in cf_prev:
        features = candidate.agreement
        if features is None or agreement_compatible(pronoun.agreement, features):
            return candidate
    return None


def resolve_nominal_anaphor(
    nominal: Expression, cf_prev: CfList, kb: KnowledgeBase
) -> CenterElement | None:
    """First candidate conceptually compatible with a definite NP.

    Compatible means the anaphor's concept generalizes the candidate's
    (der Rechner picking up a specific computer) or the other way
    around.  Raises UnknownConceptError when a concept is not in the
    knowledge base.
    """

    for candidate in cf_prev:
        if is_generalization_of(kb, nominal.concept, candidate.concept) or is_generalization_of(
            kb, candidate.concept, nominal.concept
        ):
            return candidate
    return None


def resolve_ellipsis(
    nominal: Expression, cf_prev: CfList, kb: KnowledgeBase
) -> tuple[CenterElement, str] | None:
    """Bridging antecedent of an elliptical definite NP, with its label.

    Scans candidates with a direct bridging edge first (rank order),
    then candidates reachable through a composed two-step path.
    """

    composed: tuple[CenterElement, str] | None = None
    for candidate in cf_prev:
        label = bridging_relation(kb, nominal.concept, candidate.concept)
        if label is None:
            continue
        if not label.startswith("via:"):
            return candidate, label
        if composed is None:
            composed = (candidate, label)
    return composed


def attempt_resolution(
    expression: Expression, cf_prev: CfList, kb: KnowledgeBase
) -> tuple[CenterElement, LinkType, str | None] | None:
    """Run the mechanism appropriate to an expression's form.

    Pronouns resolve by agreement.  Definite NPs try coreference by
    concept first and textual ellipsis second.  Any other form is
    taken to introduce its entity and is not resolved.
    """

    if expression.form in _PRONOUN_FORMS:
        antecedent = resolve_pronoun(expression, cf_prev)
        if antecedent is not None:
            return antecedent, LinkType.COREFERENCE, None
        return None
    if expression.form is Form.DEFINITE_NP:
        antecedent = resolve_nominal_anaphor(expression, cf_prev, kb)
        if antecedent is not None:
            return antecedent, LinkType.COREFERENCE, None
        bridged = resolve_ellipsis(expression, cf_prev, kb)
        if bridged is not None:
            antecedent, label = bridged
            return antecedent, LinkType.TEXTUAL_ELLIPSIS, label
        return None
    return None


GoldEntityFn = Callable[[str], str]


def _is_ordering_error(
    expression: Expression,
    cf_prev: CfList,
    kb: KnowledgeBase,
    gold_entity_of: GoldEntityFn,
    gold_target: str,
    gold_link_type: LinkType,
) -> bool:
    """Could some permutation of the candidates yield the gold answer?

    First-fit resolution reaches the gold antecedent under some
    permutation exactly when it reaches it with the gold elements
    moved to the front, so one reordered attempt decides the question.
    Reaching it means a fully correct decision: right entity and right
    link type.
    """

    gold_chain = gold_entity_of(gold_target)
    preferred = [e for e in cf_prev if gold_entity_of(e.realization_id) == gold_chain]
    if not preferred:
        return False
    rest = [e for e in cf_prev if gold_entity_of(e.realization_id) != gold_chain]
    reordered = CfList(preferred + rest)
    result = attempt_resolution(expression, reordered, kb)
    if result is None:
        return False
    antecedent, link_type, _ = result
    return (
        link_type is gold_link_type
        and gold_entity_of(antecedent.realization_id) == gold_chain
    )


def resolve_utterance(
    utterance: Utterance,
    cf_prev: CfList,
    kb: KnowledgeBase,
    gold_entity_of: GoldEntityFn | None = None,
) -> tuple[dict[str, Link], list[ResolutionDecision]]:
    """Resolve one utterance and score the predictions against gold.

    Returns the predicted links (expression id to antecedent
    expression) and one decision per expression that carries a gold
    link or received a prediction.  Expressions excluded from the
    centers are skipped entirely.

    ``gold_entity_of`` maps expression ids to gold coreference chains
    so a prediction counts as correct when it lands anywhere in the
    gold antecedent's chain.  Without it, ids compare directly, which
    is enough when every entity has a single prior mention.

    Outcomes: a gold link flagged with an unsupported category scores
    ``unsupported-category`` no matter the prediction.  Otherwise a
    matching prediction (same link type, same gold chain) is
    ``correct``; a differing one is ``wrong-antecedent``; a missing one
    is ``missed``; and a prediction without any gold link is
    ``spurious``.
    """

    if gold_entity_of is None:
        gold_entity_of = lambda expression_id: expression_id  # noqa: E731

    links: dict[str, Link] = {}
    decisions: list[ResolutionDecision] = []
    for expression in utterance.expressions:
        if expression.exclude_from_cf:
            continue
        result = attempt_resolution(expression, cf_prev, kb)
        predicted_link: Link | None = None
        if result is not None:
            antecedent, link_type, relation = result
            predicted_link = Link(
                target=antecedent.realization_id, link_type=link_type, relation=relation
            )
            links[expression.id] = predicted_link

        gold = expression.gold_link
        if gold is None and predicted_link is None:
            continue

        if gold is not None and gold.unsupported_category is not None:
            outcome = Outcome.UNSUPPORTED_CATEGORY
        elif gold is None:
            outcome = Outcome.SPURIOUS
        elif predicted_link is None:
            outcome = Outcome.MISSED
        elif predicted_link.link_type is gold.link_type and gold_entity_of(
            predicted_link.target
        ) == gold_entity_of(gold.target):
            outcome = Outcome.CORRECT
        else:
            outcome = Outcome.WRONG_ANTECEDENT

        ordering_error = False
        if outcome in (Outcome.MISSED, Outcome.WRONG_ANTECEDENT):
            ordering_error = _is_ordering_error(
                expression, cf_prev, kb, gold_entity_of, gold.target, gold.link_type
            )

        decisions.append(
            ResolutionDecision(
                expression_id=expression.id,
                predicted=predicted_link.target if predicted_link else None,
                gold=gold.target if gold else None,
                link_type=predicted_link.link_type if predicted_link else (gold.link_type if gold else None),
                outcome=outcome,
                relation=predicted_link.relation if predicted_link else None,
                ordering_error=ordering_error,
            )
        )
    return links, decisions
