"""Local coherence: backward centers, transitions, and pair costs.

Each utterance gets a centering state: the ranked forward-looking
centers, the backward-looking center (the best-ranked entity of the
previous utterance that is realized again), the transition type
between the utterances, and the hearer's inference cost for the pair.

Transition classification needs three entities: the previous and
current backward centers and the current preferred center.  A missing
current backward center means the utterances share no entity and the
transition is NONE.  Otherwise keeping the backward center (or having
had none to keep) splits into CONTINUE and RETAIN by whether the
backward center is also preferred, and changing it splits the same
way into SMOOTH-SHIFT and ROUGH-SHIFT.

Cost comes in two variants that the evaluation keeps side by side: a
definitional rule (a pair is cheap exactly when the current backward
center was the previous preferred center) and a lookup over the
transition pair, where the first pair of a discourse uses a dedicated
no-previous-transition row.  The two variants agree on most pairs but
not all, and disagreements are surfaced rather than hidden.

The first utterance has nothing to look back to.  By convention its
backward center is its preferred center, its transition is CONTINUE
(NONE when it realizes no entity at all), and it forms no cost pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from centerline.chains import EntityRegistry, gold_registry
from centerline.corpus import Discourse, LinkType, Utterance
from centerline.knowledge import KnowledgeBase
from centerline.ranking import (
    CenterElement,
    CfList,
    Link,
    Strategy,
    build_center_candidates,
    rank_cf,
)
from centerline.resolution import ResolutionDecision, resolve_utterance


class TransitionType(str, Enum):
    CONTINUE = "CONTINUE"
    RETAIN = "RETAIN"
    SMOOTH_SHIFT = "SMOOTH-SHIFT"
    ROUGH_SHIFT = "ROUGH-SHIFT"
    NONE = "NONE"


class PairCost(str, Enum):
    CHEAP = "cheap"
    EXPENSIVE = "expensive"
    UNDEFINED = "undefined"


class Mode(str, Enum):
    """Where the links that drive ranking come from.

    In gold mode the annotated links shape chains and center lists,
    and the resolver runs purely to be scored, so one bad resolution
    cannot distort the centering data of later utterances.  In system
    mode the resolver's own predictions feed back into the chains and
    the ranking, errors included.
    """

    GOLD = "gold"
    SYSTEM = "system"


@dataclass(frozen=True)
class CenteringState:
    utterance_index: int
    cb: CenterElement | None
    cf: CfList
    transition: TransitionType
    cost_definitional: PairCost
    cost_table: PairCost
    is_discourse_initial: bool
    decisions: tuple[ResolutionDecision, ...] = ()

    @property
    def cp(self) -> CenterElement | None:
        return self.cf.preferred


@dataclass(frozen=True)
class CenteringTrace:
    discourse_id: str
    strategy: Strategy
    mode: Mode
    states: tuple[CenteringState, ...]


def realized_entities(
    utterance: Utterance, links: dict[str, Link], registry: EntityRegistry
) -> frozenset[str]:
    """Entities the utterance realizes, explicitly or implicitly.

    Covers the chains of all expressions not excluded from the centers
    plus, for each textual-ellipsis link, the antecedent's chain.
    """

    realized: set[str] = set()
    for expression in utterance.expressions:
        if expression.exclude_from_cf:
            continue
        realized.add(registry.entity(expression.id))
        link = links.get(expression.id)
        if link is not None and link.link_type is LinkType.TEXTUAL_ELLIPSIS:
            realized.add(registry.entity(link.target))
    return frozenset(realized)


def compute_cb(cf_prev: CfList, realized: frozenset[str]) -> CenterElement | None:
    """Backward center: best-ranked prior element realized again."""

    for element in cf_prev:
        if element.entity in realized:
            return element
    return None


def classify_transition(
    cb_prev: str | None, cb_cur: str | None, cp_cur: str | None
) -> TransitionType:
    """Transition type from the relevant center entities.

    Exactly one type applies to any input.  NONE exactly when the
    current backward center is absent.
    """

    if cb_cur is None:
        return TransitionType.NONE
    kept = cb_prev is None or cb_cur == cb_prev
    preferred = cb_cur == cp_cur
    if kept:
        return TransitionType.CONTINUE if preferred else TransitionType.RETAIN
    return TransitionType.SMOOTH_SHIFT if preferred else TransitionType.ROUGH_SHIFT


def pair_cost_definitional(cb_cur: str | None, cp_prev: str | None) -> PairCost:
    """Cheap iff the current backward center was the prior preferred
    center; undefined unless both are present."""

    if cb_cur is None or cp_prev is None:
        return PairCost.UNDEFINED
    return PairCost.CHEAP if cb_cur == cp_prev else PairCost.EXPENSIVE


_COST_TABLE: dict[tuple[TransitionType | None, TransitionType], PairCost] = {
    (None, TransitionType.CONTINUE): PairCost.CHEAP,
    (None, TransitionType.RETAIN): PairCost.EXPENSIVE,
    (None, TransitionType.SMOOTH_SHIFT): PairCost.UNDEFINED,
    (None, TransitionType.ROUGH_SHIFT): PairCost.UNDEFINED,
    (TransitionType.CONTINUE, TransitionType.CONTINUE): PairCost.CHEAP,
    (TransitionType.CONTINUE, TransitionType.RETAIN): PairCost.CHEAP,
    (TransitionType.CONTINUE, TransitionType.SMOOTH_SHIFT): PairCost.EXPENSIVE,
    (TransitionType.CONTINUE, TransitionType.ROUGH_SHIFT): PairCost.EXPENSIVE,
    (TransitionType.RETAIN, TransitionType.CONTINUE): PairCost.EXPENSIVE,
    (TransitionType.RETAIN, TransitionType.RETAIN): PairCost.EXPENSIVE,
    (TransitionType.RETAIN, TransitionType.SMOOTH_SHIFT): PairCost.CHEAP,
    (TransitionType.RETAIN, TransitionType.ROUGH_SHIFT): PairCost.EXPENSIVE,
    (TransitionType.SMOOTH_SHIFT, TransitionType.CONTINUE): PairCost.CHEAP,
    (TransitionType.SMOOTH_SHIFT, TransitionType.RETAIN): PairCost.EXPENSIVE,
    (TransitionType.SMOOTH_SHIFT, TransitionType.SMOOTH_SHIFT): PairCost.EXPENSIVE,
    (TransitionType.SMOOTH_SHIFT, TransitionType.ROUGH_SHIFT): PairCost.EXPENSIVE,
    (TransitionType.ROUGH_SHIFT, TransitionType.CONTINUE): PairCost.EXPENSIVE,
    (TransitionType.ROUGH_SHIFT, TransitionType.RETAIN): PairCost.EXPENSIVE,
    (TransitionType.ROUGH_SHIFT, TransitionType.SMOOTH_SHIFT): PairCost.CHEAP,
    (TransitionType.ROUGH_SHIFT, TransitionType.ROUGH_SHIFT): PairCost.EXPENSIVE,
}


def pair_cost_table(
    prev: TransitionType | None, cur: TransitionType
) -> PairCost:
    """Lookup cost for a pair of consecutive transitions.

    ``prev`` is None for the first pair of a discourse; the dedicated
    first-pair row prices CONTINUE cheap, RETAIN expensive, and leaves
    the shifts undefined.  Any NONE transition makes the pair
    undefined.
    """

    if cur is TransitionType.NONE or prev is TransitionType.NONE:
        return PairCost.UNDEFINED
    return _COST_TABLE[(prev, cur)]


def _gold_links(utterance: Utterance) -> dict[str, Link]:
    links: dict[str, Link] = {}
    for expression in utterance.expressions:
        if expression.exclude_from_cf:
            continue
        gold = expression.gold_link
        if gold is None or gold.unsupported_category is not None:
            continue
        links[expression.id] = Link(
            target=gold.target, link_type=gold.link_type, relation=gold.relation
        )
    return links


def run_discourse(
    discourse: Discourse,
    kb: KnowledgeBase,
    strategy: Strategy,
    mode: Mode = Mode.GOLD,
) -> CenteringTrace:
    """Centering states for every utterance of a discourse.

    The chosen strategy ranks each utterance's centers; the mode picks
    the links that drive chains and ranking (annotation or resolver
    output).  Either way the resolver runs on every utterance against
    the previous center list, and its scored decisions ride along on
    the states.
    """

    gold_chains = gold_registry(discourse)
    gold_entity_of = gold_chains.entity

    if mode is Mode.GOLD:
        registry = gold_chains
    else:
        registry = EntityRegistry()

    states: list[CenteringState] = []
    cf_prev = CfList(())
    for utterance in discourse.utterances:
        if mode is Mode.SYSTEM:
            for expression in utterance.expressions:
                registry.add(expression)
        predicted_links, decisions = resolve_utterance(
            utterance, cf_prev, kb, gold_entity_of
        )
        if mode is Mode.GOLD:
            links = _gold_links(utterance)
        else:
            links = predicted_links
            for source, link in links.items():
                if link.link_type is LinkType.COREFERENCE:
                    registry.merge(source, link.target)

        cf = rank_cf(build_center_candidates(utterance, links, registry), strategy)
        initial = not states

        if initial:
            cb = cf.preferred
            transition = (
                TransitionType.CONTINUE if cb is not None else TransitionType.NONE
            )
            cost_def = PairCost.UNDEFINED
            cost_tab = PairCost.UNDEFINED
        else:
            prev = states[-1]
            realized = realized_entities(utterance, links, registry)
            cb_in_prev = compute_cb(prev.cf, realized)
            cb = cf.find(cb_in_prev.entity) if cb_in_prev is not None else None
            transition = classify_transition(
                prev.cb.entity if prev.cb is not None else None,
                cb.entity if cb is not None else None,
                cf.preferred.entity if cf.preferred is not None else None,
            )
            cost_def = pair_cost_definitional(
                cb.entity if cb is not None else None,
                prev.cf.preferred.entity if prev.cf.preferred is not None else None,
            )
            prev_row = None if prev.is_discourse_initial else prev.transition
            cost_tab = pair_cost_table(prev_row, transition)

        states.append(
            CenteringState(
                utterance_index=utterance.index,
                cb=cb,
                cf=cf,
                transition=transition,
                cost_definitional=cost_def,
                cost_table=cost_tab,
                is_discourse_initial=initial,
                decisions=tuple(decisions),
            )
        )
        cf_prev = cf
    return CenteringTrace(
        discourse_id=discourse.id, strategy=strategy, mode=mode, states=tuple(states)
    )


def _element_to_json(element: CenterElement | None) -> dict[str, Any] | None:
    if element is None:
        return None
    return {"entity": element.concept, "surface": element.surface}


def export_trace(trace: CenteringTrace) -> dict[str, Any]:
    """JSON-ready view of a trace.

    Entities render as their chain's concept (the usual display name);
    implicit realizations have a null surface.  Resolution decisions
    ride along per utterance.
    """

    return {
        "discourse": trace.discourse_id,
        "strategy": trace.strategy.value,
        "mode": trace.mode.value,
        "utterances": [
            {
                "index": state.utterance_index,
                "cb": _element_to_json(state.cb),
                "cf": [
                    {
                        "entity": element.concept,
                        "surface": element.surface,
                        "status": element.status.render(),
                    }
                    for element in state.cf
                ],
                "transition": state.transition.value,
                "cost_definitional": state.cost_definitional.value,
                "cost_table": state.cost_table.value,
                "decisions": [
                    {
                        "id": decision.expression_id,
                        "predicted": decision.predicted,
                        "gold": decision.gold,
                        "link_type": decision.link_type.value if decision.link_type else None,
                        "outcome": decision.outcome.value,
                    }
                    for decision in state.decisions
                ],
            }
            for state in trace.states
        ],
    }
