"""Forward-looking center construction and ranking strategies.

A center element pairs a discourse entity with the way the current
utterance realizes it.  Realization is explicit (a referring
expression) or implicit (the antecedent of a textual ellipsis, present
only through its licensing expression).  Ranking turns the bag of
elements for one utterance into the ordered forward-looking center
list, and five interchangeable strategies define that order:

``naive``
    Surface order.  Implicit antecedents sit directly after their
    licensing expression.
``naive-ae``
    Surface order with implicit antecedents directly before their
    licensing expression.
``canonical``
    Grammatical roles first (subject, direct object, indirect object,
    complement, adjunct, none), surface order inside a role.  Implicit
    antecedents sit directly after their licensing expression.
``canonical-ae``
    Same roles, implicit antecedents directly before their licenser.
``functional``
    Information structure.  Elements whose entity is given in the
    prior discourse (bound) outrank elements that introduce their
    entity (unbound).  Bound elements order by form tier: anaphors
    first; then possessive pronouns and implicit ellipsis antecedents;
    then elliptical expressions and anaphoric attribute heads.  Equal
    tiers, and unbound elements, fall back to surface order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from centerline.chains import EntityRegistry
from centerline.corpus import Agreement, Expression, Form, LinkType, Role, Utterance


class Strategy(str, Enum):
    NAIVE = "naive"
    NAIVE_AE = "naive-ae"
    CANONICAL = "canonical"
    CANONICAL_AE = "canonical-ae"
    FUNCTIONAL = "functional"


class BoundForm(str, Enum):
    ANAPHOR = "anaphor"
    POSSESSIVE_PRONOUN = "possessive-pronoun"
    ELLIPTICAL_ANTECEDENT = "elliptical-antecedent"
    ELLIPTICAL_EXPRESSION = "elliptical-expression"
    ANAPHORIC_ATTRIBUTE_HEAD = "anaphoric-attribute-head"


_TIER = {
    BoundForm.ANAPHOR: 1,
    BoundForm.POSSESSIVE_PRONOUN: 2,
    BoundForm.ELLIPTICAL_ANTECEDENT: 2,
    BoundForm.ELLIPTICAL_EXPRESSION: 3,
    BoundForm.ANAPHORIC_ATTRIBUTE_HEAD: 3,
}

_ANAPHOR_FORMS = frozenset(
    {Form.PERSONAL_PRONOUN, Form.DEFINITE_NP, Form.PROPER_NAME, Form.OTHER_NP}
)


@dataclass(frozen=True)
class ISStatus:
    """Information-structure status: unbound, or bound with a form."""

    form: BoundForm | None = None

    @property
    def is_bound(self) -> bool:
        return self.form is not None

    @property
    def tier(self) -> int:
        if self.form is None:
            raise ValueError("unbound elements have no bound-form tier")
        return _TIER[self.form]

    def render(self) -> str:
        return self.form.value if self.form is not None else "unbound"


UNBOUND = ISStatus()


@dataclass(frozen=True)
class CenterElement:
    """One entity of an utterance together with its realization.

    ``entity`` is the coreference-chain id; ``concept`` is the chain's
    display concept.  Explicit realizations carry the expression's id
    and surface; implicit ones leave both None and instead record the
    antecedent expression that introduced the entity.  ``position_key``
    is the realizing expression's token position, or the licensing
    expression's position for implicit elements.
    """

    entity: str
    concept: str
    status: ISStatus
    position_key: int
    role: Role = Role.NONE
    expression_id: str | None = None
    surface: str | None = None
    head: str | None = None
    agreement: Agreement | None = None
    antecedent_expression: str | None = None

    @property
    def is_implicit(self) -> bool:
        return self.expression_id is None

    @property
    def realization_id(self) -> str:
        """Id of the expression standing in for this entity.

        For explicit elements that is the expression itself; for
        implicit ones, the antecedent expression behind the ellipsis.
        """
        realization = self.expression_id or self.antecedent_expression
        if realization is None:
            raise ValueError(f"element for {self.entity} has no realization")
        return realization


class CfList(tuple):
    """Forward-looking centers of one utterance, best ranked first."""

    __slots__ = ()

    def __new__(cls, elements: tuple[CenterElement, ...] | list[CenterElement]) -> "CfList":
        entities = [element.entity for element in elements]
        if len(entities) != len(set(entities)):
            raise ValueError("forward-looking centers must have unique entities")
        return super().__new__(cls, tuple(elements))

    @property
    def preferred(self) -> CenterElement | None:
        """Highest-ranked element, the predicted next backward center."""
        return self[0] if self else None

    def find(self, entity: str) -> CenterElement | None:
        for element in self:
            if element.entity == entity:
                return element
        return None


class Ordering(Enum):
    BEFORE = -1
    AFTER = 1


@dataclass(frozen=True)
class Link:
    """A resolved (gold or predicted) link for one expression."""

    target: str
    link_type: LinkType
    relation: str | None = None


def classify_is_status(expression: Expression, link: Link | None) -> ISStatus:
    """Information-structure status of an expression given its link.

    An expression is bound exactly when it carries a link.  Coreference
    makes it a possessive pronoun, an anaphoric attribute head, or a
    plain anaphor, depending on form and attribute-head flag.  A
    textual-ellipsis link makes it an elliptical expression.  Without a
    link the expression is unbound, whatever its form.
    """

    if link is None:
        return UNBOUND
    if link.link_type is LinkType.TEXTUAL_ELLIPSIS:
        return ISStatus(BoundForm.ELLIPTICAL_EXPRESSION)
    if expression.form is Form.POSSESSIVE_PRONOUN:
        return ISStatus(BoundForm.POSSESSIVE_PRONOUN)
    if expression.is_attribute_head:
        return ISStatus(BoundForm.ANAPHORIC_ATTRIBUTE_HEAD)
    if expression.form in _ANAPHOR_FORMS:
        return ISStatus(BoundForm.ANAPHOR)
    return UNBOUND


class UnresolvedLinkError(ValueError):
    """A link names a target expression the registry does not know."""


def build_center_candidates(
    utterance: Utterance,
    links: dict[str, Link],
    registry: EntityRegistry,
) -> list[CenterElement]:
    """Center elements realized by one utterance, unordered.

    Every expression not excluded from the centers contributes an
    element for its entity.  When several expressions of the utterance
    share an entity, the best realization wins: lowest bound-form tier,
    then smallest position (unbound counts as worst).  On top of that,
    each textual-ellipsis link adds an implicit element for its
    antecedent entity unless that entity is already realized
    explicitly.  Implicit elements rank through their licensing
    expression's position and role, and carry the antecedent
    expression's agreement features.
    """

    for source, link in links.items():
        try:
            registry.entity(link.target)
        except KeyError:
            raise UnresolvedLinkError(
                f"link of {source!r} targets unknown expression {link.target!r}"
            ) from None

    def badness(element: CenterElement) -> tuple[int, int]:
        tier = element.status.tier if element.status.is_bound else 9
        return (tier, element.position_key)

    chosen: dict[str, CenterElement] = {}
    for expression in utterance.expressions:
        if expression.exclude_from_cf:
            continue
        entity = registry.entity(expression.id)
        element = CenterElement(
            entity=entity,
            concept=registry.concept(expression.id),
            status=classify_is_status(expression, links.get(expression.id)),
            position_key=expression.position,
            role=expression.role,
            expression_id=expression.id,
            surface=expression.surface,
            head=expression.head,
            agreement=expression.agreement,
        )
        incumbent = chosen.get(entity)
        if incumbent is None or badness(element) < badness(incumbent):
            chosen[entity] = element

    for expression in utterance.expressions:
        if expression.exclude_from_cf:
            continue
        link = links.get(expression.id)
        if link is None or link.link_type is not LinkType.TEXTUAL_ELLIPSIS:
            continue
        entity = registry.entity(link.target)
        if entity in chosen:
            continue
        chosen[entity] = CenterElement(
            entity=entity,
            concept=registry.concept(link.target),
            status=ISStatus(BoundForm.ELLIPTICAL_ANTECEDENT),
            position_key=expression.position,
            role=expression.role,
            agreement=registry.agreement(link.target),
            antecedent_expression=link.target,
        )
    return list(chosen.values())


_ROLE_RANK = {
    Role.SUBJECT: 0,
    Role.DIR_OBJECT: 1,
    Role.INDIR_OBJECT: 2,
    Role.COMPLEMENT: 3,
    Role.ADJUNCT: 4,
    Role.NONE: 5,
}


def _sort_key(element: CenterElement, strategy: Strategy) -> tuple[int, ...]:
    implicit = 1 if element.is_implicit else 0
    if strategy is Strategy.NAIVE:
        return (element.position_key, implicit)
    if strategy is Strategy.NAIVE_AE:
        return (element.position_key, 1 - implicit)
    if strategy is Strategy.CANONICAL:
        return (_ROLE_RANK[element.role], element.position_key, implicit)
    if strategy is Strategy.CANONICAL_AE:
        return (_ROLE_RANK[element.role], element.position_key, 1 - implicit)
    if element.status.is_bound:
        return (0, element.status.tier, element.position_key)
    return (1, 0, element.position_key)


def compare(a: CenterElement, b: CenterElement, strategy: Strategy) -> Ordering:
    """Relative order of two distinct-entity elements under a strategy.

    Strict and total: exactly one of BEFORE and AFTER holds for every
    pair, and chaining comparisons never contradicts itself.  Elements
    that tie on all strategy criteria (possible only for synthetic
    inputs, since token positions are unique within an utterance) fall
    back to their entity ids so the order stays total.
    """

    if a.entity == b.entity:
        raise ValueError("compare needs elements with distinct entities")
    key_a = (_sort_key(a, strategy), a.entity)
    key_b = (_sort_key(b, strategy), b.entity)
    return Ordering.BEFORE if key_a < key_b else Ordering.AFTER


def rank_cf(candidates: list[CenterElement], strategy: Strategy) -> CfList:
    """Order candidate elements into the forward-looking center list."""

    ranked = sorted(candidates, key=lambda element: (_sort_key(element, strategy), element.entity))
    return CfList(ranked)
