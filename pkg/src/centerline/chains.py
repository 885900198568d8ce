"""Entity identity as coreference chains.

Two expressions denote the same discourse entity exactly when a chain
of coreference links connects them.  The chain id is the id of the
chain's earliest expression in document order, so it is stable under
later growth of the chain.  Textual-ellipsis links relate distinct
entities and must never be merged here.
"""

from __future__ import annotations

from centerline.corpus import Agreement, Discourse, Expression, LinkType


class EntityRegistry:
    """Union-find over expression ids with document-order canonical roots."""

    def __init__(self) -> None:
        self._parent: dict[str, str] = {}
        self._order: dict[str, tuple[int, int]] = {}
        self._expressions: dict[str, Expression] = {}

    def add(self, expression: Expression) -> None:
        if expression.id in self._parent:
            return
        self._parent[expression.id] = expression.id
        self._order[expression.id] = (expression.utterance_index, expression.position)
        self._expressions[expression.id] = expression

    def _find(self, expression_id: str) -> str:
        root = expression_id
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[expression_id] != root:
            self._parent[expression_id], expression_id = root, self._parent[expression_id]
        return root

    def merge(self, a: str, b: str) -> None:
        """Join the chains of two expressions, keeping the earlier root."""
        root_a, root_b = self._find(a), self._find(b)
        if root_a == root_b:
            return
        if self._order[root_b] < self._order[root_a]:
            root_a, root_b = root_b, root_a
        self._parent[root_b] = root_a

    def entity(self, expression_id: str) -> str:
        """Chain id (earliest member's expression id) for an expression."""
        if expression_id not in self._parent:
            raise KeyError(expression_id)
        return self._find(expression_id)

    def expression(self, expression_id: str) -> Expression:
        return self._expressions[expression_id]

    def concept(self, expression_id: str) -> str:
        """Concept of the chain root, used as the entity's display name."""
        return self._expressions[self.entity(expression_id)].concept

    def agreement(self, expression_id: str) -> Agreement:
        return self._expressions[expression_id].agreement


def gold_registry(discourse: Discourse) -> EntityRegistry:
    """Chains induced by the gold coreference links of a discourse.

    Links flagged with an unsupported category stay out: their sources
    remain singleton entities.  Ellipsis links also stay out, since the
    elliptical expression and its antecedent are different entities.
    """

    registry = EntityRegistry()
    for utterance in discourse.utterances:
        for expression in utterance.expressions:
            registry.add(expression)
    for utterance in discourse.utterances:
        for expression in utterance.expressions:
            link = expression.gold_link
            if (
                link is not None
                and link.link_type is LinkType.COREFERENCE
                and link.unsupported_category is None
            ):
                registry.merge(expression.id, link.target)
    return registry
