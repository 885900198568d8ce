"""Concept hierarchy and bridging edges backing anaphor resolution.

The knowledge base is a flat text format, one declaration per line:

    concept(ACCU)
    isa(NiMH-ACCU, ACCU)
    bridge(CHARGE-TIME, attribute-of, ACCU)

``#`` starts a comment and blank lines are ignored.  ``isa`` edges form
an acyclic specialization hierarchy (child first, parent second).
``bridge`` edges are directed and labeled: source concept, relation
label, target concept.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field


class KBFormatError(ValueError):
    """Raised for malformed lines, undeclared endpoints, or isa cycles."""


class UnknownConceptError(KeyError):
    """Raised when a query names a concept the knowledge base lacks."""


_LINE = re.compile(r"^(?P<functor>[a-z]+)\(\s*(?P<args>[^()]*?)\s*\)$")


@dataclass(frozen=True)
class KnowledgeBase:
    concepts: frozenset[str]
    isa_edges: frozenset[tuple[str, str]]
    bridging_edges: frozenset[tuple[str, str, str]]
    _parents: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False)
    _bridges_from: dict[str, tuple[tuple[str, str], ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for child, parent in self.isa_edges:
            for endpoint in (child, parent):
                if endpoint not in self.concepts:
                    raise KBFormatError(
                        f"isa({child}, {parent}): undeclared concept {endpoint!r}"
                    )
        for source, label, target in self.bridging_edges:
            for endpoint in (source, target):
                if endpoint not in self.concepts:
                    raise KBFormatError(
                        f"bridge({source}, {label}, {target}): undeclared concept {endpoint!r}"
                    )
        parents: defaultdict[str, set[str]] = defaultdict(set)
        for child, parent in self.isa_edges:
            parents[child].add(parent)
        object.__setattr__(
            self, "_parents", {child: frozenset(ps) for child, ps in parents.items()}
        )
        outgoing: defaultdict[str, list[tuple[str, str]]] = defaultdict(list)
        for source, label, target in sorted(self.bridging_edges):
            outgoing[source].append((label, target))
        object.__setattr__(
            self, "_bridges_from", {src: tuple(edges) for src, edges in outgoing.items()}
        )

    def require(self, concept: str) -> None:
        if concept not in self.concepts:
            raise UnknownConceptError(concept)


def parse_kb(data: bytes | str) -> KnowledgeBase:
    """Parse the line format into a KnowledgeBase.

    Every edge endpoint must be declared with a ``concept(...)`` line,
    and the isa hierarchy must be acyclic.  Errors carry the offending
    line number.
    """

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    concepts: set[str] = set()
    isa_edges: set[tuple[str, str]] = set()
    bridging_edges: set[tuple[str, str, str]] = set()

    for lineno, raw_line in enumerate(data.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if match is None:
            raise KBFormatError(f"line {lineno}: cannot parse {raw_line.strip()!r}")
        functor = match.group("functor")
        args = [a.strip() for a in match.group("args").split(",")] if match.group("args") else []
        if any(not a for a in args):
            raise KBFormatError(f"line {lineno}: empty argument")
        if functor == "concept":
            if len(args) != 1:
                raise KBFormatError(f"line {lineno}: concept takes 1 argument, got {len(args)}")
            concepts.add(args[0])
        elif functor == "isa":
            if len(args) != 2:
                raise KBFormatError(f"line {lineno}: isa takes 2 arguments, got {len(args)}")
            isa_edges.add((args[0], args[1]))
        elif functor == "bridge":
            if len(args) != 3:
                raise KBFormatError(f"line {lineno}: bridge takes 3 arguments, got {len(args)}")
            bridging_edges.add((args[0], args[1], args[2]))
        else:
            raise KBFormatError(f"line {lineno}: unknown declaration {functor!r}")

    for child, parent in sorted(isa_edges):
        for endpoint in (child, parent):
            if endpoint not in concepts:
                raise KBFormatError(f"isa({child}, {parent}): undeclared concept {endpoint!r}")
    for source, label, target in sorted(bridging_edges):
        for endpoint in (source, target):
            if endpoint not in concepts:
                raise KBFormatError(
                    f"bridge({source}, {label}, {target}): undeclared concept {endpoint!r}"
                )

    _reject_isa_cycles(concepts, isa_edges)
    return KnowledgeBase(
        concepts=frozenset(concepts),
        isa_edges=frozenset(isa_edges),
        bridging_edges=frozenset(bridging_edges),
    )


def _reject_isa_cycles(concepts: set[str], isa_edges: set[tuple[str, str]]) -> None:
    parents: defaultdict[str, set[str]] = defaultdict(set)
    for child, parent in isa_edges:
        parents[child].add(parent)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {concept: WHITE for concept in concepts}

    def visit(node: str, trail: list[str]) -> None:
        color[node] = GRAY
        trail.append(node)
        for parent in sorted(parents.get(node, ())):
            if color[parent] == GRAY:
                cycle = trail[trail.index(parent):] + [parent]
                raise KBFormatError("isa cycle: " + " -> ".join(cycle))
            if color[parent] == WHITE:
                visit(parent, trail)
        trail.pop()
        color[node] = BLACK

    for concept in sorted(concepts):
        if color[concept] == WHITE:
            visit(concept, [])


def is_generalization_of(kb: KnowledgeBase, general: str, specific: str) -> bool:
    """True iff ``general`` lies on or above ``specific`` in the hierarchy.

    The relation is reflexive and transitive: every concept generalizes
    itself, and isa edges chain upward.
    """

    kb.require(general)
    kb.require(specific)
    if general == specific:
        return True
    frontier = [specific]
    seen = {specific}
    while frontier:
        node = frontier.pop()
        for parent in kb._parents.get(node, ()):
            if parent == general:
                return True
            if parent not in seen:
                seen.add(parent)
                frontier.append(parent)
    return False


def bridging_relation(kb: KnowledgeBase, source: str, target: str) -> str | None:
    """Label of the bridging path from ``source`` to ``target``, if any.

    A direct edge wins and returns its own label.  Failing that, a
    two-step path source -> mid -> target is reported as ``via:<mid>``.
    Longer paths do not count.  Ties are broken deterministically
    (lexicographically smallest label, then smallest mid concept).
    """

    kb.require(source)
    kb.require(target)
    direct = sorted(label for label, t in kb._bridges_from.get(source, ()) if t == target)
    if direct:
        return direct[0]
    mids = sorted(
        mid
        for _, mid in kb._bridges_from.get(source, ())
        if any(t == target for _, t in kb._bridges_from.get(mid, ()))
    )
    if mids:
        return f"via:{mids[0]}"
    return None
