"""Bundled sample corpus and knowledge base.

Two short German product-review discourses about a laptop and its
battery, fully annotated, plus the matching concept hierarchy and
bridging edges.  Together they exercise every realization mode the
engine knows: plain anaphors, textual ellipsis with implicit
antecedents, attribute heads, pronouns, and center-excluded measure
phrases.  The tests and the demo scripts run on this data.
"""

from __future__ import annotations

from importlib import resources

from centerline.corpus import Discourse, parse_corpus
from centerline.knowledge import KnowledgeBase, parse_kb

CORPUS_RESOURCE = "it_reviews.json"
KB_RESOURCE = "it_domain.kb"


def _data(name: str) -> bytes:
    return resources.files(__name__).joinpath(name).read_bytes()


def fixture_corpus_bytes() -> bytes:
    return _data(CORPUS_RESOURCE)


def fixture_kb_bytes() -> bytes:
    return _data(KB_RESOURCE)


def load_fixture_corpus() -> list[Discourse]:
    return parse_corpus(fixture_corpus_bytes())


def load_fixture_kb() -> KnowledgeBase:
    return parse_kb(fixture_kb_bytes())
