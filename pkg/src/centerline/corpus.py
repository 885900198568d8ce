"""Annotated-discourse data model, JSON (de)serialization, and validation.

A corpus file is a single JSON document with a top-level ``discourses``
array.  Each discourse holds consecutively indexed utterances, and each
utterance holds referring expressions sorted by token position.  Gold
annotation travels with the expression: agreement features, grammatical
role, form, and at most one gold link (coreference or textual ellipsis)
pointing at an expression introduced earlier in the text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable


class CorpusFormatError(ValueError):
    """Raised when a corpus document violates the schema or its invariants."""


class Form(str, Enum):
    PERSONAL_PRONOUN = "personal-pronoun"
    POSSESSIVE_PRONOUN = "possessive-pronoun"
    DEFINITE_NP = "definite-np"
    INDEFINITE_NP = "indefinite-np"
    PROPER_NAME = "proper-name"
    OTHER_NP = "other-np"


class Role(str, Enum):
    SUBJECT = "subject"
    DIR_OBJECT = "dir-object"
    INDIR_OBJECT = "indir-object"
    COMPLEMENT = "complement"
    ADJUNCT = "adjunct"
    NONE = "none"


class Gender(str, Enum):
    MASCULINE = "masculine"
    FEMININE = "feminine"
    NEUTER = "neuter"
    UNKNOWN = "unknown"


class Number(str, Enum):
    SINGULAR = "singular"
    PLURAL = "plural"
    UNKNOWN = "unknown"


class Person(str, Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"


class LinkType(str, Enum):
    COREFERENCE = "coreference"
    TEXTUAL_ELLIPSIS = "textual-ellipsis"


class UnsupportedCategory(str, Enum):
    """Gold phenomena the resolver is not required to handle.

    Links flagged with one of these are scored in their own outcome
    bucket and do not feed entity chains or ranking.
    """

    PREPOSITIONAL_ANAPHOR = "prepositional-anaphor"
    PLURAL_ANAPHOR = "plural-anaphor"
    SET_MEMBER = "set-member"
    SENTENCE_ANAPHOR = "sentence-anaphor"
    GLOBAL_FOCUS = "global-focus"


@dataclass(frozen=True)
class Agreement:
    gender: Gender = Gender.UNKNOWN
    number: Number = Number.UNKNOWN
    person: Person = Person.THIRD


@dataclass(frozen=True)
class GoldLink:
    """Annotated antecedent of an expression.

    ``target`` names an expression that occurs strictly earlier in the
    discourse (earlier utterance, or smaller position within the same
    utterance).  ``relation`` carries the bridging label for textual
    ellipsis and is None for plain coreference.
    """

    target: str
    link_type: LinkType
    relation: str | None = None
    unsupported_category: UnsupportedCategory | None = None


@dataclass(frozen=True)
class Expression:
    id: str
    utterance_index: int
    position: int
    surface: str
    head: str
    concept: str
    form: Form
    role: Role = Role.NONE
    agreement: Agreement = field(default_factory=Agreement)
    gold_link: GoldLink | None = None
    is_attribute_head: bool = False
    exclude_from_cf: bool = False

    def __post_init__(self) -> None:
        if self.position < 0:
            raise ValueError(f"expression {self.id}: position must be >= 0")


@dataclass(frozen=True)
class Utterance:
    index: int
    text: str
    expressions: tuple[Expression, ...]


@dataclass(frozen=True)
class Discourse:
    id: str
    language: str
    utterances: tuple[Utterance, ...]
    section: str = ""

    def expression_by_id(self, expression_id: str) -> Expression:
        for utterance in self.utterances:
            for expression in utterance.expressions:
                if expression.id == expression_id:
                    return expression
        raise KeyError(expression_id)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    discourse_id: str
    utterance_index: int | None = None
    expression_id: str | None = None


_EXPRESSION_KEYS = {
    "id",
    "position",
    "surface",
    "head",
    "concept",
    "form",
    "role",
    "gender",
    "number",
    "person",
    "gold_link",
    "is_attribute_head",
    "exclude_from_cf",
}
_LINK_KEYS = {"target", "type", "relation", "unsupported_category"}
_UTTERANCE_KEYS = {"index", "text", "expressions"}
_DISCOURSE_KEYS = {"id", "language", "section", "utterances"}


def _require(mapping: dict[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in mapping:
        raise CorpusFormatError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is int and isinstance(value, bool):
        raise CorpusFormatError(f"{where}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise CorpusFormatError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _enum_field(mapping: dict[str, Any], key: str, enum: type[Enum], default: Enum, where: str) -> Any:
    raw = mapping.get(key, default.value)
    try:
        return enum(raw)
    except ValueError:
        allowed = ", ".join(member.value for member in enum)
        raise CorpusFormatError(f"{where}: field {key!r} must be one of {allowed}") from None


def _reject_unknown(mapping: dict[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise CorpusFormatError(f"{where}: unknown field(s) {sorted(unknown)}")


def _parse_gold_link(raw: Any, where: str) -> GoldLink:
    if not isinstance(raw, dict):
        raise CorpusFormatError(f"{where}: gold_link must be an object")
    _reject_unknown(raw, _LINK_KEYS, where)
    target = _require(raw, "target", str, where)
    link_type = _enum_field(raw, "type", LinkType, LinkType.COREFERENCE, where)
    if "type" not in raw:
        raise CorpusFormatError(f"{where}: missing field 'type'")
    relation = raw.get("relation")
    if relation is not None and not isinstance(relation, str):
        raise CorpusFormatError(f"{where}: field 'relation' must be str")
    category = raw.get("unsupported_category")
    if category is not None:
        try:
            category = UnsupportedCategory(category)
        except ValueError:
            raise CorpusFormatError(f"{where}: unknown unsupported_category {category!r}") from None
    return GoldLink(target=target, link_type=link_type, relation=relation, unsupported_category=category)


def _parse_expression(raw: Any, utterance_index: int, where: str) -> Expression:
    if not isinstance(raw, dict):
        raise CorpusFormatError(f"{where}: expression must be an object")
    expression_id = _require(raw, "id", str, where)
    where = f"{where}, expression {expression_id!r}"
    _reject_unknown(raw, _EXPRESSION_KEYS, where)
    gold_link = None
    if raw.get("gold_link") is not None:
        gold_link = _parse_gold_link(raw["gold_link"], where)
    return Expression(
        id=expression_id,
        utterance_index=utterance_index,
        position=_require(raw, "position", int, where),
        surface=_require(raw, "surface", str, where),
        head=_require(raw, "head", str, where),
        concept=_require(raw, "concept", str, where),
        form=_enum_field(raw, "form", Form, Form.OTHER_NP, where) if "form" in raw else _missing(where, "form"),
        role=_enum_field(raw, "role", Role, Role.NONE, where),
        agreement=Agreement(
            gender=_enum_field(raw, "gender", Gender, Gender.UNKNOWN, where),
            number=_enum_field(raw, "number", Number, Number.UNKNOWN, where),
            person=_enum_field(raw, "person", Person, Person.THIRD, where),
        ),
        gold_link=gold_link,
        is_attribute_head=bool(raw.get("is_attribute_head", False)),
        exclude_from_cf=bool(raw.get("exclude_from_cf", False)),
    )


def _missing(where: str, key: str) -> Any:
    raise CorpusFormatError(f"{where}: missing field {key!r}")


def _parse_utterance(raw: Any, discourse_id: str) -> Utterance:
    where = f"discourse {discourse_id!r}"
    if not isinstance(raw, dict):
        raise CorpusFormatError(f"{where}: utterance must be an object")
    index = _require(raw, "index", int, where)
    where = f"{where}, utterance {index}"
    _reject_unknown(raw, _UTTERANCE_KEYS, where)
    text = _require(raw, "text", str, where)
    expressions_raw = _require(raw, "expressions", list, where)
    expressions = tuple(_parse_expression(item, index, where) for item in expressions_raw)
    last_position = -1
    for expression in expressions:
        if expression.position <= last_position:
            raise CorpusFormatError(
                f"{where}: positions must strictly increase "
                f"(expression {expression.id!r} at position {expression.position})"
            )
        last_position = expression.position
    return Utterance(index=index, text=text, expressions=expressions)


def _check_links(discourse: Discourse) -> None:
    seen: dict[str, tuple[int, int]] = {}
    for utterance in discourse.utterances:
        for expression in utterance.expressions:
            link = expression.gold_link
            if link is not None:
                if link.target not in seen:
                    raise CorpusFormatError(
                        f"discourse {discourse.id!r}, utterance {utterance.index}: "
                        f"gold link of {expression.id!r} targets {link.target!r}, "
                        "which does not occur earlier in the discourse"
                    )
            seen[expression.id] = (utterance.index, expression.position)


def parse_corpus(data: bytes | str) -> list[Discourse]:
    """Parse a corpus document into a list of discourses.

    Raises CorpusFormatError on schema violations, non-monotone token
    positions, non-contiguous utterance indices, dangling or forward
    gold-link targets, and empty discourses.  Error messages name the
    discourse and utterance where the problem sits.
    """

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or "discourses" not in document:
        raise CorpusFormatError("top level must be an object with a 'discourses' array")
    _reject_unknown(document, {"discourses"}, "top level")
    raw_discourses = document["discourses"]
    if not isinstance(raw_discourses, list):
        raise CorpusFormatError("'discourses' must be an array")

    discourses: list[Discourse] = []
    for raw in raw_discourses:
        if not isinstance(raw, dict):
            raise CorpusFormatError("discourse entries must be objects")
        discourse_id = _require(raw, "id", str, "discourse")
        where = f"discourse {discourse_id!r}"
        _reject_unknown(raw, _DISCOURSE_KEYS, where)
        language = _require(raw, "language", str, where)
        section = raw.get("section", "")
        if not isinstance(section, str):
            raise CorpusFormatError(f"{where}: field 'section' must be str")
        utterances_raw = _require(raw, "utterances", list, where)
        if not utterances_raw:
            raise CorpusFormatError(f"{where}: discourse must contain >= 1 utterance")
        utterances = tuple(_parse_utterance(item, discourse_id) for item in utterances_raw)
        for expected, utterance in enumerate(utterances):
            if utterance.index != expected:
                raise CorpusFormatError(
                    f"{where}: utterance indices must run 0..n-1 without gaps "
                    f"(found {utterance.index} at offset {expected})"
                )
        discourse = Discourse(
            id=discourse_id, language=language, utterances=utterances, section=section
        )
        ids: set[str] = set()
        for utterance in utterances:
            for expression in utterance.expressions:
                if expression.id in ids:
                    raise CorpusFormatError(
                        f"{where}, utterance {utterance.index}: duplicate expression id {expression.id!r}"
                    )
                ids.add(expression.id)
        _check_links(discourse)
        discourses.append(discourse)
    return discourses


def _link_to_json(link: GoldLink) -> dict[str, Any]:
    out: dict[str, Any] = {"target": link.target, "type": link.link_type.value}
    if link.relation is not None:
        out["relation"] = link.relation
    if link.unsupported_category is not None:
        out["unsupported_category"] = link.unsupported_category.value
    return out


def _expression_to_json(expression: Expression) -> dict[str, Any]:
    out: dict[str, Any] = {
        "id": expression.id,
        "position": expression.position,
        "surface": expression.surface,
        "head": expression.head,
        "concept": expression.concept,
        "form": expression.form.value,
    }
    if expression.role is not Role.NONE:
        out["role"] = expression.role.value
    if expression.agreement.gender is not Gender.UNKNOWN:
        out["gender"] = expression.agreement.gender.value
    if expression.agreement.number is not Number.UNKNOWN:
        out["number"] = expression.agreement.number.value
    if expression.agreement.person is not Person.THIRD:
        out["person"] = expression.agreement.person.value
    if expression.gold_link is not None:
        out["gold_link"] = _link_to_json(expression.gold_link)
    if expression.is_attribute_head:
        out["is_attribute_head"] = True
    if expression.exclude_from_cf:
        out["exclude_from_cf"] = True
    return out


def serialize_corpus(discourses: Iterable[Discourse]) -> bytes:
    """Render discourses as a canonical corpus document.

    The output is deterministic: fixed key order, two-space indent,
    UTF-8 without escapes, trailing newline.  parse_corpus over the
    result reconstructs structurally equal discourses.
    """

    document = {
        "discourses": [
            {
                "id": discourse.id,
                "language": discourse.language,
                **({"section": discourse.section} if discourse.section else {}),
                "utterances": [
                    {
                        "index": utterance.index,
                        "text": utterance.text,
                        "expressions": [
                            _expression_to_json(expression) for expression in utterance.expressions
                        ],
                    }
                    for utterance in discourse.utterances
                ],
            }
            for discourse in discourses
        ]
    }
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def validate_discourse(discourse: Discourse) -> list[Diagnostic]:
    """Check a discourse against the data-model invariants.

    Returns diagnostics instead of raising, so callers can report all
    problems at once.  Severity "error" marks violations that make the
    discourse unusable; "warning" marks suspicious but runnable
    annotation, such as two subjects in one utterance.
    """

    diagnostics: list[Diagnostic] = []

    def error(message: str, utterance_index: int | None = None, expression_id: str | None = None) -> None:
        diagnostics.append(Diagnostic("error", message, discourse.id, utterance_index, expression_id))

    def warning(message: str, utterance_index: int | None = None, expression_id: str | None = None) -> None:
        diagnostics.append(Diagnostic("warning", message, discourse.id, utterance_index, expression_id))

    if not discourse.utterances:
        error("discourse must contain >= 1 utterance")
        return diagnostics

    for expected, utterance in enumerate(discourse.utterances):
        if utterance.index != expected:
            error(f"utterance index {utterance.index} out of order (expected {expected})", utterance.index)

    seen: dict[str, tuple[int, int]] = {}
    for utterance in discourse.utterances:
        last_position = -1
        subjects = [e for e in utterance.expressions if e.role is Role.SUBJECT]
        if len(subjects) > 1:
            warning(
                f"utterance has {len(subjects)} subject expressions",
                utterance.index,
                subjects[1].id,
            )
        for expression in utterance.expressions:
            if expression.utterance_index != utterance.index:
                error(
                    f"expression {expression.id!r} carries utterance index "
                    f"{expression.utterance_index}, expected {utterance.index}",
                    utterance.index,
                    expression.id,
                )
            if expression.position <= last_position:
                error(
                    f"position {expression.position} does not increase",
                    utterance.index,
                    expression.id,
                )
            last_position = max(last_position, expression.position)
            if expression.id in seen:
                error(f"duplicate expression id {expression.id!r}", utterance.index, expression.id)
            else:
                link = expression.gold_link
                if link is not None and link.target not in seen:
                    error(
                        f"gold link targets {link.target!r}, which does not occur earlier",
                        utterance.index,
                        expression.id,
                    )
                seen[expression.id] = (utterance.index, expression.position)
    return diagnostics
