"""Corpus-level evaluation tables and the command-line front end.

The evaluation runs every requested ranking strategy over every
discourse of a corpus and tallies, per corpus section and in a final
sum row, the transition types, the pair costs under the chosen cost
rule, the cost-rule disagreements, and the resolver's outcome counts.
A resolver error is any non-correct decision; the subset that a
different candidate ordering would have fixed is reported separately,
since exactly those errors discriminate between ranking strategies.

Three output formats: an aligned text table for reading, a structured
JSON document that parses back into an equal report, and a flat CSV
(section, strategy, metric, value) for spreadsheets.

The ``centerline`` command exposes three subcommands: ``evaluate``
(the tables, optionally dumping per-discourse trace files), ``trace``
(per-utterance centering data for one discourse), and ``validate``
(schema and invariant diagnostics for a corpus and knowledge base).
Exit status is 0 for success, 1 for invalid input data, 2 for usage
errors.  Setting CENTERLINE_NO_COLOR disables terminal styling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

from centerline.centering import (
    CenteringTrace,
    Mode,
    PairCost,
    TransitionType,
    export_trace,
    run_discourse,
)
from centerline.corpus import (
    CorpusFormatError,
    Discourse,
    parse_corpus,
    validate_discourse,
)
from centerline.knowledge import KBFormatError, KnowledgeBase, parse_kb
from centerline.ranking import Strategy
from centerline.resolution import Outcome


class CostRule(str, Enum):
    DEFINITIONAL = "definitional"
    TABLE = "table"


class ReportFormatError(ValueError):
    """Raised when a structured report document cannot be parsed."""


SUM_SECTION = "Σ"
UNSECTIONED = "unsectioned"


@dataclass(frozen=True)
class TransitionCounts:
    """Transition tallies, first utterances included in their type.

    ``initial`` counts the discourse-initial utterances folded into
    the other fields, so non-initial tallies are recoverable.
    """

    continues: int = 0
    retains: int = 0
    smooth_shifts: int = 0
    rough_shifts: int = 0
    nones: int = 0
    initial: int = 0

    def __add__(self, other: "TransitionCounts") -> "TransitionCounts":
        return TransitionCounts(
            self.continues + other.continues,
            self.retains + other.retains,
            self.smooth_shifts + other.smooth_shifts,
            self.rough_shifts + other.rough_shifts,
            self.nones + other.nones,
            self.initial + other.initial,
        )

    def to_json(self) -> dict[str, int]:
        return {
            "CONTINUE": self.continues,
            "RETAIN": self.retains,
            "SMOOTH-SHIFT": self.smooth_shifts,
            "ROUGH-SHIFT": self.rough_shifts,
            "NONE": self.nones,
            "initial": self.initial,
        }


@dataclass(frozen=True)
class CostCounts:
    """Pair-cost tallies under one cost rule.

    cheap + expensive + undefined equals the number of utterance pairs
    evaluated.  ``disagreements`` counts pairs where the definitional
    rule and the lookup rule are both defined yet differ; it is rule
    independent.
    """

    cheap: int = 0
    expensive: int = 0
    undefined: int = 0
    disagreements: int = 0

    def __add__(self, other: "CostCounts") -> "CostCounts":
        return CostCounts(
            self.cheap + other.cheap,
            self.expensive + other.expensive,
            self.undefined + other.undefined,
            self.disagreements + other.disagreements,
        )

    def to_json(self) -> dict[str, int]:
        return {
            "cheap": self.cheap,
            "expensive": self.expensive,
            "undefined": self.undefined,
            "disagreements": self.disagreements,
        }


@dataclass(frozen=True)
class OutcomeCounts:
    correct: int = 0
    wrong_antecedent: int = 0
    spurious: int = 0
    missed: int = 0
    unsupported_category: int = 0

    def __add__(self, other: "OutcomeCounts") -> "OutcomeCounts":
        return OutcomeCounts(
            self.correct + other.correct,
            self.wrong_antecedent + other.wrong_antecedent,
            self.spurious + other.spurious,
            self.missed + other.missed,
            self.unsupported_category + other.unsupported_category,
        )

    def to_json(self) -> dict[str, int]:
        return {
            "correct": self.correct,
            "wrong-antecedent": self.wrong_antecedent,
            "spurious": self.spurious,
            "missed": self.missed,
            "unsupported-category": self.unsupported_category,
        }


@dataclass(frozen=True)
class StrategyCell:
    """All counts for one (section, strategy) cell of the report."""

    transitions: TransitionCounts = field(default_factory=TransitionCounts)
    costs: CostCounts = field(default_factory=CostCounts)
    outcomes: OutcomeCounts = field(default_factory=OutcomeCounts)
    specific_errors: int = 0

    @property
    def errors(self) -> int:
        """Resolver decisions that were not correct."""
        o = self.outcomes
        return o.wrong_antecedent + o.spurious + o.missed + o.unsupported_category

    def __add__(self, other: "StrategyCell") -> "StrategyCell":
        return StrategyCell(
            self.transitions + other.transitions,
            self.costs + other.costs,
            self.outcomes + other.outcomes,
            self.specific_errors + other.specific_errors,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "transitions": self.transitions.to_json(),
            "costs": self.costs.to_json(),
            "outcomes": self.outcomes.to_json(),
            "errors": self.errors,
            "specific_errors": self.specific_errors,
        }


@dataclass(frozen=True)
class SectionReport:
    section: str
    cells: dict[str, StrategyCell]

    def to_json(self) -> dict[str, Any]:
        return {
            "section": self.section,
            "strategies": {name: cell.to_json() for name, cell in self.cells.items()},
        }


@dataclass(frozen=True)
class EvaluationReport:
    mode: Mode
    cost_rule: CostRule
    strategies: tuple[str, ...]
    sections: tuple[SectionReport, ...]
    failures: tuple[tuple[str, str], ...] = ()

    def section(self, name: str) -> SectionReport:
        for section in self.sections:
            if section.section == name:
                return section
        raise KeyError(name)

    @property
    def total(self) -> SectionReport:
        return self.section(SUM_SECTION)


def canonical_strategy_order(strategies: Iterable[Strategy]) -> tuple[Strategy, ...]:
    requested = set(strategies)
    return tuple(s for s in Strategy if s in requested)


def _tally(trace: CenteringTrace, cost_rule: CostRule) -> StrategyCell:
    transitions = {t: 0 for t in TransitionType}
    initial = 0
    costs = {c: 0 for c in PairCost}
    disagreements = 0
    outcomes = {o: 0 for o in Outcome}
    specific = 0
    for state in trace.states:
        transitions[state.transition] += 1
        if state.is_discourse_initial:
            initial += 1
        else:
            chosen = (
                state.cost_definitional
                if cost_rule is CostRule.DEFINITIONAL
                else state.cost_table
            )
            costs[chosen] += 1
            if (
                state.cost_definitional is not PairCost.UNDEFINED
                and state.cost_table is not PairCost.UNDEFINED
                and state.cost_definitional is not state.cost_table
            ):
                disagreements += 1
        for decision in state.decisions:
            outcomes[decision.outcome] += 1
            if decision.ordering_error:
                specific += 1
    return StrategyCell(
        transitions=TransitionCounts(
            continues=transitions[TransitionType.CONTINUE],
            retains=transitions[TransitionType.RETAIN],
            smooth_shifts=transitions[TransitionType.SMOOTH_SHIFT],
            rough_shifts=transitions[TransitionType.ROUGH_SHIFT],
            nones=transitions[TransitionType.NONE],
            initial=initial,
        ),
        costs=CostCounts(
            cheap=costs[PairCost.CHEAP],
            expensive=costs[PairCost.EXPENSIVE],
            undefined=costs[PairCost.UNDEFINED],
            disagreements=disagreements,
        ),
        outcomes=OutcomeCounts(
            correct=outcomes[Outcome.CORRECT],
            wrong_antecedent=outcomes[Outcome.WRONG_ANTECEDENT],
            spurious=outcomes[Outcome.SPURIOUS],
            missed=outcomes[Outcome.MISSED],
            unsupported_category=outcomes[Outcome.UNSUPPORTED_CATEGORY],
        ),
        specific_errors=specific,
    )


def evaluate(
    discourses: Sequence[Discourse],
    kb: KnowledgeBase,
    strategies: Sequence[Strategy],
    mode: Mode = Mode.GOLD,
    cost_rule: CostRule = CostRule.DEFINITIONAL,
) -> EvaluationReport:
    """Aggregate centering and resolution statistics over a corpus.

    Sections appear in first-occurrence order, followed by a sum
    section that adds the others column-wise.  A discourse that fails
    to run (unknown concept, dangling link) is excluded from every
    cell and reported in ``failures`` instead of being silently
    dropped.
    """

    ordered_strategies = canonical_strategy_order(strategies)
    if not ordered_strategies:
        raise ValueError("at least one strategy is required")

    section_order: list[str] = []
    tallies: dict[tuple[str, str], StrategyCell] = {}
    failures: list[tuple[str, str]] = []

    for discourse in discourses:
        section = discourse.section or UNSECTIONED
        try:
            cells = {
                strategy.value: _tally(
                    run_discourse(discourse, kb, strategy, mode), cost_rule
                )
                for strategy in ordered_strategies
            }
        except (ValueError, KeyError) as exc:
            failures.append((discourse.id, f"{type(exc).__name__}: {exc}"))
            continue
        if section not in section_order:
            section_order.append(section)
        for name, cell in cells.items():
            key = (section, name)
            tallies[key] = tallies.get(key, StrategyCell()) + cell

    sections = [
        SectionReport(
            section=section,
            cells={
                strategy.value: tallies.get((section, strategy.value), StrategyCell())
                for strategy in ordered_strategies
            },
        )
        for section in section_order
    ]
    total = SectionReport(
        section=SUM_SECTION,
        cells={
            strategy.value: sum(
                (section.cells[strategy.value] for section in sections),
                StrategyCell(),
            )
            for strategy in ordered_strategies
        },
    )
    sections.append(total)
    return EvaluationReport(
        mode=mode,
        cost_rule=cost_rule,
        strategies=tuple(s.value for s in ordered_strategies),
        sections=tuple(sections),
        failures=tuple(failures),
    )


_METRICS: tuple[tuple[str, Any], ...] = (
    ("transitions.CONTINUE", lambda c: c.transitions.continues),
    ("transitions.RETAIN", lambda c: c.transitions.retains),
    ("transitions.SMOOTH-SHIFT", lambda c: c.transitions.smooth_shifts),
    ("transitions.ROUGH-SHIFT", lambda c: c.transitions.rough_shifts),
    ("transitions.NONE", lambda c: c.transitions.nones),
    ("transitions.initial", lambda c: c.transitions.initial),
    ("costs.cheap", lambda c: c.costs.cheap),
    ("costs.expensive", lambda c: c.costs.expensive),
    ("costs.undefined", lambda c: c.costs.undefined),
    ("costs.disagreements", lambda c: c.costs.disagreements),
    ("errors", lambda c: c.errors),
    ("errors.specific", lambda c: c.specific_errors),
    ("outcomes.correct", lambda c: c.outcomes.correct),
    ("outcomes.wrong-antecedent", lambda c: c.outcomes.wrong_antecedent),
    ("outcomes.spurious", lambda c: c.outcomes.spurious),
    ("outcomes.missed", lambda c: c.outcomes.missed),
    ("outcomes.unsupported-category", lambda c: c.outcomes.unsupported_category),
)


def _bold(text: str, color: bool) -> str:
    return f"\x1b[1m{text}\x1b[0m" if color else text


def _render_text(report: EvaluationReport, color: bool) -> str:
    lines: list[str] = []
    lines.append(
        _bold(
            f"evaluation  mode={report.mode.value}  cost-rule={report.cost_rule.value}",
            color,
        )
    )
    label_width = max(len(name) for name, _ in _METRICS)
    column_width = max(12, max((len(s) for s in report.strategies), default=0) + 2)
    for section in report.sections:
        lines.append("")
        lines.append(_bold(f"section {section.section}", color))
        header = " " * 2 + "metric".ljust(label_width)
        for strategy in report.strategies:
            header += strategy.rjust(column_width)
        lines.append(header)
        for name, getter in _METRICS:
            row = " " * 2 + name.ljust(label_width)
            for strategy in report.strategies:
                row += str(getter(section.cells[strategy])).rjust(column_width)
            lines.append(row)
    if report.failures:
        lines.append("")
        lines.append(_bold("failed discourses", color))
        for discourse_id, message in report.failures:
            lines.append(f"  {discourse_id}: {message}")
    return "\n".join(lines) + "\n"


def _render_structured(report: EvaluationReport) -> str:
    document = {
        "mode": report.mode.value,
        "cost_rule": report.cost_rule.value,
        "strategies": list(report.strategies),
        "sections": [section.to_json() for section in report.sections],
        "failures": [
            {"discourse": discourse_id, "error": message}
            for discourse_id, message in report.failures
        ],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _render_csv(report: EvaluationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "strategy", "metric", "value"])
    for section in report.sections:
        for strategy in report.strategies:
            cell = section.cells[strategy]
            for name, getter in _METRICS:
                writer.writerow([section.section, strategy, name, getter(cell)])
    return buffer.getvalue()


def render_report(report: EvaluationReport, format: str = "text", *, color: bool = False) -> str:
    """Render a report as text, structured JSON, or CSV.

    The structured and CSV outputs carry every count and render
    byte-identically for equal reports; ``parse_report`` inverts the
    structured one.
    """

    if format == "text":
        return _render_text(report, color)
    if format in ("structured", "json-like"):
        return _render_structured(report)
    if format == "csv":
        return _render_csv(report)
    raise ReportFormatError(f"unknown report format {format!r}")


def _counts_from_json(raw: Any, keys: Sequence[str], where: str) -> list[int]:
    if not isinstance(raw, dict):
        raise ReportFormatError(f"{where}: expected an object")
    values = []
    for key in keys:
        value = raw.get(key)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ReportFormatError(f"{where}: field {key!r} must be an integer")
        values.append(value)
    return values


def parse_report(data: bytes | str) -> EvaluationReport:
    """Parse the structured rendering back into an equal report."""

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ReportFormatError("top level must be an object")
    try:
        mode = Mode(document["mode"])
        cost_rule = CostRule(document["cost_rule"])
        strategies = tuple(document["strategies"])
    except (KeyError, ValueError) as exc:
        raise ReportFormatError(f"bad report header: {exc}") from exc

    sections = []
    for raw_section in document.get("sections", ()):
        name = raw_section.get("section")
        if not isinstance(name, str):
            raise ReportFormatError("section entries need a string 'section'")
        cells: dict[str, StrategyCell] = {}
        raw_cells = raw_section.get("strategies")
        if not isinstance(raw_cells, dict):
            raise ReportFormatError(f"section {name!r}: missing strategies object")
        for strategy in strategies:
            raw_cell = raw_cells.get(strategy)
            where = f"section {name!r}, strategy {strategy!r}"
            if not isinstance(raw_cell, dict):
                raise ReportFormatError(f"{where}: missing cell")
            t = _counts_from_json(
                raw_cell.get("transitions"),
                ["CONTINUE", "RETAIN", "SMOOTH-SHIFT", "ROUGH-SHIFT", "NONE", "initial"],
                where,
            )
            c = _counts_from_json(
                raw_cell.get("costs"),
                ["cheap", "expensive", "undefined", "disagreements"],
                where,
            )
            o = _counts_from_json(
                raw_cell.get("outcomes"),
                ["correct", "wrong-antecedent", "spurious", "missed", "unsupported-category"],
                where,
            )
            specific = raw_cell.get("specific_errors", 0)
            if not isinstance(specific, int):
                raise ReportFormatError(f"{where}: specific_errors must be an integer")
            cells[strategy] = StrategyCell(
                transitions=TransitionCounts(*t),
                costs=CostCounts(*c),
                outcomes=OutcomeCounts(*o),
                specific_errors=specific,
            )
        sections.append(SectionReport(section=name, cells=cells))
    failures = tuple(
        (entry["discourse"], entry["error"]) for entry in document.get("failures", ())
    )
    return EvaluationReport(
        mode=mode,
        cost_rule=cost_rule,
        strategies=strategies,
        sections=tuple(sections),
        failures=failures,
    )


def render_trace_text(trace: CenteringTrace, *, color: bool = False) -> str:
    """Human-readable per-utterance view of one centering trace."""

    lines = [
        _bold(
            f"{trace.discourse_id}  strategy={trace.strategy.value}  mode={trace.mode.value}",
            color,
        )
    ]
    for state in trace.states:
        if state.cb is None:
            cb_text = "(none)"
        else:
            cb_text = f"{state.cb.concept}: {state.cb.surface or '(implicit)'}"
        cf_text = ", ".join(
            f"{element.concept}: {element.surface or '(implicit)'}" for element in state.cf
        )
        disagree = (
            "  [cost rules disagree]"
            if state.cost_definitional is not PairCost.UNDEFINED
            and state.cost_table is not PairCost.UNDEFINED
            and state.cost_definitional is not state.cost_table
            else ""
        )
        lines.append(f"U{state.utterance_index}  {state.transition.value}")
        lines.append(f"    Cb: {cb_text}")
        lines.append(f"    Cf: [{cf_text}]")
        lines.append(
            f"    cost: definitional={state.cost_definitional.value}"
            f" table={state.cost_table.value}{disagree}"
        )
    return "\n".join(lines) + "\n"


def _color_enabled() -> bool:
    if os.environ.get("CENTERLINE_NO_COLOR"):
        return False
    return sys.stdout.isatty()


def _parse_strategies(raw: str) -> list[Strategy]:
    names = [name.strip() for name in raw.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("at least one strategy name is required")
    strategies = []
    for name in names:
        try:
            strategies.append(Strategy(name))
        except ValueError:
            known = ", ".join(s.value for s in Strategy)
            raise argparse.ArgumentTypeError(
                f"unknown strategy {name!r} (known: {known})"
            ) from None
    return strategies


def _parse_single_strategy(raw: str) -> Strategy:
    strategies = _parse_strategies(raw)
    if len(strategies) != 1:
        raise argparse.ArgumentTypeError("trace takes exactly one strategy")
    return strategies[0]


def _load_inputs(corpus_path: str, kb_path: str) -> tuple[list[Discourse], KnowledgeBase]:
    try:
        corpus_bytes = Path(corpus_path).read_bytes()
    except OSError as exc:
        raise CorpusFormatError(f"cannot read corpus: {exc}") from exc
    try:
        kb_bytes = Path(kb_path).read_bytes()
    except OSError as exc:
        raise KBFormatError(f"cannot read knowledge base: {exc}") from exc
    return parse_corpus(corpus_bytes), parse_kb(kb_bytes)


def _cmd_evaluate(args: argparse.Namespace) -> int:
    discourses, kb = _load_inputs(args.corpus, args.kb)
    report = evaluate(
        discourses,
        kb,
        args.strategy,
        mode=Mode(args.mode),
        cost_rule=CostRule(args.cost_rule),
    )
    if args.trace is not None:
        trace_dir = Path(args.trace)
        trace_dir.mkdir(parents=True, exist_ok=True)
        failed = {discourse_id for discourse_id, _ in report.failures}
        for discourse in discourses:
            if discourse.id in failed:
                continue
            for strategy in canonical_strategy_order(args.strategy):
                trace = run_discourse(discourse, kb, strategy, Mode(args.mode))
                payload = json.dumps(export_trace(trace), indent=2, ensure_ascii=False)
                name = f"{discourse.id}.{strategy.value}.json"
                (trace_dir / name).write_text(payload + "\n", encoding="utf-8")
    sys.stdout.write(render_report(report, args.format, color=_color_enabled()))
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    discourses, kb = _load_inputs(args.corpus, args.kb)
    for discourse in discourses:
        if discourse.id == args.discourse:
            trace = run_discourse(discourse, kb, args.strategy, Mode(args.mode))
            sys.stdout.write(render_trace_text(trace, color=_color_enabled()))
            return 0
    known = ", ".join(d.id for d in discourses)
    raise CorpusFormatError(f"no discourse {args.discourse!r} in corpus (known: {known})")


def _cmd_validate(args: argparse.Namespace) -> int:
    discourses, kb = _load_inputs(args.corpus, args.kb)
    diagnostics = [d for discourse in discourses for d in validate_discourse(discourse)]
    for diagnostic in diagnostics:
        location = diagnostic.discourse_id
        if diagnostic.utterance_index is not None:
            location += f", utterance {diagnostic.utterance_index}"
        if diagnostic.expression_id is not None:
            location += f", expression {diagnostic.expression_id}"
        print(f"{diagnostic.severity}: {location}: {diagnostic.message}")
    errors = sum(1 for d in diagnostics if d.severity == "error")
    warnings = len(diagnostics) - errors
    print(
        f"checked {len(discourses)} discourse(s), {len(kb.concepts)} concept(s): "
        f"{errors} error(s), {warnings} warning(s)"
    )
    return 1 if errors else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centerline",
        description="Centering analysis with pluggable center-ranking strategies.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_io(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--corpus", required=True, help="corpus JSON file")
        sub.add_argument("--kb", required=True, help="knowledge-base file")

    evaluate_parser = subparsers.add_parser(
        "evaluate", help="aggregate transition, cost, and error tables"
    )
    add_io(evaluate_parser)
    evaluate_parser.add_argument(
        "--strategy",
        required=True,
        type=_parse_strategies,
        help="comma-separated ranking strategies "
        + "(naive, naive-ae, canonical, canonical-ae, functional)",
    )
    evaluate_parser.add_argument("--mode", choices=[m.value for m in Mode], default="gold")
    evaluate_parser.add_argument(
        "--cost-rule", choices=[r.value for r in CostRule], default="definitional"
    )
    evaluate_parser.add_argument(
        "--format", choices=["text", "json-like", "csv"], default="text"
    )
    evaluate_parser.add_argument(
        "--trace", metavar="DIR", help="write per-discourse trace JSON files here"
    )
    evaluate_parser.set_defaults(func=_cmd_evaluate)

    trace_parser = subparsers.add_parser(
        "trace", help="show per-utterance centering data for one discourse"
    )
    add_io(trace_parser)
    trace_parser.add_argument("--strategy", required=True, type=_parse_single_strategy)
    trace_parser.add_argument("--discourse", required=True, help="discourse id")
    trace_parser.add_argument("--mode", choices=[m.value for m in Mode], default="gold")
    trace_parser.set_defaults(func=_cmd_trace)

    validate_parser = subparsers.add_parser(
        "validate", help="check a corpus and knowledge base for problems"
    )
    add_io(validate_parser)
    validate_parser.set_defaults(func=_cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusFormatError, KBFormatError, ReportFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
