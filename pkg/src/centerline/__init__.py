"""Centering-based discourse coherence with pluggable center ranking.

The package models annotated discourses (``corpus``), a concept
hierarchy with bridging edges (``knowledge``), forward-looking center
construction under five ranking strategies (``ranking``), transition
classification and pair costs (``centering``), anaphor resolution
scored against gold annotation (``resolution``), and corpus-level
evaluation plus the ``centerline`` command (``evalcli``).
"""

from centerline.centering import (
    CenteringState,
    CenteringTrace,
    Mode,
    PairCost,
    TransitionType,
    classify_transition,
    compute_cb,
    export_trace,
    pair_cost_definitional,
    pair_cost_table,
    realized_entities,
    run_discourse,
)
from centerline.chains import EntityRegistry, gold_registry
from centerline.corpus import (
    Agreement,
    CorpusFormatError,
    Diagnostic,
    Discourse,
    Expression,
    Form,
    Gender,
    GoldLink,
    LinkType,
    Number,
    Person,
    Role,
    UnsupportedCategory,
    Utterance,
    parse_corpus,
    serialize_corpus,
    validate_discourse,
)
from centerline.evalcli import (
    CostCounts,
    CostRule,
    EvaluationReport,
    OutcomeCounts,
    ReportFormatError,
    SectionReport,
    StrategyCell,
    TransitionCounts,
    build_parser,
    canonical_strategy_order,
    evaluate,
    main,
    parse_report,
    render_report,
    render_trace_text,
)
from centerline.knowledge import (
    KBFormatError,
    KnowledgeBase,
    UnknownConceptError,
    bridging_relation,
    is_generalization_of,
    parse_kb,
)
from centerline.ranking import (
    BoundForm,
    CenterElement,
    CfList,
    ISStatus,
    Link,
    Ordering,
    Strategy,
    UNBOUND,
    UnresolvedLinkError,
    build_center_candidates,
    classify_is_status,
    compare,
    rank_cf,
)
from centerline.resolution import (
    Outcome,
    ResolutionDecision,
    agreement_compatible,
    attempt_resolution,
    resolve_ellipsis,
    resolve_nominal_anaphor,
    resolve_pronoun,
    resolve_utterance,
)

__version__ = "0.1.0"

__all__ = [
    "Agreement",
    "BoundForm",
    "CenterElement",
    "CenteringState",
    "CenteringTrace",
    "CfList",
    "CorpusFormatError",
    "CostCounts",
    "CostRule",
    "Diagnostic",
    "Discourse",
    "EntityRegistry",
    "EvaluationReport",
    "Expression",
    "Form",
    "Gender",
    "GoldLink",
    "ISStatus",
    "KBFormatError",
    "KnowledgeBase",
    "Link",
    "LinkType",
    "Mode",
    "Number",
    "Ordering",
    "Outcome",
    "OutcomeCounts",
    "PairCost",
    "Person",
    "ReportFormatError",
    "ResolutionDecision",
    "Role",
    "SectionReport",
    "Strategy",
    "UNBOUND",
    "StrategyCell",
    "TransitionCounts",
    "build_parser",
    "canonical_strategy_order",
    "TransitionType",
    "UnknownConceptError",
    "UnresolvedLinkError",
    "UnsupportedCategory",
    "Utterance",
    "agreement_compatible",
    "attempt_resolution",
    "bridging_relation",
    "build_center_candidates",
    "classify_is_status",
    "classify_transition",
    "compare",
    "compute_cb",
    "evaluate",
    "export_trace",
    "gold_registry",
    "is_generalization_of",
    "main",
    "pair_cost_definitional",
    "pair_cost_table",
    "parse_corpus",
    "parse_kb",
    "parse_report",
    "rank_cf",
    "realized_entities",
    "render_report",
    "render_trace_text",
    "resolve_ellipsis",
    "resolve_nominal_anaphor",
    "resolve_pronoun",
    "resolve_utterance",
    "run_discourse",
    "serialize_corpus",
    "validate_discourse",
]
