"""Knowledge mining over categorical clinical datasets: decision trees,
frequent patterns, weighted rule knowledge bases, interactive consultation,
and integrity-guard triggers."""

from .apriori import (
    AssociationRule,
    FrequentPatternSet,
    Itemset,
    MiningConfig,
    all_combinations,
    derive_rules,
    filter_frequent,
    generate_candidates,
    mine_frequent,
    support_count,
)
from .consult import (
    Conclusion,
    ConsultationSession,
    Question,
    conclusion,
    explain,
    start_session,
    submit_answer,
)
from .dataset import (
    AttributeSchema,
    Dataset,
    Instance,
    InvalidDatasetError,
    ParseError,
    parse_dataset,
    render_dataset,
    to_transactions,
    validate_dataset,
)
from .guard import TriggerRule, ViolationReport, check_record, compile_triggers
from .id3 import (
    ClassificationRule,
    DecisionTree,
    binary_info,
    build_tree,
    choose_best_attribute,
    extract_rules,
    information_gain,
    render_tree_listing,
    split_evaluation,
)
from .knb import KnowledgeBase, emit_knb, parse_knb

__all__ = [
    "AssociationRule",
    "AttributeSchema",
    "ClassificationRule",
    "Conclusion",
    "ConsultationSession",
    "Dataset",
    "DecisionTree",
    "FrequentPatternSet",
    "Instance",
    "InvalidDatasetError",
    "Itemset",
    "KnowledgeBase",
    "MiningConfig",
    "ParseError",
    "Question",
    "TriggerRule",
    "ViolationReport",
    "all_combinations",
    "binary_info",
    "build_tree",
    "check_record",
    "choose_best_attribute",
    "compile_triggers",
    "conclusion",
    "derive_rules",
    "explain",
    "extract_rules",
    "filter_frequent",
    "generate_candidates",
    "information_gain",
    "mine_frequent",
    "parse_dataset",
    "parse_knb",
    "emit_knb",
    "render_dataset",
    "render_tree_listing",
    "split_evaluation",
    "start_session",
    "submit_answer",
    "support_count",
    "to_transactions",
    "validate_dataset",
]
