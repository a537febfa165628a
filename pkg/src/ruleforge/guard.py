"""Trigger-style integrity constraints compiled from confirmed rules.

A trigger fires when a record satisfies the whole antecedent but
contradicts the expected attribute value. Records missing any attribute a
trigger mentions skip that trigger; a guard must not reject what it cannot
evaluate.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .apriori import AssociationRule
from .dataset import CLASS_ATTR, Item, render_item
from .id3 import ClassificationRule

logger = logging.getLogger(__name__)

ASSOC_ID_PREFIX = "assoc-"
TREE_ID_PREFIX = "tree-"


class TriggerCompileError(Exception):
    """A confirmed rule cannot be deployed as a trigger."""


@dataclass(frozen=True)
class TriggerSource:
    kind: str  # "association-rule" | "tree-rule"
    weight: float  # original confidence or probability


@dataclass(frozen=True)
class TriggerRule:
    id: str
    antecedent: tuple[Item, ...]
    expected: Item
    source: TriggerSource


@dataclass(frozen=True)
class ViolationReport:
    trigger: str
    record: int | str
    message: str


def compile_triggers(
    assoc: list[AssociationRule],
    class_rules: list[ClassificationRule],
    confirmed: set[str],
) -> list[TriggerRule]:
    """Compile the human-confirmed subset of rules into triggers.

    Association rules are addressed as "assoc-<index>" and must be
    exceptionless (confidence 1.0) with a single-item consequent; tree rules
    are addressed as "tree-<index>" and expect (class, consequent) under
    their antecedent conditions.
    """
    triggers: list[TriggerRule] = []
    known_ids: set[str] = set()
    for index, rule in enumerate(assoc):
        rule_id = f"{ASSOC_ID_PREFIX}{index}"
        known_ids.add(rule_id)
        if rule_id not in confirmed:
            continue
        if len(rule.consequent) != 1:
            raise TriggerCompileError(
                f"{rule_id}: rejected, consequent must be a single item "
                f"(got {[render_item(i) for i in rule.consequent]})"
            )
        if rule.confidence != 1.0:
            raise TriggerCompileError(
                f"{rule_id}: rejected, confidence {rule.confidence} < 1.0 would flag valid data"
            )
        triggers.append(
            TriggerRule(
                rule_id,
                rule.antecedent,
                rule.consequent[0],
                TriggerSource("association-rule", rule.confidence),
            )
        )
    for index, rule in enumerate(class_rules):
        rule_id = f"{TREE_ID_PREFIX}{index}"
        known_ids.add(rule_id)
        if rule_id not in confirmed:
            continue
        if not rule.antecedent:
            raise TriggerCompileError(f"{rule_id}: rejected, trigger antecedent may not be empty")
        triggers.append(
            TriggerRule(
                rule_id,
                tuple(rule.antecedent),
                (CLASS_ATTR, rule.consequent),
                TriggerSource("tree-rule", rule.probability),
            )
        )
    unknown = confirmed - known_ids
    if unknown:
        raise TriggerCompileError(f"confirmed ids match no rule: {sorted(unknown)}")
    return triggers


def check_record(
    record: dict[str, str], triggers: list[TriggerRule], record_id: int | str = 0
) -> list[ViolationReport]:
    """Check one record against every trigger; a report per contradiction."""
    violations: list[ViolationReport] = []
    for trig in triggers:
        mentioned = [attr for attr, _ in trig.antecedent] + [trig.expected[0]]
        if any(attr not in record for attr in mentioned):
            logger.debug("record %s: trigger %s skipped (missing attributes)", record_id, trig.id)
            continue
        if all(record[attr] == value for attr, value in trig.antecedent):
            attr, value = trig.expected
            if record[attr] != value:
                conditions = ", ".join(render_item(i) for i in trig.antecedent)
                violations.append(
                    ViolationReport(
                        trig.id,
                        record_id,
                        f"expected {render_item(trig.expected)} given {conditions}, "
                        f"got {render_item((attr, record[attr]))}",
                    )
                )
    return violations


def trigger_to_json(trig: TriggerRule) -> dict:
    return {
        "id": trig.id,
        "antecedent": [render_item(i) for i in trig.antecedent],
        "expected": render_item(trig.expected),
        "source": {"kind": trig.source.kind, "weight": trig.source.weight},
    }


def trigger_from_json(doc: dict) -> TriggerRule:
    def parse_item(text: str) -> Item:
        attr, _, value = text.partition("=")
        if not attr or not value:
            raise ValueError(f"bad item {text!r}, expected attr=value")
        return (attr, value)

    return TriggerRule(
        doc["id"],
        tuple(parse_item(i) for i in doc["antecedent"]),
        parse_item(doc["expected"]),
        TriggerSource(doc["source"]["kind"], doc["source"]["weight"]),
    )
