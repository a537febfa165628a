"""The .knb knowledge-base text format: weighted rules plus menu-ask clauses.

Rule clauses look like ``type(no,0.5):-fever(yes).`` and each antecedent
attribute must carry a menu clause ``fever(X):-menuask(fever,X,[yes,no]).``
so the consultation shell knows how to acquire its value. Emission and
parsing round-trip exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .dataset import AttributeSchema
from .id3 import ClassificationRule

GOAL_NAME = "type"


class KnbError(Exception):
    """Base for knowledge-base format problems."""


class KnbParseError(KnbError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class MenuDecl:
    attribute: str
    values: tuple[str, ...]


@dataclass(frozen=True)
class KnowledgeBase:
    rules: tuple[ClassificationRule, ...]
    menus: tuple[MenuDecl, ...]
    goal_name: str = GOAL_NAME

    def menu_for(self, attribute: str) -> MenuDecl | None:
        for m in self.menus:
            if m.attribute == attribute:
                return m
        return None

    def check(self) -> None:
        for rule in self.rules:
            for attr, _ in rule.antecedent:
                if self.menu_for(attr) is None:
                    raise KnbError(f"rule condition on {attr} has no menu declaration")


def format_probability(p: float) -> str:
    """Shortest decimal that round-trips; integral values drop the '.0'."""
    text = repr(float(p))
    return text[:-2] if text.endswith(".0") else text


def _rule_clause(rule: ClassificationRule, goal: str = GOAL_NAME) -> str:
    if rule.antecedent:
        body = ",".join(f"{attr}({value})" for attr, value in rule.antecedent)
    else:
        body = "true"
    return f"{goal}({rule.consequent},{format_probability(rule.probability)}):-{body}."


def emit_knb(rules: list[ClassificationRule], schemas: list[AttributeSchema]) -> str:
    """Serialize extracted rules and per-attribute menus to .knb text.

    Menus cover every schema attribute in order, the class menu included.
    """
    known = {s.name for s in schemas}
    for rule in rules:
        for attr, _ in rule.antecedent:
            if attr not in known:
                raise KnbError(f"rule references unknown attribute {attr}")
    lines = [
        "% knowledge base for the expert shell",
        "% top_goal is where the inference starts.",
        "",
        f"top_goal(X,V) :- {GOAL_NAME}(X,V).",
        "",
    ]
    lines += [f"{_rule_clause(r)} % generated rule" for r in rules]
    lines.append("")
    lines += [
        f"{s.name}(X):-menuask({s.name},X,[{','.join(s.values)}]).%generated menu"
        for s in schemas
    ]
    lines += ["", "%end of automatic post process", ""]
    return "\n".join(lines)


_NAME = r"[a-z][A-Za-z0-9_]*"
_TOP_GOAL_RE = re.compile(rf"^top_goal\(X,V\)\s*:-\s*({_NAME})\(X,V\)\.$")
_MENU_RE = re.compile(
    rf"^({_NAME})\(X\)\s*:-\s*menuask\(({_NAME})\s*,\s*X\s*,\s*\[([^\]]*)\]\)\.$"
)
_RULE_RE = re.compile(rf"^({_NAME})\(({_NAME})\s*,\s*([0-9.eE+-]+)\)\s*:-\s*(.+)\.$")
_COND_RE = re.compile(rf"^({_NAME})\(({_NAME})\)$")


def parse_knb(text: str) -> KnowledgeBase:
    """Parse .knb text; rules keep file order and probabilities as written."""
    goal = GOAL_NAME
    rules: list[ClassificationRule] = []
    menus: list[MenuDecl] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        m = _TOP_GOAL_RE.match(line)
        if m:
            goal = m.group(1)
            continue
        m = _MENU_RE.match(line)
        if m:
            head, arg, values = m.groups()
            if head != arg:
                raise KnbParseError(f"menu head {head} does not match menuask({arg},...)", lineno)
            if any(d.attribute == head for d in menus):
                raise KnbParseError(f"duplicate menu for attribute {head}", lineno)
            parsed = tuple(v.strip() for v in values.split(",") if v.strip())
            if not parsed:
                raise KnbParseError(f"menu for {head} has no values", lineno)
            menus.append(MenuDecl(head, parsed))
            continue
        m = _RULE_RE.match(line)
        if m:
            head, consequent, prob_text, body = m.groups()
            if head != goal:
                raise KnbParseError(f"rule head {head!r} does not match goal {goal!r}", lineno)
            try:
                probability = float(prob_text)
            except ValueError:
                raise KnbParseError(f"bad probability {prob_text!r}", lineno) from None
            if not 0.0 < probability <= 1.0:
                raise KnbParseError(f"probability {prob_text} outside (0, 1]", lineno)
            conditions: list[tuple[str, str]] = []
            if body.strip() != "true":
                for part in body.split(","):
                    cm = _COND_RE.match(part.strip())
                    if not cm:
                        raise KnbParseError(f"bad condition {part.strip()!r}", lineno)
                    conditions.append((cm.group(1), cm.group(2)))
            rules.append(ClassificationRule(consequent, probability, tuple(conditions)))
            continue
        raise KnbParseError(f"unrecognized clause: {line!r}", lineno)
    kb = KnowledgeBase(tuple(rules), tuple(menus), goal)
    kb.check()
    return kb
