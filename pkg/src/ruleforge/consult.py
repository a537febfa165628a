"""Interactive consultation sessions over a rule knowledge base.

Rules are evaluated in file order, restarting from the first rule after
every new fact. Conditions are proven left to right: a condition whose
attribute is already known either matches or kills the rule, and the first
unknown condition becomes the next menu question. Facts are never asked
twice and never retracted within a session.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .knb import KnowledgeBase, format_probability

EXIT_CODE = "99"


class ConsultationError(Exception):
    """Base for consultation protocol violations."""


class SessionStateError(ConsultationError):
    """Operation not allowed in the session's current status."""


class IllegalAnswerError(ConsultationError):
    """Answer value outside the menu currently offered."""


@dataclass(frozen=True)
class Question:
    attribute: str
    menu: tuple[str, ...]


@dataclass(frozen=True)
class Conclusion:
    class_value: str
    probability: float


AWAITING = "awaiting"
CONCLUDED = "concluded"
FAILED = "failed"
ABORTED = "aborted"


@dataclass
class ConsultationSession:
    kb: KnowledgeBase
    known: list[tuple[str, str]] = field(default_factory=list)  # most recent first
    status: str = AWAITING
    question: Question | None = None
    result: Conclusion | None = None

    def known_value(self, attribute: str) -> str | None:
        for attr, value in self.known:
            if attr == attribute:
                return value
        return None


def _evaluate(session: ConsultationSession) -> None:
    facts = dict(session.known)
    for rule in session.kb.rules:
        contradicted = False
        for attr, value in rule.antecedent:
            if attr in facts:
                if facts[attr] != value:
                    contradicted = True
                    break
            else:
                menu = session.kb.menu_for(attr)
                session.status = AWAITING
                session.question = Question(attr, menu.values)
                session.result = None
                return
        if not contradicted:
            session.status = CONCLUDED
            session.question = None
            session.result = Conclusion(rule.consequent, rule.probability)
            return
    session.status = FAILED
    session.question = None
    session.result = None


def start_session(kb: KnowledgeBase) -> ConsultationSession:
    """Begin a consultation; the first question (if any) comes from rule 1."""
    kb.check()
    session = ConsultationSession(kb)
    _evaluate(session)
    return session


def submit_answer(session: ConsultationSession, attr: str, value: str) -> ConsultationSession:
    """Record an answer for the attribute currently asked and re-evaluate.

    The reserved exit code aborts the session without storing a fact.
    """
    if session.status != AWAITING or session.question is None:
        raise SessionStateError("session is not awaiting an answer")
    if attr != session.question.attribute:
        raise SessionStateError(
            f"attribute {attr!r} is not currently asked (expected {session.question.attribute!r})"
        )
    if value == EXIT_CODE:
        session.status = ABORTED
        session.question = None
        session.result = None
        return session
    if value not in session.question.menu:
        raise IllegalAnswerError(f"value {value!r} not offered for {attr}")
    session.known.insert(0, (attr, value))
    _evaluate(session)
    return session


def conclusion(session: ConsultationSession) -> Conclusion:
    if session.status != CONCLUDED or session.result is None:
        raise SessionStateError("no conclusion: session has not concluded")
    return session.result


def render_known(session: ConsultationSession) -> str:
    return "[" + ", ".join(f"{a}({v})" for a, v in session.known) + "]"


def explain(session: ConsultationSession) -> str:
    """Why-text: the conclusion (when reached) plus the known-facts store."""
    if session.status == CONCLUDED:
        head = (
            f"The answer is __{session.result.class_value}__ "
            f"with probability = {format_probability(session.result.probability)}."
        )
    elif session.status == FAILED:
        head = "No conclusion could be reached."
    else:
        raise SessionStateError("nothing to explain: session is still in progress")
    return f"{head}\nThe known storage are\n{render_known(session)}"
