from pathlib import Path

import pytest

from ruleforge.dataset import parse_dataset, to_transactions

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "fixtures" / "allergy.data"

# Exact node/edge listing the fixture tree must print.
GOLDEN_LISTING = """\
node(1, [2, 6, 8]-[1, 3, 4, 5, 7, 9, 10]).
node(2, []-[1, 3, 5, 9, 10]).
node(3, [2, 6, 8]-[4, 7]).
node(4, []-[4, 7]).
node(5, [2, 6, 8]-[]).
edge(0, root-nil, 1).
edge(1, fever=yes, 2).
edge(1, fever=no, 3).
edge(3, swollenGlands=yes, 4).
edge(3, swollenGlands=no, 5).
"""

GOLDEN_RULE_CLAUSES = [
    "type(no,0.5):-fever(yes).",
    "type(yes,0.3):-fever(no),swollenGlands(no).",
    "type(no,0.2):-fever(no),swollenGlands(yes).",
]

GOLDEN_MENU_LINES = [
    "soreThroat(X):-menuask(soreThroat,X,[yes,no]).%generated menu",
    "fever(X):-menuask(fever,X,[yes,no]).%generated menu",
    "swollenGlands(X):-menuask(swollenGlands,X,[yes,no]).%generated menu",
    "congestion(X):-menuask(congestion,X,[yes,no]).%generated menu",
    "headache(X):-menuask(headache,X,[yes,no]).%generated menu",
    "class(X):-menuask(class,X,[yes,no]).%generated menu",
]

# The six golden >=50%-support patterns with brute-forced support counts.
GOLDEN_PATTERNS_50 = {
    frozenset({("fever", "yes"), ("class", "no")}): 5,
    frozenset({("fever", "yes"), ("congestion", "yes")}): 5,
    frozenset({("swollenGlands", "no"), ("congestion", "yes")}): 7,
    frozenset({("congestion", "yes"), ("headache", "yes")}): 5,
    frozenset({("congestion", "yes"), ("class", "no")}): 5,
    frozenset({("fever", "yes"), ("congestion", "yes"), ("class", "no")}): 5,
}

# Brute-forced level-1 supports at the 50% threshold.
GOLDEN_SINGLES_50 = {
    ("soreThroat", "yes"): 5,
    ("soreThroat", "no"): 5,
    ("fever", "yes"): 5,
    ("fever", "no"): 5,
    ("swollenGlands", "no"): 7,
    ("congestion", "yes"): 8,
    ("headache", "yes"): 5,
    ("headache", "no"): 5,
    ("class", "no"): 7,
}


@pytest.fixture(scope="session")
def allergy_text() -> str:
    return FIXTURE_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def allergy(allergy_text):
    return parse_dataset(allergy_text)


@pytest.fixture(scope="session")
def allergy_db(allergy):
    return to_transactions(allergy)
