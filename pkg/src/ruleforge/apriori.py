"""Level-wise frequent-pattern mining and association-rule derivation.

Support thresholds are percentages of the transaction count, compared with
>= in real arithmetic; patterns never co-occurring in any case are excluded
regardless of threshold. Itemsets are kept in canonical (attribute, value)
lexicographic order so outputs are reproducible byte for byte.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dataset import Item, Transaction, render_item

UNION_COMBINE = "union-combine"
JOIN_PRUNE = "join-prune"


@dataclass(frozen=True)
class MiningConfig:
    min_support_percent: float
    min_confidence: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.min_support_percent <= 100.0:
            raise ValueError("min_support_percent must lie in (0, 100]")
        if not 0.0 < self.min_confidence <= 1.0:
            raise ValueError("min_confidence must lie in (0, 1]")


@dataclass(frozen=True)
class Itemset:
    items: tuple[Item, ...]  # canonically sorted
    support: int


@dataclass(frozen=True)
class FrequentPatternSet:
    levels: dict[int, list[Itemset]] = field(default_factory=dict)
    db_size: int = 0

    def all_itemsets(self) -> list[Itemset]:
        return [s for k in sorted(self.levels) for s in self.levels[k]]

    def support_index(self) -> dict[frozenset, int]:
        return {frozenset(s.items): s.support for s in self.all_itemsets()}


@dataclass(frozen=True)
class AssociationRule:
    antecedent: tuple[Item, ...]
    consequent: tuple[Item, ...]
    support: int
    confidence: float


def support_count(pattern, db: list[Transaction]) -> int:
    """Number of transactions containing every item of the pattern."""
    wanted = frozenset(pattern)
    return sum(1 for t in db if wanted <= t)


def all_combinations(k: int, pool: list) -> list[list]:
    """All k-element sublists of pool, order-preserving and deduplicated."""
    if k < 0:
        raise ValueError("k must be non-negative")
    seen = set()
    out = []
    for combo in itertools.combinations(pool, k):
        key = tuple(combo)
        if key not in seen:
            seen.add(key)
            out.append(list(combo))
    return out


def _canon(items) -> tuple[Item, ...]:
    return tuple(sorted(items))


def generate_candidates(
    k: int, prev_large: list[Itemset], strategy: str = UNION_COMBINE
) -> list[frozenset]:
    """Candidate k-itemsets from the frequent (k-1)-itemsets.

    union-combine takes every pairwise union of length exactly k; join-prune
    joins sets sharing a (k-2)-prefix and drops candidates with an
    infrequent (k-1)-subset. Output is deduplicated and canonically sorted.
    """
    if k < 2:
        raise ValueError("candidate generation starts at k=2")
    prev_sets = [frozenset(s.items) for s in prev_large]
    candidates: set[frozenset] = set()
    if strategy == UNION_COMBINE:
        for a, b in itertools.combinations(prev_sets, 2):
            u = a | b
            if len(u) == k:
                candidates.add(u)
    elif strategy == JOIN_PRUNE:
        sorted_prev = sorted(_canon(s) for s in prev_sets)
        prev_lookup = set(prev_sets)
        for a, b in itertools.combinations(sorted_prev, 2):
            if a[: k - 2] != b[: k - 2]:
                continue
            u = frozenset(a) | frozenset(b)
            if len(u) != k:
                continue
            if all(frozenset(sub) in prev_lookup for sub in itertools.combinations(sorted(u), k - 1)):
                candidates.add(u)
    else:
        raise ValueError(f"unknown strategy: {strategy}")
    return sorted(candidates, key=_canon)


def filter_frequent(cands, db: list[Transaction], cfg: MiningConfig) -> list[Itemset]:
    """Keep candidates whose support clears the percentage threshold.

    The comparison is support >= (percent/100) * |db| in real arithmetic;
    support-0 candidates are dropped even when the threshold is below 1.
    """
    threshold = (cfg.min_support_percent / 100.0) * len(db)
    kept = []
    for cand in cands:
        support = support_count(cand, db)
        if support >= threshold and support >= 1:
            kept.append(Itemset(_canon(cand), support))
    kept.sort(key=lambda s: s.items)
    return kept


def mine_frequent(
    db: list[Transaction], cfg: MiningConfig, strategy: str = UNION_COMBINE
) -> FrequentPatternSet:
    """Run the level-wise loop until a level has <=1 itemset or no candidates.

    Level 1 is built from the items actually observed in the database; every
    non-empty level discovered on the way is retained.
    """
    if not db:
        raise ValueError("cannot mine an empty transaction database")
    universe = sorted({item for t in db for item in t})
    levels: dict[int, list[Itemset]] = {}
    current = filter_frequent([frozenset([i]) for i in universe], db, cfg)
    if current:
        levels[1] = current
    k = 1
    while len(current) > 1:
        k += 1
        candidates = generate_candidates(k, current, strategy)
        if not candidates:
            break
        current = filter_frequent(candidates, db, cfg)
        if not current:
            break
        levels[k] = current
    return FrequentPatternSet(levels, len(db))


def derive_rules(fps: FrequentPatternSet, cfg: MiningConfig) -> list[AssociationRule]:
    """Split every stored pattern of length >= 2 into X => P\\X rules.

    A rule is emitted when support(P)/support(X) clears min_confidence;
    antecedent supports are looked up from the pattern set itself, which
    downward closure guarantees to contain them.
    """
    index = fps.support_index()
    rules: list[AssociationRule] = []
    for pattern in fps.all_itemsets():
        if len(pattern.items) < 2:
            continue
        items = pattern.items
        for size in range(1, len(items)):
            for ant in itertools.combinations(items, size):
                ant_support = index[frozenset(ant)]
                confidence = pattern.support / ant_support
                if confidence >= cfg.min_confidence:
                    consequent = tuple(i for i in items if i not in ant)
                    rules.append(AssociationRule(ant, consequent, pattern.support, confidence))
    return rules


def patterns_to_json(fps: FrequentPatternSet, cfg: MiningConfig, rules=None) -> dict:
    return {
        "db_size": fps.db_size,
        "min_support_percent": cfg.min_support_percent,
        "levels": [
            {
                "length": k,
                "itemsets": [
                    {"items": [render_item(i) for i in s.items], "support": s.support}
                    for s in fps.levels[k]
                ],
            }
            for k in sorted(fps.levels)
        ],
        "rules": [
            {
                "antecedent": [render_item(i) for i in r.antecedent],
                "consequent": [render_item(i) for i in r.consequent],
                "support": r.support,
                "confidence": r.confidence,
            }
            for r in (rules or [])
        ],
    }


def render_pattern(s: Itemset) -> str:
    return "{" + " & ".join(render_item(i) for i in s.items) + "}"
