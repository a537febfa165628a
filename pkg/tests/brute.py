"""Independent brute-force oracles used to pin expected values.

Nothing here may call into the code paths under test: supports come from
exhaustive subset enumeration with direct counting, entropies from a
from-scratch formula evaluation, and datasets from a seeded generator.
"""
from __future__ import annotations

import itertools
import math
import random

from ruleforge.dataset import AttributeSchema, Dataset, Instance


def exhaustive_frequent(db, min_support_percent: float) -> dict[int, dict[frozenset, int]]:
    """Enumerate all 2^m - 1 item subsets and count supports directly."""
    universe = sorted({item for t in db for item in t})
    bit = {item: 1 << i for i, item in enumerate(universe)}
    masks = [sum(bit[i] for i in t) for t in db]
    threshold = (min_support_percent / 100.0) * len(db)
    by_length: dict[int, dict[frozenset, int]] = {}
    for k in range(1, len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            pattern = 0
            for item in combo:
                pattern |= bit[item]
            support = sum(1 for m in masks if m & pattern == pattern)
            if support >= threshold and support >= 1:
                by_length.setdefault(k, {})[frozenset(combo)] = support
    return by_length


def entropy2(p: float, n: float) -> float:
    """Two-class mixture entropy, written independently of the library."""
    total = 0.0
    for x in (p, n):
        if x > 0:
            total -= x * math.log(x) / math.log(2)
    return total


def gain_direct(attr: str, subset: list[int], d: Dataset) -> float:
    """The gain formula evaluated from scratch over raw instance data."""
    insts = [i for i in d.instances if i.id in set(subset)]
    total = len(insts)
    pos = sum(1 for i in insts if i.class_label == "yes")
    parent = entropy2(pos / total, (total - pos) / total)
    weighted = 0.0
    for value in d.schema_for(attr).values:
        group = [i for i in insts if i.assignments[attr] == value]
        if not group:
            continue
        g_pos = sum(1 for i in group if i.class_label == "yes")
        weighted += (len(group) / total) * entropy2(g_pos / len(group), (len(group) - g_pos) / len(group))
    return parent - weighted


def random_dataset(rng: random.Random, max_attrs: int = 5, max_instances: int = 12) -> Dataset:
    """Small random binary dataset for the property corpora."""
    n_attrs = rng.randint(1, max_attrs)
    names = [f"a{i}" for i in range(1, n_attrs + 1)]
    schemas = tuple(AttributeSchema(n, ("yes", "no")) for n in names)
    n_instances = rng.randint(1, max_instances)
    instances = tuple(
        Instance(
            k,
            rng.choice(("yes", "no")),
            {n: rng.choice(("yes", "no")) for n in names},
        )
        for k in range(1, n_instances + 1)
    )
    return Dataset(schemas, AttributeSchema("class", ("yes", "no")), instances)


def corpus(seed: int, size: int) -> list[Dataset]:
    rng = random.Random(seed)
    return [random_dataset(rng) for _ in range(size)]
