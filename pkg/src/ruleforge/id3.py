"""Decision-tree induction by recursive minimum-entropy attribute selection.

Nodes hold the positive/negative instance-id partition; edges carry the
attribute=value test that routes cases from parent to child. Node ids are
assigned in creation order during depth-first expansion, and the printed
listing reproduces that structure exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import Dataset, Instance, require_valid

ROOT_MARKER = "root-nil"

# Weighted-info sentinel used by the 'disqualify' empty-branch mode.
DISQUALIFIED = 999.0


@dataclass(frozen=True)
class TreeNode:
    id: int
    positives: tuple[int, ...]
    negatives: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.positives) + len(self.negatives)

    @property
    def is_pure(self) -> bool:
        return not self.positives or not self.negatives


@dataclass(frozen=True)
class TreeEdge:
    parent: int
    test: str | tuple[str, str]  # ROOT_MARKER or (attribute, value)
    child: int

    def label(self) -> str:
        if self.test == ROOT_MARKER:
            return ROOT_MARKER
        return f"{self.test[0]}={self.test[1]}"


@dataclass(frozen=True)
class DecisionTree:
    nodes: tuple[TreeNode, ...]
    edges: tuple[TreeEdge, ...]
    counter: int  # next unassigned node id

    def node(self, node_id: int) -> TreeNode:
        return self.nodes[node_id - 1]

    def children(self, node_id: int) -> list[TreeEdge]:
        return [e for e in self.edges if e.parent == node_id]

    def leaves(self) -> list[TreeNode]:
        parents = {e.parent for e in self.edges}
        return [n for n in self.nodes if n.id not in parents]


@dataclass(frozen=True)
class SplitEvaluation:
    attribute: str
    weighted_info: float
    branches: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class ClassificationRule:
    consequent: str
    probability: float
    antecedent: tuple[tuple[str, str], ...]


def binary_info(p_frac: float, n_frac: float) -> float:
    """Bits needed to encode a two-class mixture, with 0*log2(0) = 0."""
    if not (0.0 <= p_frac <= 1.0 and 0.0 <= n_frac <= 1.0):
        raise ValueError("fractions must lie in [0, 1]")
    if abs(p_frac + n_frac - 1.0) > 1e-12:
        raise ValueError("fractions must sum to 1")

    def term(x: float) -> float:
        return 0.0 if x == 0.0 else -x * math.log2(x)

    return term(p_frac) + term(n_frac)


def _partition(attr: str, subset: list[int], d: Dataset) -> list[tuple[str, list[Instance]]]:
    schema = d.schema_for(attr)
    if schema is None:
        raise ValueError(f"unknown attribute: {attr}")
    wanted = set(subset)
    groups: dict[str, list[Instance]] = {v: [] for v in schema.values}
    for inst in d.instances:  # declaration order fixes the branch id ordering
        if inst.id in wanted:
            groups[inst.assignments[attr]].append(inst)
    return [(v, groups[v]) for v in schema.values]


def split_evaluation(
    attr: str, subset: list[int], d: Dataset, empty_branch: str = "zero"
) -> SplitEvaluation:
    """Instance-weighted mixture entropy after splitting subset on attr.

    Branches follow the attribute's declared value order; a value with no
    instances contributes weight 0 ('zero' mode) or disqualifies the
    attribute with a 999 sentinel ('disqualify' mode).
    """
    if not subset:
        raise ValueError("subset must be non-empty")
    groups = _partition(attr, subset, d)
    total = sum(len(g) for _, g in groups)
    if total == 0:
        raise ValueError("subset matches no instances of the dataset")
    branches = []
    acc = 0.0
    disqualified = False
    for value, insts in groups:
        pos = tuple(i.id for i in insts if i.class_label == "yes")
        neg = tuple(i.id for i in insts if i.class_label == "no")
        branches.append((value, pos, neg))
        n_v = len(insts)
        if n_v == 0:
            if empty_branch == "disqualify":
                disqualified = True
            continue
        acc += (n_v / total) * binary_info(len(pos) / n_v, len(neg) / n_v)
    return SplitEvaluation(attr, DISQUALIFIED if disqualified else acc, tuple(branches))


def information_gain(attr: str, subset: list[int], d: Dataset) -> float:
    """Entropy of the subset's class mixture minus the post-split entropy."""
    evaluation = split_evaluation(attr, subset, d)
    wanted = set(subset)
    pos = sum(1 for i in d.instances if i.id in wanted and i.class_label == "yes")
    total = sum(1 for i in d.instances if i.id in wanted)
    parent = binary_info(pos / total, (total - pos) / total)
    return parent - evaluation.weighted_info


def choose_best_attribute(cands: list[SplitEvaluation]) -> SplitEvaluation:
    """Minimum weighted_info wins; ties keep the earliest candidate."""
    if not cands:
        raise ValueError("no candidate attributes")
    best = cands[0]
    for cand in cands[1:]:
        if cand.weighted_info < best.weighted_info:
            best = cand
    return best


def build_tree(d: Dataset, empty_branch: str = "zero") -> DecisionTree:
    """Grow the tree by depth-first expansion of mixed partitions.

    The virtual node 0 feeds all instances through the root edge into node 1;
    a node stops expanding when its partition is pure or no attributes
    remain. Children exist for every declared value of the chosen attribute.
    """
    require_valid(d)
    if not d.instances:
        raise ValueError("cannot build a tree from an empty dataset")

    nodes: list[TreeNode] = []
    edges: list[TreeEdge] = []
    counter = 1  # id 0 is the virtual root

    def create(parent: int, test, pos: tuple[int, ...], neg: tuple[int, ...], attrs: list[str]):
        nonlocal counter
        node_id = counter
        counter += 1
        edges.append(TreeEdge(parent, test, node_id))
        nodes.append(TreeNode(node_id, pos, neg))
        if pos and neg and attrs:
            evaluations = [split_evaluation(a, list(pos + neg), d, empty_branch) for a in attrs]
            chosen = choose_best_attribute(evaluations)
            remaining = [a for a in attrs if a != chosen.attribute]
            for value, b_pos, b_neg in chosen.branches:
                create(node_id, (chosen.attribute, value), b_pos, b_neg, remaining)

    all_pos = tuple(d.positives())
    all_neg = tuple(d.negatives())
    create(0, ROOT_MARKER, all_pos, all_neg, [s.name for s in d.schemas])
    return DecisionTree(tuple(nodes), tuple(edges), counter)


def render_tree_listing(t: DecisionTree) -> str:
    """Print node facts then edge facts, one clause per line."""
    lines = []
    for n in t.nodes:
        pos = ", ".join(str(i) for i in n.positives)
        neg = ", ".join(str(i) for i in n.negatives)
        lines.append(f"node({n.id}, [{pos}]-[{neg}]).")
    for e in t.edges:
        lines.append(f"edge({e.parent}, {e.label()}, {e.child}).")
    return "\n".join(lines) + "\n"


def tree_to_json(t: DecisionTree) -> dict:
    return {
        "nodes": [{"id": n.id, "pos": list(n.positives), "neg": list(n.negatives)} for n in t.nodes],
        "edges": [{"parent": e.parent, "test": e.label(), "child": e.child} for e in t.edges],
    }


def _path_tests(t: DecisionTree, leaf_id: int) -> list[tuple[str, str]]:
    parent_edge = {e.child: e for e in t.edges}
    tests: list[tuple[str, str]] = []
    node_id = leaf_id
    while node_id in parent_edge:
        edge = parent_edge[node_id]
        if edge.test != ROOT_MARKER:
            tests.append(edge.test)
        node_id = edge.parent
    tests.reverse()
    return tests


def extract_rules(t: DecisionTree, d: Dataset) -> list[ClassificationRule]:
    """One rule per non-empty leaf, weighted by its training-set coverage.

    A mixed exhausted leaf takes the majority class ('no' on an exact tie).
    Rules come out ordered by descending probability, ties in leaf creation
    order.
    """
    total = len(d.instances)
    root_ids = set(t.node(1).positives) | set(t.node(1).negatives)
    if root_ids != {i.id for i in d.instances}:
        raise ValueError("tree was not built from this dataset")

    rules: list[ClassificationRule] = []
    for leaf in t.leaves():
        if leaf.size == 0:
            continue
        n_pos, n_neg = len(leaf.positives), len(leaf.negatives)
        consequent = "yes" if n_pos > n_neg else "no"
        rules.append(
            ClassificationRule(consequent, leaf.size / total, tuple(_path_tests(t, leaf.id)))
        )
    rules.sort(key=lambda r: -r.probability)  # stable: ties keep creation order
    return rules
