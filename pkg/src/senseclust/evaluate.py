"""Adjusted Rand Index scoring, per-word reports, and confusion matrices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Hashable, Sequence

import numpy as np

if TYPE_CHECKING:
    from .dataset import Dataset


@dataclass
class Labeling:
    """Total map from context_id to a sense label string."""

    assignments: dict[str, str] = field(default_factory=dict)


def _canonical_partition(labels: Sequence[Hashable]) -> list[int]:
    seen: dict[Hashable, int] = {}
    return [seen.setdefault(lab, len(seen)) for lab in labels]


def ari(gold: Sequence[Hashable], pred: Sequence[Hashable]) -> float:
    """Adjusted Rand Index between two labelings of the same items.

    Computed from the pair-counting contingency table. When the correction
    denominator degenerates (both partitions trivial) the result is 1.0 for
    identical partitions and 0.0 otherwise.
    """
    if len(gold) != len(pred):
        raise ValueError(f"length mismatch: {len(gold)} vs {len(pred)}")
    n = len(gold)
    if n == 0:
        raise ValueError("empty labelings")
    identical = _canonical_partition(gold) == _canonical_partition(pred)
    if n == 1:
        return 1.0
    contingency = Counter(zip(gold, pred))
    a_sizes = Counter(gold)
    b_sizes = Counter(pred)
    index = sum(c * (c - 1) // 2 for c in contingency.values())
    sum_a = sum(c * (c - 1) // 2 for c in a_sizes.values())
    sum_b = sum(c * (c - 1) // 2 for c in b_sizes.values())
    pairs = n * (n - 1) // 2
    # Exact integer test for Max == Expected: (sum_a+sum_b)/2 == sum_a*sum_b/pairs
    if (sum_a + sum_b) * pairs == 2 * sum_a * sum_b:
        return 1.0 if identical else 0.0
    expected = sum_a * sum_b / pairs
    max_index = (sum_a + sum_b) / 2
    return (index - expected) / (max_index - expected)


@dataclass
class EvalReport:
    """Per-target ARI with context counts plus the two aggregates."""

    per_word: dict[str, tuple[float, int]]
    aggregate_weighted: float
    aggregate_macro: float
    n_excluded: int = 0

    def to_tsv(self) -> str:
        lines = ["word\tn\tari"]
        for word in sorted(self.per_word):
            score, n = self.per_word[word]
            lines.append(f"{word}\t{n}\t{score:.6f}")
        lines.append(f"aggregate_weighted\t\t{self.aggregate_weighted:.6f}")
        lines.append(f"aggregate_macro\t\t{self.aggregate_macro:.6f}")
        return "\n".join(lines) + "\n"


def evaluate(dataset: Dataset, labels: Labeling) -> EvalReport:
    """Score a labeling against gold senses, per target word and aggregated.

    Instances without a gold sense are excluded from scoring and counted;
    a gold-labeled instance missing from the labeling is an error.
    """
    per_word: dict[str, tuple[float, int]] = {}
    n_excluded = 0
    for target, idxs in dataset.by_target.items():
        gold_list: list[str] = []
        pred_list: list[str] = []
        for i in idxs:
            inst = dataset.instances[i]
            if inst.gold_sense is None:
                n_excluded += 1
                continue
            if inst.context_id not in labels.assignments:
                raise ValueError(
                    f"gold-labeled context {inst.context_id!r} has no prediction"
                )
            gold_list.append(inst.gold_sense)
            pred_list.append(labels.assignments[inst.context_id])
        if gold_list:
            per_word[target] = (ari(gold_list, pred_list), len(gold_list))
    if not per_word:
        raise ValueError("dataset has no gold senses to evaluate against")
    total = sum(n for _, n in per_word.values())
    weighted = sum(score * n for score, n in per_word.values()) / total
    macro = sum(score for score, _ in per_word.values()) / len(per_word)
    return EvalReport(per_word=per_word, aggregate_weighted=weighted,
                      aggregate_macro=macro, n_excluded=n_excluded)


def confusion_matrix(gold: Sequence[Hashable], pred: Sequence[Hashable]
                     ) -> tuple[list, list, np.ndarray]:
    """Co-occurrence counts: rows are sorted gold senses, columns sorted predictions."""
    if len(gold) != len(pred):
        raise ValueError(f"length mismatch: {len(gold)} vs {len(pred)}")
    row_labels = sorted(set(gold), key=str)
    col_labels = sorted(set(pred), key=str)
    row_idx = {lab: i for i, lab in enumerate(row_labels)}
    col_idx = {lab: j for j, lab in enumerate(col_labels)}
    counts = np.zeros((len(row_labels), len(col_labels)), dtype=np.int64)
    for g, p in zip(gold, pred):
        counts[row_idx[g], col_idx[p]] += 1
    return row_labels, col_labels, counts


def confusion_csv(row_labels: list, col_labels: list, counts: np.ndarray) -> str:
    lines = ["gold\\pred," + ",".join(str(c) for c in col_labels)]
    for lab, row in zip(row_labels, counts):
        lines.append(str(lab) + "," + ",".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"
