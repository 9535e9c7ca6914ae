"""Translation-based sense labeling.

Contexts are grouped by the majority translation of their target word,
optionally normalized with the Porter stemmer, from an offline sidecar file
``context_id<TAB>translation[,translation...]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import DataError
from .evaluate import Labeling
from .porter import porter_stem

STEMMER_ALGORITHMS = ("identity", "porter")


@dataclass
class TranslationRecord:
    context_id: str
    translations: list[str]


@dataclass
class Stemmer:
    algorithm: str = "identity"

    def __post_init__(self):
        if self.algorithm not in STEMMER_ALGORITHMS:
            raise ValueError(f"unknown stemmer {self.algorithm!r}")

    def stem(self, word: str) -> str:
        if self.algorithm == "identity":
            return word
        return porter_stem(word)


def normalize_translation(text: str, stemmer: Stemmer) -> str:
    """Lowercase, then stem token-wise; spacing is preserved verbatim."""
    return " ".join(stemmer.stem(part) for part in text.lower().split(" "))


def label_by_translation(records: Sequence[TranslationRecord],
                         stemmer: Stemmer) -> Labeling:
    """Label each context with its most frequent normalized translation.

    Frequency ties break to the lexicographically smallest form. Contexts
    sharing a label form one induced sense cluster.
    """
    assignments: dict[str, str] = {}
    for rec in records:
        if not rec.translations:
            raise ValueError(f"record {rec.context_id!r} has no translations")
        counts = Counter(normalize_translation(t, stemmer) for t in rec.translations)
        top = max(counts.values())
        assignments[rec.context_id] = min(f for f, c in counts.items() if c == top)
    return Labeling(assignments=assignments)


def read_translations(path: str | Path) -> list[TranslationRecord]:
    """Parse the sidecar TSV; translations are comma-separated in column 2."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(
                    f"{path}: line {lineno}: expected 'context_id<TAB>translations'"
                )
            translations = [t.strip() for t in parts[1].split(",") if t.strip()]
            if not translations:
                raise DataError(f"{path}: line {lineno}: no translations")
            records.append(TranslationRecord(context_id=parts[0],
                                             translations=translations))
    return records
