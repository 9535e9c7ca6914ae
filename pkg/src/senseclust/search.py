"""Deterministic joint grid search over weighting powers and clustering
hyperparameters, with heatmap and linkage-sweep exports.

Context vectors are cached per power combination and agglomerative merge
sequences are reused across the cluster-count grid, so the full default
space stays cheap. Results are ranked by train ARI descending with ties
broken by ascending config serialization, which makes the search output
independent of evaluation order and of the worker count.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .cluster import (LINKAGES, METRICS, ClusteringConfig, affinity_propagation,
                      cut_merges, dendrogram)
from .dataset import Dataset
from .embeddings import EmbeddingModel
from .errors import DataError
from .evaluate import Labeling, evaluate
from .vectorize import vectorize_dataset
from .weighting import POWER_GRID, Chi2Table, IdfTable, WeightingConfig

AUTO_PREFERENCE = "auto"


@dataclass
class SearchSpace:
    """Grids defining the Cartesian search space, per algorithm."""

    power_grid: tuple[float, ...] = POWER_GRID
    k_grid: tuple[int, ...] = tuple(range(1, 15))
    linkages: tuple[str, ...] = LINKAGES
    metrics: tuple[str, ...] = ("euclidean",)
    damping_grid: tuple[float, ...] = (0.5,)
    preference_grid: tuple = (AUTO_PREFERENCE,)
    algorithms: tuple[str, ...] = ("agglomerative", "affinity_propagation")

    def __post_init__(self):
        if not self.power_grid or not self.algorithms:
            raise ValueError("power_grid and algorithms must be non-empty")
        for p in self.power_grid:
            WeightingConfig(p_tfidf=p, p_chi2=p)  # range check
        if "agglomerative" in self.algorithms:
            if not (self.k_grid and self.linkages and self.metrics):
                raise ValueError("agglomerative grids must be non-empty")
            for k in self.k_grid:
                if not 1 <= k <= 14:
                    raise ValueError(f"k_grid value {k} outside 1..14")
            for lk in self.linkages:
                if lk not in LINKAGES:
                    raise ValueError(f"unknown linkage {lk!r}")
            for m in self.metrics:
                if m not in METRICS:
                    raise ValueError(f"unknown metric {m!r}")
        if "affinity_propagation" in self.algorithms:
            if not (self.damping_grid and self.preference_grid):
                raise ValueError("affinity propagation grids must be non-empty")
            for d in self.damping_grid:
                if not 0.5 <= d < 1.0:
                    raise ValueError(f"damping {d} outside [0.5, 1)")
            for p in self.preference_grid:
                if p != AUTO_PREFERENCE and not -20.0 <= float(p) <= 5.0:
                    raise ValueError(f"preference {p} outside [-20, 5]")
        for algo in self.algorithms:
            if algo not in ("agglomerative", "affinity_propagation"):
                raise ValueError(f"unknown algorithm {algo!r}")
        skipped = self._skipped_ward_metrics()
        if skipped:
            warnings.warn(
                "ward linkage is euclidean-only; excluding ward with "
                + ", ".join(skipped), stacklevel=2,
            )

    def _skipped_ward_metrics(self) -> list[str]:
        if "agglomerative" not in self.algorithms or "ward" not in self.linkages:
            return []
        return [m for m in self.metrics if m != "euclidean"]

    def _linkage_metric_pairs(self) -> list[tuple[str, str]]:
        pairs = []
        for lk in self.linkages:
            for m in self.metrics:
                if lk == "ward" and m != "euclidean":
                    continue
                pairs.append((lk, m))
        return pairs

    def size(self) -> int:
        """Number of valid configurations (per-algorithm spaces summed)."""
        n_powers = len(self.power_grid) ** 2
        total = 0
        if "agglomerative" in self.algorithms:
            total += n_powers * len(self.k_grid) * len(self._linkage_metric_pairs())
        if "affinity_propagation" in self.algorithms:
            total += n_powers * len(self.damping_grid) * len(self.preference_grid)
        return total


class SearchEntry(NamedTuple):
    clustering: ClusteringConfig
    weighting: WeightingConfig
    train_ari: float


@dataclass
class SearchResult:
    ranked: list[SearchEntry] = field(default_factory=list)

    @property
    def best(self) -> SearchEntry:
        return self.ranked[0]


def serialize_config(clustering: ClusteringConfig, weighting: WeightingConfig) -> str:
    """Canonical single-line form; also the deterministic tie-break key."""
    if clustering.algorithm == "agglomerative":
        fields = {
            "algorithm": clustering.algorithm,
            "k": str(clustering.n_clusters),
            "linkage": clustering.linkage,
            "metric": clustering.metric,
            "p_chi2": repr(weighting.p_chi2),
            "p_tfidf": repr(weighting.p_tfidf),
        }
    else:
        fields = {
            "algorithm": clustering.algorithm,
            "damping": repr(clustering.damping),
            "p_chi2": repr(weighting.p_chi2),
            "p_tfidf": repr(weighting.p_tfidf),
            "preference": ("auto" if clustering.preference is None
                           else repr(clustering.preference)),
        }
    return " ".join(f"{k}={v}" for k, v in sorted(fields.items()))


def _score(dataset: Dataset, labels_by_word: dict[str, tuple[list[str], np.ndarray]]
           ) -> float:
    assignments: dict[str, str] = {}
    for _, (ids, labels) in labels_by_word.items():
        for cid, lab in zip(ids, labels):
            assignments[cid] = str(int(lab))
    return evaluate(dataset, Labeling(assignments)).aggregate_weighted


def grid_search(dataset: Dataset, model: EmbeddingModel, idf: IdfTable,
                chi2: Chi2Table, space: SearchSpace, jobs: int = 1) -> SearchResult:
    """Exhaustively score every configuration in the space on train ARI."""
    if not any(inst.gold_sense is not None for inst in dataset.instances):
        raise ValueError("grid search needs gold senses in the dataset")
    power_pairs = [(pt, pc) for pt in space.power_grid for pc in space.power_grid]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # zero-vector warnings repeat 36x here
        vectors = {
            (pt, pc): vectorize_dataset(dataset, model, idf, chi2,
                                        WeightingConfig(p_tfidf=pt, p_chi2=pc))
            for (pt, pc) in power_pairs
        }

    tasks = []
    if "agglomerative" in space.algorithms:
        for (pt, pc) in power_pairs:
            for linkage, metric in space._linkage_metric_pairs():
                tasks.append(("agglomerative", pt, pc, linkage, metric))
    if "affinity_propagation" in space.algorithms:
        for (pt, pc) in power_pairs:
            for damping in space.damping_grid:
                for pref in space.preference_grid:
                    tasks.append(("affinity_propagation", pt, pc, damping, pref))

    def run_task(task) -> list[SearchEntry]:
        entries = []
        wcfg = WeightingConfig(p_tfidf=task[1], p_chi2=task[2])
        by_word = vectors[(task[1], task[2])]
        if task[0] == "agglomerative":
            _, _, _, linkage, metric = task
            merges = {w: dendrogram(X, linkage, metric)
                      for w, (_, X) in by_word.items()}
            for k in space.k_grid:
                labeled = {
                    w: (ids, cut_merges(merges[w], len(ids), min(k, len(ids))))
                    for w, (ids, _) in by_word.items()
                }
                ccfg = ClusteringConfig(algorithm="agglomerative", n_clusters=k,
                                        linkage=linkage, metric=metric)
                entries.append(SearchEntry(ccfg, wcfg, _score(dataset, labeled)))
        else:
            _, _, _, damping, pref = task
            ccfg = ClusteringConfig(
                algorithm="affinity_propagation", damping=damping,
                preference=None if pref == AUTO_PREFERENCE else float(pref),
            )
            labeled = {}
            for w, (ids, X) in by_word.items():
                res = affinity_propagation(X, ccfg)
                labeled[w] = (ids, res.labels)
            entries.append(SearchEntry(ccfg, wcfg, _score(dataset, labeled)))
        return entries

    results: list[list[SearchEntry]] = [[] for _ in tasks]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for i, entries in enumerate(pool.map(run_task, tasks)):
                results[i] = entries
    else:
        for i, task in enumerate(tasks):
            results[i] = run_task(task)

    ranked = [e for chunk in results for e in chunk]
    ranked.sort(key=lambda e: (-e.train_ari,
                               serialize_config(e.clustering, e.weighting)))
    assert len(ranked) == space.size()
    return SearchResult(ranked=ranked)


def export_power_heatmap(result: SearchResult,
                         fixed_clustering: ClusteringConfig | None = None
                         ) -> list[tuple[float, float, float]]:
    """(p_tfidf, p_chi2, ari) rows, one per power combination.

    By default the ARI is maximized over all other grid dimensions; passing
    ``fixed_clustering`` restricts the rows to that single clustering config.
    """
    best: dict[tuple[float, float], float] = {}
    for entry in result.ranked:
        if fixed_clustering is not None and entry.clustering != fixed_clustering:
            continue
        key = (entry.weighting.p_tfidf, entry.weighting.p_chi2)
        if key not in best or entry.train_ari > best[key]:
            best[key] = entry.train_ari
    return [(pt, pc, best[(pt, pc)]) for (pt, pc) in sorted(best)]


def export_k_linkage_sweep(result: SearchResult) -> list[tuple[int, str, float]]:
    """(n_clusters, linkage, ari) rows maximized over the other dimensions."""
    best: dict[tuple[int, str], float] = {}
    for entry in result.ranked:
        if entry.clustering.algorithm != "agglomerative":
            continue
        key = (entry.clustering.n_clusters, entry.clustering.linkage)
        if key not in best or entry.train_ari > best[key]:
            best[key] = entry.train_ari
    if not best:
        raise ValueError("no agglomerative configurations in the search result")
    return [(k, lk, best[(k, lk)]) for (k, lk) in sorted(best)]


def heatmap_csv(rows: Sequence[tuple[float, float, float]]) -> str:
    lines = ["p_tfidf,p_chi2,ari"]
    lines += [f"{pt!r},{pc!r},{a:.6f}" for pt, pc, a in rows]
    return "\n".join(lines) + "\n"


def sweep_csv(rows: Sequence[tuple[int, str, float]]) -> str:
    lines = ["n_clusters,linkage,ari"]
    lines += [f"{k},{lk},{a:.6f}" for k, lk, a in rows]
    return "\n".join(lines) + "\n"


def ranked_csv(result: SearchResult) -> str:
    lines = ["config,train_ari"]
    for entry in result.ranked:
        lines.append(f"{serialize_config(entry.clustering, entry.weighting)},"
                     f"{entry.train_ari:.6f}")
    return "\n".join(lines) + "\n"


def parse_space_file(path: str | Path) -> SearchSpace:
    """Read a SearchSpace from ``key = value`` lines.

    Lists are comma-separated; ``k_grid`` also accepts ``lo..hi`` ranges;
    ``preference_grid`` accepts numbers and the word ``auto``. Blank lines
    and ``#`` comments are ignored. Unset keys keep their defaults.
    """
    kwargs: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise DataError(f"{path}: line {lineno}: expected 'key = value'")
            key = key.strip()
            items = [v.strip() for v in value.split(",") if v.strip()]
            if key == "power_grid":
                kwargs[key] = tuple(float(v) for v in items)
            elif key == "k_grid":
                ks: list[int] = []
                for v in items:
                    if ".." in v:
                        lo, hi = v.split("..")
                        ks.extend(range(int(lo), int(hi) + 1))
                    else:
                        ks.append(int(v))
                kwargs[key] = tuple(ks)
            elif key in ("linkages", "metrics", "algorithms"):
                kwargs[key] = tuple(items)
            elif key == "damping_grid":
                kwargs[key] = tuple(float(v) for v in items)
            elif key == "preference_grid":
                kwargs[key] = tuple(
                    AUTO_PREFERENCE if v == AUTO_PREFERENCE else float(v)
                    for v in items
                )
            else:
                raise DataError(f"{path}: line {lineno}: unknown key {key!r}")
    try:
        return SearchSpace(**kwargs)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
