"""Word sense induction by clustering weighted embedding averages of contexts."""

from .cluster import (ClusteringConfig, ClusterResult, affinity_propagation,
                      agglomerative, cluster, dendrogram, pairwise_distances)
from .dataset import ContextInstance, Dataset, parse_dataset, tokenize, write_predictions
from .embeddings import (EmbeddingModel, FrequencyTable, load_embeddings,
                         load_frequency_table, lookup, norm_frequency_report,
                         write_embeddings)
from .errors import DataError
from .evaluate import EvalReport, Labeling, ari, confusion_matrix, evaluate
from .mt_label import Stemmer, TranslationRecord, label_by_translation, read_translations
from .porter import porter_stem
from .search import (SearchResult, SearchSpace, export_k_linkage_sweep,
                     export_power_heatmap, grid_search, serialize_config)
from .vectorize import ContextVector, exclude_target, vectorize, vectorize_dataset
from .weighting import (Chi2Table, IdfTable, WeightingConfig, build_chi2,
                        build_idf, chi2_statistic, combine, tfidf_weight)

__version__ = "0.1.0"

__all__ = [
    "Chi2Table", "ClusterResult", "ClusteringConfig", "ContextInstance",
    "ContextVector", "DataError", "Dataset", "EmbeddingModel", "EvalReport",
    "FrequencyTable", "IdfTable", "Labeling", "SearchResult", "SearchSpace",
    "Stemmer", "TranslationRecord", "WeightingConfig", "affinity_propagation",
    "agglomerative", "ari", "build_chi2", "build_idf", "chi2_statistic",
    "cluster", "combine", "confusion_matrix", "dendrogram", "evaluate",
    "exclude_target", "export_k_linkage_sweep", "export_power_heatmap",
    "grid_search", "label_by_translation", "load_embeddings",
    "load_frequency_table", "lookup", "norm_frequency_report", "parse_dataset",
    "pairwise_distances", "porter_stem", "read_translations",
    "serialize_config", "tfidf_weight", "tokenize", "vectorize",
    "vectorize_dataset", "write_embeddings", "write_predictions",
]
