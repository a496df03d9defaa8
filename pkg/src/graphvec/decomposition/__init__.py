"""Graph decomposition: substructure pattern induction and vocabularies."""

from .anonymous_walks import (DEFAULT_WALK_BUDGET, WalkBudgetError, anonymize,
                              anonymous_walk_corpus, aw_extension,
                              exact_walk_count)
from .graphlets import (canonical_form, enumerate_connected_subsets,
                        graphlet_corpus, graphlet_extension, graphlet_token,
                        induced_adjacency, sample_graphlet_nodes)
from .shortest_paths import SP_EXTENSION, sp_corpus
from .vocabulary import (PatternDocument, Vocabulary, VocabularyError,
                         build_vocabulary, load_documents, prune_min_count,
                         save_documents)
from .weisfeiler_lehman import wl_corpus, wl_extension

__all__ = [
    "DEFAULT_WALK_BUDGET", "PatternDocument", "SP_EXTENSION", "Vocabulary",
    "VocabularyError", "WalkBudgetError", "anonymize", "anonymous_walk_corpus",
    "aw_extension", "build_vocabulary", "canonical_form",
    "enumerate_connected_subsets", "exact_walk_count", "graphlet_corpus",
    "graphlet_extension", "graphlet_token", "induced_adjacency",
    "load_documents", "prune_min_count", "sample_graphlet_nodes",
    "save_documents", "sp_corpus", "wl_corpus", "wl_extension",
]
