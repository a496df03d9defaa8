"""Whole-graph embeddings: PV-DBOW and PV-DM over pattern documents.

Instead of embedding the patterns, the paragraph-vector shapes learn one
row per GRAPH: PV-DBOW makes the graph row predict each of its patterns;
PV-DM averages the graph row with a context window of patterns to predict
a target pattern. Either way the graph matrix ends up encoding pattern
co-occurrence and can feed any vector-based classifier directly.

Run:  python demos/05_whole_graph_embeddings.py
"""

import numpy as np

from graphvec.corpus import (NegativeSampler, build_pvdbow_corpus,
                             build_pvdm_corpus)
from graphvec.decomposition import anonymous_walk_corpus, wl_corpus
from graphvec.embedding import (PVDBOW, PVDM, EmbeddingModel, TrainConfig,
                                train)
from graphvec.evaluate import cross_validate, majority_baseline
from graphvec.synthetic import two_class_dataset

dataset = two_class_dataset(num_graphs=80, seed=41)
labels = dataset.labels_in_order()
print(f"{len(dataset)} graphs, baseline {majority_baseline(labels):.3f}\n")

# ---- graph2vec-style: WL patterns + PV-DBOW -----------------------------
docs, vocab = wl_corpus(dataset, 2)
corpus = build_pvdbow_corpus(docs, vocab)
model = EmbeddingModel(PVDBOW, len(dataset), len(vocab), dim=32, seed=0)
sampler = NegativeSampler.from_vocabulary(vocab, seed=1)
config = TrainConfig(epochs=60, batch_size=1000, initial_lr=0.1,
                     num_negatives=10, seed=2)
trace = train(model, corpus, sampler, config)
print(f"PV-DBOW on WL-2 documents ({len(corpus)} pairs): "
      f"loss {trace[0]:.3f} -> {trace[-1]:.3f}")
report = cross_validate(model.target, labels, n_folds=10, repeats=10,
                        k_neighbors=1, seed=0)
print(report.to_text(row_label="WL-2 + PV-DBOW d=32"))

# ---- anonymous-walk-style: AW patterns + PV-DM --------------------------
# Windows slide over the walk document; short windows are PAD-filled and
# the PAD slots are masked out of the context average.
aw_docs, aw_vocab = anonymous_walk_corpus(dataset, length=4)
aw_corpus = build_pvdm_corpus(aw_docs, aw_vocab, window=4)
aw_model = EmbeddingModel(PVDM, len(dataset), len(aw_vocab), dim=32, seed=3)
aw_sampler = NegativeSampler.from_vocabulary(aw_vocab, seed=4)
aw_config = TrainConfig(epochs=4, batch_size=10000, initial_lr=0.1,
                        num_negatives=10, window=4, seed=5)
aw_trace = train(aw_model, aw_corpus, aw_sampler, aw_config)
print(f"\nPV-DM on anonymous-walk documents ({len(aw_corpus)} samples): "
      f"loss {aw_trace[0]:.3f} -> {aw_trace[-1]:.3f}")
aw_report = cross_validate(aw_model.target, labels, n_folds=10, repeats=10,
                           k_neighbors=1, seed=0)
print(aw_report.to_text(row_label="AW-4 + PV-DM d=32"))

# embeddings are just matrices: cluster structure is visible numerically
by_class = [aw_model.target[np.asarray(labels) == c].mean(axis=0)
            for c in (0, 1)]
print(f"\nclass-centroid distance in PV-DM space: "
      f"{np.linalg.norm(by_class[0] - by_class[1]):.3f}")
