"""The four substructure decompositions, on graphs small enough to read.

Stage 1 of the toolkit turns each graph into a document of discrete
pattern tokens. Four pattern families are available; all of them are
isomorphism-invariant, so two structurally identical graphs always
produce the same token multiset.

Run:  python demos/02_pattern_decompositions.py
"""

from collections import Counter

from graphvec.decomposition import (anonymous_walk_corpus, graphlet_corpus,
                                    sp_corpus, wl_corpus)
from graphvec.graphs import Graph, GraphDataset

# two molecules-in-miniature: a labeled triangle and a labeled path
triangle = Graph("triangle", ["C", "C", "O"], [(0, 1), (1, 2), (0, 2)])
path = Graph("path", ["C", "C", "O"], [(0, 1), (1, 2)])
dataset = GraphDataset("demo", [triangle, path],
                       {"triangle": 0, "path": 1})

print("=== Weisfeiler-Lehman rooted subgraphs (depth 2) ===")
# Each node is iteratively relabeled with its neighborhood signature; the
# token wl{h}_{id} names the compressed depth-h pattern rooted at a node.
docs, vocab = wl_corpus(dataset, depth=2)
for doc in docs:
    print(f"  {doc.graph_id:<9} {doc.tokens}")
print(f"  shared vocabulary: {len(vocab)} patterns "
      f"(same wl0 ids reused across graphs)")

print("\n=== shortest paths ===")
# One token per connected node pair: endpoint labels (sorted) + distance.
docs, _ = sp_corpus(dataset)
for doc in docs:
    print(f"  {doc.graph_id:<9} {doc.tokens}")

print("\n=== graphlets (k=3, 4 samples per graph) ===")
# Connected induced subgraphs reduced to a canonical form; the hex suffix
# encodes the canonical adjacency bits, so g3_7 is the triangle and g3_3
# the 3-path, regardless of which nodes were sampled.
docs, _ = graphlet_corpus(dataset, size=3, num_samples=4, seed=0)
for doc in docs:
    print(f"  {doc.graph_id:<9} {doc.tokens}")

print("\n=== anonymous walks (length 3, exhaustive) ===")
# Walks with node identities replaced by first-occurrence indices; type
# counts grow like Bell numbers (1, 2, 5, 15, 52 for lengths 1..5).
docs, vocab = anonymous_walk_corpus(dataset, length=3)
for doc in docs:
    histogram = Counter(doc.tokens)
    print(f"  {doc.graph_id:<9} {len(doc.tokens)} walks, "
          f"types {dict(histogram)}")

print("\nwalk-type vocabulary:", vocab.tokens)
