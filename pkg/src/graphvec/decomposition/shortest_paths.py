"""Shortest-path pattern induction.

Every connected unordered node pair {u, v} contributes one token built
from the two endpoint labels (sorted, so the pair is orderless) and the
hop distance between them: ``sp_{min}_{max}_{d}``. Pairs that span
disconnected components contribute nothing.
"""

from __future__ import annotations

from ..graphs import Graph, GraphDataset, bfs_distances
from .vocabulary import PatternDocument, Vocabulary, build_vocabulary
from ._parallel import map_graphs

SP_EXTENSION = "spp"


def _graph_tokens(g: Graph) -> list[str]:
    tokens = []
    for u in g.nodes:
        dist = bfs_distances(g, u)
        lu = g.node_labels[u]
        for v in range(u + 1, g.n):
            d = dist.get(v)
            if d is None:
                continue
            a, b = sorted((lu, g.node_labels[v]))
            tokens.append(f"sp_{a}_{b}_{d}")
    return tokens


def sp_corpus(dataset: GraphDataset,
              threads: int = 1) -> tuple[list[PatternDocument], Vocabulary]:
    """Induce all-pairs shortest-path tokens for every graph.

    Documents are ordered by (u, v) ascending; on a connected graph the
    document length is n * (n - 1) / 2. Per-graph work is pure, so it may
    run on `threads` workers; the result is identical at any thread count.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    documents = [PatternDocument(g.graph_id, tokens)
                 for g, tokens in zip(dataset.graphs,
                                      map_graphs(_graph_tokens, dataset.graphs,
                                                 threads))]
    return documents, build_vocabulary(documents)
