"""Weisfeiler-Lehman rooted-subgraph pattern induction.

Iterative node relabeling: the depth-0 label of a node is its raw string
label; at depth h >= 1 a node's signature is its previous label together
with the sorted multiset of its neighbors' previous labels. Signatures are
compressed through a single dataset-global dictionary so that equal
depth-h neighborhoods receive equal dense ids across every graph, and each
node emits one token per depth: ``wl{h}_{id}``.
"""

from __future__ import annotations

from ..graphs import GraphDataset
from .vocabulary import PatternDocument, Vocabulary, build_vocabulary


def wl_corpus(dataset: GraphDataset, depth: int,
              include_depth0: bool = True
              ) -> tuple[list[PatternDocument], Vocabulary]:
    """Induce WL rooted-subgraph tokens up to `depth` for every graph.

    Each document is the concatenation over h = 0..depth of the per-node
    tokens in node-id order, so its length is exactly n * (depth + 1)
    (n * depth with `include_depth0` off).
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if not include_depth0 and depth == 0:
        raise ValueError("include_depth0=False with depth=0 produces no tokens")

    # dataset-global compression: raw label strings at depth 0, then
    # (own id, sorted neighbor ids) signatures; ids dense in
    # first-encounter order over graphs in dataset order, nodes ascending
    compression: dict = {}

    def compress(key) -> int:
        if key not in compression:
            compression[key] = len(compression)
        return compression[key]

    doc_tokens: list[list[str]] = [[] for _ in dataset.graphs]
    current: list[list[int]] = []
    for gi, g in enumerate(dataset.graphs):
        ids = [compress(g.node_labels[v]) for v in g.nodes]
        current.append(ids)
        if include_depth0:
            doc_tokens[gi].extend(f"wl0_{i}" for i in ids)

    for h in range(1, depth + 1):
        nxt: list[list[int]] = []
        for gi, g in enumerate(dataset.graphs):
            prev = current[gi]
            ids = [compress((prev[v], tuple(sorted(prev[u] for u in g.adjacency[v]))))
                   for v in g.nodes]
            nxt.append(ids)
            doc_tokens[gi].extend(f"wl{h}_{i}" for i in ids)
        current = nxt

    documents = [PatternDocument(g.graph_id, tokens)
                 for g, tokens in zip(dataset.graphs, doc_tokens)]
    return documents, build_vocabulary(documents)


def wl_extension(depth: int) -> str:
    """Document file extension for a depth-`depth` WL run, e.g. ``wld2``."""
    return f"wld{depth}"
