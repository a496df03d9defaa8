"""Graphlet (small connected induced subgraph) pattern induction.

Node sets are drawn with a connected growth sampler, reduced to an
unlabeled canonical form by exact permutation minimization of the
upper-triangular adjacency bit-string (degree classes prune the scan
without losing exactness), and emitted as ``g{k}_{hex}`` tokens.
"""

from __future__ import annotations

import logging
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from ..graphs import Graph, GraphDataset, connected_components
from .vocabulary import PatternDocument, Vocabulary, build_vocabulary
from ._parallel import map_graphs

log = logging.getLogger(__name__)

MAX_SAMPLE_ATTEMPTS = 50


def graphlet_extension(size: int) -> str:
    """Document file extension for size-`size` graphlets, e.g. ``glt7``."""
    return f"glt{size}"


def canonical_form(adj: Sequence[Sequence[int]]) -> int:
    """Canonical integer for a small adjacency matrix, invariant under
    node permutation and distinct for non-isomorphic graphs.

    The value is the minimum upper-triangular bit-string over all node
    orderings that sort degrees ascending. Restricting to degree-sorted
    orderings prunes the k! scan; the set of such orderings is itself a
    graph invariant, so the minimum stays a complete isomorphism invariant.
    """
    k = len(adj)
    if k <= 1:
        return 0
    degrees = [sum(row) for row in adj]
    by_degree = sorted(range(k), key=lambda v: degrees[v])
    groups: list[list[int]] = []
    for v in by_degree:
        if groups and degrees[groups[-1][-1]] == degrees[v]:
            groups[-1].append(v)
        else:
            groups.append([v])
    best = None
    for combo in product(*(permutations(grp) for grp in groups)):
        order = [v for part in combo for v in part]
        bits = 0
        for i in range(k - 1):
            row = adj[order[i]]
            for j in range(i + 1, k):
                bits = (bits << 1) | row[order[j]]
        if best is None or bits < best:
            best = bits
    return best


def induced_adjacency(g: Graph, nodes: Sequence[int]) -> list[list[int]]:
    """Dense adjacency matrix of the subgraph induced by `nodes`."""
    index = {v: i for i, v in enumerate(nodes)}
    adj = [[0] * len(nodes) for _ in nodes]
    for v in nodes:
        iv = index[v]
        for u in g.adjacency[v]:
            iu = index.get(u)
            if iu is not None:
                adj[iv][iu] = 1
    return adj


def graphlet_token(g: Graph, nodes: Sequence[int],
                   cache: dict | None = None) -> str:
    """Canonical token for the subgraph of `g` induced by `nodes`."""
    adj = induced_adjacency(g, nodes)
    if cache is None:
        canon = canonical_form(adj)
    else:
        # two node sets with equal degree-sorted matrices are isomorphic,
        # so the pre-ordered bit-string is a safe memoization key
        k = len(adj)
        degrees = [sum(row) for row in adj]
        order = sorted(range(k), key=lambda v: degrees[v])
        bits = 0
        for i in range(k - 1):
            row = adj[order[i]]
            for j in range(i + 1, k):
                bits = (bits << 1) | row[order[j]]
        key = (k, tuple(degrees[v] for v in order), bits)
        canon = cache.get(key)
        if canon is None:
            canon = canonical_form(adj)
            cache[key] = canon
    return f"g{len(nodes)}_{canon:x}"


def _grow_connected(g: Graph, size: int, rng: np.random.Generator) -> list[int]:
    """One growth attempt: random start, then uniform neighbor-of-set picks."""
    start = int(rng.integers(g.n))
    chosen = {start}
    candidates = set(g.adjacency[start])
    while len(chosen) < size and candidates:
        ordered = sorted(candidates)
        nxt = ordered[int(rng.integers(len(ordered)))]
        chosen.add(nxt)
        candidates.update(g.adjacency[nxt])
        candidates.difference_update(chosen)
    return sorted(chosen)


def sample_graphlet_nodes(g: Graph, size: int,
                          rng: np.random.Generator) -> list[int]:
    """Sample a connected node set of `size` nodes, falling back to the
    largest size achieved when 50 attempts cannot reach it."""
    best: list[int] = []
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        nodes = _grow_connected(g, size, rng)
        if len(nodes) == size:
            return nodes
        if len(nodes) > len(best):
            best = nodes
    return best


def graphlet_corpus(dataset: GraphDataset, size: int, num_samples: int,
                    seed: int,
                    threads: int = 1) -> tuple[list[PatternDocument], Vocabulary]:
    """Sample `num_samples` connected graphlets of `size` nodes per graph.

    Deterministic at any thread count: graph index i uses its own
    generator seeded seed XOR i. Graphs whose largest component has fewer
    than two nodes produce an empty document (with a warning).
    """
    if not 2 <= size <= 8:
        raise ValueError(f"graphlet size must be in [2, 8], got {size}")
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    cache: dict = {}  # canonicalization memo; value writes are idempotent

    def tokens_for(item) -> list[str]:
        gi, g = item
        if max(len(c) for c in connected_components(g)) < 2:
            log.warning("graph %s has no component with >= 2 nodes; "
                        "empty graphlet document", g.graph_id)
            return []
        rng = np.random.default_rng(seed ^ gi)
        return [graphlet_token(g, sample_graphlet_nodes(g, size, rng), cache)
                for _ in range(num_samples)]

    token_lists = map_graphs(tokens_for, list(enumerate(dataset.graphs)), threads)
    documents = [PatternDocument(g.graph_id, tokens)
                 for g, tokens in zip(dataset.graphs, token_lists)]
    return documents, build_vocabulary(documents)


def enumerate_connected_subsets(g: Graph, size: int) -> Iterator[tuple[int, ...]]:
    """Enumerate every connected induced `size`-node subgraph exactly once
    (ESU enumeration), in deterministic order."""
    if size == 1:
        for v in g.nodes:
            yield (v,)
        return

    def extend(sub: list[int], ext: list[int], root: int,
               sub_closed: set[int]) -> Iterator[tuple[int, ...]]:
        if len(sub) == size:
            yield tuple(sorted(sub))
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            exclusive = [u for u in g.adjacency[w]
                         if u > root and u not in sub_closed]
            yield from extend(sub + [w], sorted(set(ext) | set(exclusive)), root,
                              sub_closed | {w} | set(g.adjacency[w]))
        return

    for v in g.nodes:
        ext0 = sorted(u for u in g.adjacency[v] if u > v)
        yield from extend([v], ext0, v, {v} | set(g.adjacency[v]))
