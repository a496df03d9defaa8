"""Anonymous-walk pattern induction.

All walks of exactly `length` edges are enumerated depth-first from every
start node; a walk is anonymized by replacing each node with the 1-based
index of its first occurrence, e.g. the walk (x, y, x, z) becomes
``aw_1-2-1-3``. Consecutive nodes are always distinct because graphs are
simple; revisits are allowed.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from ..graphs import Graph, GraphDataset
from .vocabulary import PatternDocument, Vocabulary, build_vocabulary
from ._parallel import map_graphs

DEFAULT_WALK_BUDGET = 10 ** 8


class WalkBudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the per-graph walk budget."""


def aw_extension(length: int) -> str:
    """Document file extension for length-`length` walks, e.g. ``awe10``."""
    return f"awe{length}"


def anonymize(walk: Sequence[int]) -> str:
    """Map node identities to first-occurrence indices: aw_1-2-1-3 style."""
    first_seen: dict[int, int] = {}
    indices = []
    for v in walk:
        if v not in first_seen:
            first_seen[v] = len(first_seen) + 1
        indices.append(first_seen[v])
    return "aw_" + "-".join(str(i) for i in indices)


def exact_walk_count(g: Graph, length: int) -> int:
    """Number of walks with exactly `length` edges, over all start nodes.

    Dynamic program: walks ending at v with t edges = sum over neighbors
    of walks with t-1 edges; O(length * |E|), no enumeration.
    """
    counts = [1] * g.n
    for _ in range(length):
        counts = [sum(counts[u] for u in g.adjacency[v]) for v in g.nodes]
    return sum(counts)


def _walks_from(g: Graph, start: int, length: int) -> Iterator[str]:
    """Anonymized tokens of all `length`-edge walks starting at `start`,
    in DFS order with neighbors ascending."""
    first_seen = {start: 1}
    sequence = [1]
    walk_end = [start]

    def rec(remaining: int) -> Iterator[str]:
        if remaining == 0:
            yield "aw_" + "-".join(map(str, sequence))
            return
        for u in g.adjacency[walk_end[-1]]:
            fresh = u not in first_seen
            if fresh:
                first_seen[u] = len(first_seen) + 1
            sequence.append(first_seen[u])
            walk_end.append(u)
            yield from rec(remaining - 1)
            walk_end.pop()
            sequence.pop()
            if fresh:
                del first_seen[u]

    yield from rec(length)


def anonymous_walk_corpus(dataset: GraphDataset, length: int,
                          budget: int = DEFAULT_WALK_BUDGET,
                          threads: int = 1
                          ) -> tuple[list[PatternDocument], Vocabulary]:
    """Exhaustively enumerate anonymous walks of `length` edges per graph.

    Aborts with `WalkBudgetError` before enumerating any graph whose exact
    walk count exceeds `budget`; exhaustive enumeration on dense graphs is
    exponential in `length` and failing loudly beats silent truncation.
    """
    if length < 1:
        raise ValueError(f"walk length must be >= 1, got {length}")
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    for g in dataset.graphs:
        total = exact_walk_count(g, length)
        if total > budget:
            raise WalkBudgetError(
                f"graph {g.graph_id}: {total} walks of length {length} exceed "
                f"the budget of {budget}; lower the walk length or raise the budget")

    def tokens_for(g: Graph) -> list[str]:
        tokens = []
        for start in g.nodes:
            tokens.extend(_walks_from(g, start, length))
        return tokens

    token_lists = map_graphs(tokens_for, dataset.graphs, threads)
    documents = [PatternDocument(g.graph_id, tokens)
                 for g, tokens in zip(dataset.graphs, token_lists)]
    return documents, build_vocabulary(documents)
