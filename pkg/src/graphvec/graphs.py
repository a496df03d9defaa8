"""Core graph containers shared by every decomposition method.

Graphs are undirected, simple, node-labeled, with dense integer node ids
0..n-1 and ascending adjacency lists, so every traversal the library does is
deterministic. Instances are immutable after construction and safe to share.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Invalid graph construction or operation input."""


class Graph:
    """A node-labeled undirected simple graph.

    Parameters
    ----------
    graph_id:
        Dataset-unique identifier (by convention the gexf file stem).
    node_labels:
        One non-empty string label per node; index position = node id.
    edges:
        Iterable of (u, v) pairs. Duplicate pairs and reversed duplicates
        are collapsed; self-loops are rejected.
    """

    __slots__ = ("graph_id", "node_labels", "adjacency")

    def __init__(self, graph_id: str, node_labels: Sequence[str],
                 edges: Iterable[tuple[int, int]]):
        self.graph_id = str(graph_id)
        self.node_labels = tuple(str(l) for l in node_labels)
        n = len(self.node_labels)
        for v, label in enumerate(self.node_labels):
            if not label:
                raise GraphError(f"graph {graph_id!r}: node {v} has an empty label")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"graph {graph_id!r}: edge ({u},{v}) out of range 0..{n - 1}")
            if u == v:
                raise GraphError(f"graph {graph_id!r}: self-loop at node {u}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in neighbor_sets)

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def nodes(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def label(self, v: int) -> str:
        return self.node_labels[v]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending."""
        return [(u, v) for u in self.nodes for v in self.adjacency[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.graph_id == other.graph_id
                and self.node_labels == other.node_labels
                and self.adjacency == other.adjacency)

    def __hash__(self):
        return hash((self.graph_id, self.node_labels, self.adjacency))

    def __repr__(self):
        return f"Graph(id={self.graph_id!r}, n={self.n}, m={self.num_edges})"


class GraphDataset:
    """An ordered collection of graphs with integer class labels.

    Class labels must already be remapped to the contiguous range 0..C-1
    (ingestion does this); every graph must have a label and a unique id.
    """

    __slots__ = ("name", "graphs", "class_labels")

    def __init__(self, name: str, graphs: Sequence[Graph],
                 class_labels: Mapping[str, int]):
        self.name = name
        self.graphs = tuple(graphs)
        self.class_labels = dict(class_labels)
        ids = [g.graph_id for g in self.graphs]
        if len(set(ids)) != len(ids):
            raise GraphError(f"dataset {name!r}: duplicate graph ids")
        missing = [i for i in ids if i not in self.class_labels]
        if missing:
            raise GraphError(f"dataset {name!r}: graphs without class label: {missing[:5]}")
        classes = sorted(set(self.class_labels[i] for i in ids))
        if classes and classes != list(range(len(classes))):
            raise GraphError(
                f"dataset {name!r}: class labels {classes} are not contiguous from 0")

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    @property
    def num_classes(self) -> int:
        return len(set(self.class_labels.values()))

    def labels_in_order(self) -> list[int]:
        """Class labels aligned with the graph ordering."""
        return [self.class_labels[g.graph_id] for g in self.graphs]


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    """Hop distances from `source` to every reachable node.

    Unreachable nodes are omitted; distance of the source is 0.
    """
    if not 0 <= source < g.n:
        raise GraphError(f"unknown source node {source} for graph {g.graph_id!r}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adjacency[u]:
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest node."""
    seen = [False] * g.n
    comps = []
    for start in g.nodes:
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def permute(g: Graph, perm: Sequence[int] | Mapping[int, int]) -> Graph:
    """Relabel nodes of `g` through the bijection old id -> perm[old id].

    The result is isomorphic to `g`; labels follow their nodes.
    """
    if isinstance(perm, Mapping):
        mapping = [perm.get(v) for v in g.nodes]
    else:
        mapping = [perm[v] if v < len(perm) else None for v in g.nodes]
    if (len(mapping) != g.n or any(m is None for m in mapping)
            or sorted(mapping) != list(g.nodes)):
        raise GraphError(f"perm is not a bijection on 0..{g.n - 1}")
    labels = [""] * g.n
    for v in g.nodes:
        labels[mapping[v]] = g.node_labels[v]
    edges = [(mapping[u], mapping[v]) for u, v in g.edges()]
    return Graph(g.graph_id, labels, edges)
