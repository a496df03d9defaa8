"""Synthetic graph datasets for demos, smoke tests and benchmarks.

None of the public benchmark archives ship with the library, so this module
provides deterministic generators: plain random graphs, and a two-class
classification dataset whose classes differ in both topology and label
statistics. It can also serialize a dataset back into the TU-Dortmund
flat-file layout, which is the inverse of ingestion and handy for
round-trip tests and pipeline demos.
"""

from __future__ import annotations

import os

import numpy as np

from .graphs import Graph, GraphDataset


def random_graph(rng: np.random.Generator, n: int, edge_prob: float,
                 labels: tuple[str, ...] = ("A", "B"),
                 graph_id: str = "0") -> Graph:
    """Erdos-Renyi G(n, p) with labels drawn uniformly from `labels`."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < edge_prob]
    node_labels = [labels[rng.integers(len(labels))] for _ in range(n)]
    return Graph(graph_id, node_labels, edges)


def _ring_graph(rng, n, gid):
    # cycle plus a couple of random chords; labels lean towards "C"
    edges = [(i, (i + 1) % n) for i in range(n)]
    for _ in range(2):
        u, v = rng.integers(n), rng.integers(n)
        if u != v:
            edges.append((min(u, v), max(u, v)))
    labels = ["C" if rng.random() < 0.8 else "N" for _ in range(n)]
    return Graph(gid, labels, edges)


def _tree_graph(rng, n, gid):
    # random recursive tree; labels lean towards "O"
    edges = [(int(rng.integers(v)), v) for v in range(1, n)]
    labels = ["O" if rng.random() < 0.8 else "C" for _ in range(n)]
    return Graph(gid, labels, edges)


def two_class_dataset(num_graphs: int = 120, seed: int = 7,
                      name: str = "SYNTH") -> GraphDataset:
    """Two-class benchmark: ring-like graphs (class 0) vs random trees (class 1).

    Classes are imbalanced 60/40 so the majority baseline is non-trivial.
    Deterministic in `seed`.
    """
    rng = np.random.default_rng(seed)
    graphs, labels = [], {}
    for i in range(num_graphs):
        gid = str(i)
        n = int(rng.integers(8, 17))
        if i % 5 < 3:
            graphs.append(_ring_graph(rng, n, gid))
            labels[gid] = 0
        else:
            graphs.append(_tree_graph(rng, n, gid))
            labels[gid] = 1
    return GraphDataset(name, graphs, labels)


def write_tu_dortmund(dataset: GraphDataset, out_dir: str,
                      include_node_labels: bool = True) -> str:
    """Serialize `dataset` into the TU-Dortmund flat-file layout.

    Writes ``<out_dir>/<name>/<name>_A.txt``, ``_graph_indicator.txt``,
    ``_graph_labels.txt`` and (optionally) ``_node_labels.txt`` using
    1-indexed global node ids with each undirected edge listed twice.
    Returns the directory containing the files.
    """
    name = dataset.name
    target = os.path.join(out_dir, name)
    os.makedirs(target, exist_ok=True)
    offset = 0
    a_lines, indicator_lines, node_label_lines = [], [], []
    for gi, g in enumerate(dataset.graphs, start=1):
        for v in g.nodes:
            indicator_lines.append(f"{gi}\n")
            node_label_lines.append(f"{g.node_labels[v]}\n")
        for u, v in g.edges():
            a_lines.append(f"{offset + u + 1}, {offset + v + 1}\n")
            a_lines.append(f"{offset + v + 1}, {offset + u + 1}\n")
        offset += g.n
    with open(os.path.join(target, f"{name}_A.txt"), "w") as fh:
        fh.writelines(a_lines)
    with open(os.path.join(target, f"{name}_graph_indicator.txt"), "w") as fh:
        fh.writelines(indicator_lines)
    with open(os.path.join(target, f"{name}_graph_labels.txt"), "w") as fh:
        fh.writelines(f"{dataset.class_labels[g.graph_id]}\n" for g in dataset.graphs)
    if include_node_labels:
        with open(os.path.join(target, f"{name}_node_labels.txt"), "w") as fh:
            fh.writelines(node_label_lines)
    return target
