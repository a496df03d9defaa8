"""Benchmark-dataset ingestion and per-graph GEXF storage.

The TU-Dortmund collection distributes a dataset as a handful of flat files
(global edge list, node->graph indicator, graph labels, optional node
labels). `format_dataset` converts that layout into one GEXF file per graph
plus a `<name>.Labels` manifest, and `load_dataset` reads the result back.
Graphs without node labels get each node labeled with its degree.
"""

from __future__ import annotations

import logging
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .graphs import Graph, GraphDataset

log = logging.getLogger(__name__)

GEXF_XMLNS = "http://www.gexf.net/1.2draft"


class IngestionError(ValueError):
    """Missing or structurally unusable input dataset files."""


class DataFormatError(ValueError):
    """Corrupt or inconsistent data inside an otherwise present file."""


@dataclass
class DatasetManifest:
    """Ordered (graph file, class label) listing for one formatted dataset."""

    dataset_name: str
    entries: list[tuple[str, int]]  # path relative to the manifest directory

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for rel_path, label in self.entries:
                fh.write(f"{rel_path} {label}\n")

    @classmethod
    def load(cls, path: str) -> "DatasetManifest":
        name = os.path.splitext(os.path.basename(path))[0]
        entries = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    rel_path, label = line.rsplit(" ", 1)
                    entries.append((rel_path, int(label)))
                except ValueError as exc:
                    raise DataFormatError(
                        f"{path}:{lineno}: malformed manifest line {line!r}") from exc
        return cls(name, entries)


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _parse_dortmund(input_dir: str, name: str):
    """Parse the four flat files into per-graph (labels, edges) lists."""
    base = os.path.join(input_dir, name)
    paths = {key: f"{base}_{key}.txt"
             for key in ("A", "graph_indicator", "graph_labels", "node_labels")}
    for key in ("A", "graph_indicator", "graph_labels"):
        if not os.path.exists(paths[key]):
            raise IngestionError(f"missing mandatory file {paths[key]}")

    indicator = [int(x) for x in _read_lines(paths["graph_indicator"])]
    num_graphs = max(indicator) if indicator else 0
    # global 1-indexed node id -> (graph index 0-based, local 0-based id)
    local_of: list[tuple[int, int]] = []
    sizes = [0] * num_graphs
    for gi in indicator:
        local_of.append((gi - 1, sizes[gi - 1]))
        sizes[gi - 1] += 1

    edge_sets: list[set[tuple[int, int]]] = [set() for _ in range(num_graphs)]
    with open(paths["A"], encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                a, b = (int(part) for part in line.split(","))
            except ValueError as exc:
                raise DataFormatError(
                    f"{paths['A']}:{lineno}: malformed edge line {line!r}") from exc
            ga, u = local_of[a - 1]
            gb, v = local_of[b - 1]
            if ga != gb:
                raise DataFormatError(
                    f"{paths['A']}:{lineno}: edge ({a},{b}) joins graphs "
                    f"{ga + 1} and {gb + 1}")
            if u != v:
                edge_sets[ga].add((min(u, v), max(u, v)))

    raw_graph_labels = _read_lines(paths["graph_labels"])
    if len(raw_graph_labels) != num_graphs:
        raise DataFormatError(
            f"{paths['graph_labels']}: {len(raw_graph_labels)} labels for "
            f"{num_graphs} graphs")

    if os.path.exists(paths["node_labels"]):
        raw_node_labels = _read_lines(paths["node_labels"])
        if len(raw_node_labels) != len(indicator):
            raise DataFormatError(
                f"{paths['node_labels']}: {len(raw_node_labels)} labels for "
                f"{len(indicator)} nodes")
        node_labels: list[list[str]] = [[""] * sz for sz in sizes]
        for raw, (gi, v) in zip(raw_node_labels, local_of):
            node_labels[gi][v] = raw
    else:
        log.info("%s: no node labels, labeling every node by its degree", name)
        node_labels = [[""] * sz for sz in sizes]
        for gi in range(num_graphs):
            degree = [0] * sizes[gi]
            for u, v in edge_sets[gi]:
                degree[u] += 1
                degree[v] += 1
            node_labels[gi] = [str(d) for d in degree]

    # class labels remapped to 0..C-1 in first-seen order
    remap: dict[str, int] = {}
    class_labels = []
    for raw in raw_graph_labels:
        if raw not in remap:
            remap[raw] = len(remap)
        class_labels.append(remap[raw])
    return node_labels, edge_sets, class_labels


def write_gexf(graph: Graph, path: str) -> None:
    """Write one graph as GEXF 1.2draft with a single string node attribute."""
    root = ET.Element("gexf", {"xmlns": GEXF_XMLNS, "version": "1.2"})
    xgraph = ET.SubElement(root, "graph",
                           {"defaultedgetype": "undirected", "mode": "static"})
    attrs = ET.SubElement(xgraph, "attributes", {"class": "node"})
    ET.SubElement(attrs, "attribute",
                  {"id": "0", "title": "Label", "type": "string"})
    xnodes = ET.SubElement(xgraph, "nodes")
    for v in graph.nodes:
        xnode = ET.SubElement(xnodes, "node",
                              {"id": str(v), "label": graph.node_labels[v]})
        vals = ET.SubElement(xnode, "attvalues")
        ET.SubElement(vals, "attvalue", {"for": "0", "value": graph.node_labels[v]})
    xedges = ET.SubElement(xgraph, "edges")
    for ei, (u, v) in enumerate(graph.edges()):
        ET.SubElement(xedges, "edge",
                      {"id": str(ei), "source": str(u), "target": str(v)})
    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(path, encoding="UTF-8", xml_declaration=True)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def read_gexf(path: str, graph_id: str | None = None) -> Graph:
    """Parse a GEXF file written by `write_gexf` (unknown elements ignored)."""
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise DataFormatError(f"{path}: not parseable as XML: {exc}") from exc
    if graph_id is None:
        graph_id = os.path.splitext(os.path.basename(path))[0]

    label_attr_ids = {"0"}
    for elem in tree.iter():
        if _local_name(elem.tag) == "attribute" and elem.get("title") == "Label":
            label_attr_ids.add(elem.get("id", "0"))

    labels_by_id: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    for elem in tree.iter():
        name = _local_name(elem.tag)
        if name == "node":
            try:
                vid = int(elem.get("id"))
            except (TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}: node without integer id") from exc
            label = None
            for sub in elem.iter():
                if (_local_name(sub.tag) == "attvalue"
                        and sub.get("for") in label_attr_ids):
                    label = sub.get("value")
            if label is None:
                label = elem.get("label")
            if label is None:
                raise DataFormatError(f"{path}: node {vid} has no Label attribute")
            labels_by_id[vid] = label
        elif name == "edge":
            try:
                edges.append((int(elem.get("source")), int(elem.get("target"))))
            except (TypeError, ValueError) as exc:
                raise DataFormatError(f"{path}: edge with non-integer endpoint") from exc

    n = len(labels_by_id)
    if sorted(labels_by_id) != list(range(n)):
        raise DataFormatError(f"{path}: node ids are not dense 0..{n - 1}")
    return Graph(graph_id, [labels_by_id[v] for v in range(n)], edges)


def format_dataset(input_dir: str, dataset_name: str,
                   output_dir: str) -> DatasetManifest:
    """Convert a TU-Dortmund flat-file dataset into per-graph GEXF storage.

    Writes ``<output_dir>/<dataset_name>/<gid>.gexf`` (gid 0-indexed, in the
    original graph order) and the ``<output_dir>/<dataset_name>.Labels``
    manifest; returns the manifest.
    """
    node_labels, edge_sets, class_labels = _parse_dortmund(input_dir, dataset_name)
    graph_dir = os.path.join(output_dir, dataset_name)
    os.makedirs(graph_dir, exist_ok=True)
    entries = []
    for gid, (labels, edges) in enumerate(zip(node_labels, edge_sets)):
        graph = Graph(str(gid), labels, sorted(edges))
        rel_path = os.path.join(dataset_name, f"{gid}.gexf")
        write_gexf(graph, os.path.join(output_dir, rel_path))
        entries.append((rel_path, class_labels[gid]))
    manifest = DatasetManifest(dataset_name, entries)
    manifest.save(os.path.join(output_dir, f"{dataset_name}.Labels"))
    return manifest


def load_dataset(manifest_path: str) -> GraphDataset:
    """Load a formatted dataset back into memory from its manifest."""
    manifest = DatasetManifest.load(manifest_path)
    base = os.path.dirname(os.path.abspath(manifest_path))
    graphs, class_labels = [], {}
    for rel_path, label in manifest.entries:
        path = os.path.join(base, rel_path)
        if not os.path.exists(path):
            raise IngestionError(f"manifest references missing file {path}")
        graph = read_gexf(path)
        graphs.append(graph)
        class_labels[graph.graph_id] = label
    return GraphDataset(manifest.dataset_name, graphs, class_labels)
