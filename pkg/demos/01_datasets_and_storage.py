"""Dataset ingestion and per-graph storage.

Benchmark repositories ship a dataset as a handful of flat files: one
global edge list, a node->graph indicator, per-graph class labels, and
(optionally) per-node labels. graphvec converts that layout into one GEXF
file per graph plus a .Labels manifest, which is easier to inspect and
lets every later stage address graphs individually.

Run:  python demos/01_datasets_and_storage.py
"""

import os
import tempfile

from graphvec.dataset_io import format_dataset, load_dataset
from graphvec.graphs import Graph, GraphDataset
from graphvec.synthetic import two_class_dataset, write_tu_dortmund

workdir = tempfile.mkdtemp(prefix="graphvec_demo_")
print(f"working in {workdir}\n")

# A real run would start from a downloaded archive, e.g. MUTAG unpacked
# into org_data/MUTAG/. No benchmark data ships with this repository, so
# we synthesize a dataset and write it in the same flat-file layout first.
dataset = two_class_dataset(num_graphs=24, seed=1, name="DEMO")
source_dir = write_tu_dortmund(dataset, os.path.join(workdir, "org_data"))
print("flat files:", sorted(os.listdir(source_dir)))

# Convert to per-graph GEXF storage + manifest.
manifest = format_dataset(source_dir, "DEMO", os.path.join(workdir, "data"))
print(f"\nwrote {len(manifest.entries)} graphs; first entries:")
for rel_path, label in manifest.entries[:3]:
    print(f"  {rel_path}  class={label}")

print("\none graph on disk looks like this:")
with open(os.path.join(workdir, "data", manifest.entries[0][0])) as fh:
    print("\n".join(fh.read().splitlines()[:12]))
    print("  ...")

# Loading returns the in-memory dataset: every graph with dense node ids,
# sorted adjacency, one string label per node.
loaded = load_dataset(os.path.join(workdir, "data", "DEMO.Labels"))
g = loaded.graphs[0]
print(f"\nloaded {len(loaded)} graphs, {loaded.num_classes} classes")
print(f"graph {g.graph_id}: n={g.n}, m={g.num_edges}, "
      f"labels={sorted(set(g.node_labels))}")

# Datasets without node labels get degree labeling: each node is labeled
# with its degree, so label-driven decompositions still apply.
unlabeled = GraphDataset("NOLAB", [Graph("0", ["x", "x", "x"],
                                          [(0, 1), (1, 2), (0, 2)])], {"0": 0})
nl_dir = write_tu_dortmund(unlabeled, os.path.join(workdir, "org_nolab"),
                           include_node_labels=False)
format_dataset(nl_dir, "NOLAB", os.path.join(workdir, "data_nolab"))
relabeled = load_dataset(os.path.join(workdir, "data_nolab", "NOLAB.Labels"))
print(f"\ntriangle without node labels is degree-labeled: "
      f"{relabeled.graphs[0].node_labels}")
