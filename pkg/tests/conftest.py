import os

import numpy as np
import pytest

from graphvec.graphs import Graph, GraphDataset
from graphvec.synthetic import random_graph


def make_dataset(graphs, labels=None, name="test"):
    if labels is None:
        labels = {g.graph_id: 0 for g in graphs}
    return GraphDataset(name, graphs, labels)


def random_graph_pool(seed, count, max_n, edge_prob=0.3, min_n=2):
    rng = np.random.default_rng(seed)
    return [random_graph(rng, int(rng.integers(min_n, max_n + 1)), edge_prob,
                         graph_id=str(i)) for i in range(count)]


def triangle(gid="t", labels=("1", "1", "1")):
    return Graph(gid, list(labels), [(0, 1), (1, 2), (0, 2)])


def path_graph(gid, labels):
    n = len(labels)
    return Graph(gid, list(labels), [(i, i + 1) for i in range(n - 1)])


def complete_graph(gid, n, label="x"):
    return Graph(gid, [label] * n,
                 [(i, j) for i in range(n) for j in range(i + 1, n)])


def mutag_raw_dir():
    """Directory with MUTAG_A.txt etc., or None when unavailable."""
    candidates = []
    env = os.environ.get("GRAPHVEC_TU_DATA")
    if env:
        candidates.append(os.path.join(env, "MUTAG"))
    candidates.append(os.path.join(os.path.dirname(__file__), "..", "data", "MUTAG"))
    for cand in candidates:
        if os.path.exists(os.path.join(cand, "MUTAG_A.txt")):
            return os.path.abspath(cand)
    return None


MUTAG_SKIP_REASON = (
    "MUTAG raw files not available: this environment cannot download the "
    "TU-Dortmund archive (no general network access; the package mirror has "
    "no dataset package). Place MUTAG_*.txt under <repo>/data/MUTAG/ or set "
    "GRAPHVEC_TU_DATA to run this criterion; see notes in the README.")


@pytest.fixture
def mutag_dir():
    path = mutag_raw_dir()
    if path is None:
        pytest.skip(MUTAG_SKIP_REASON)
    return path
