"""Graph similarity matrices over pattern frequency vectors.

Frequency vectors are L1-normalized pattern histograms kept sparse (the
WL vocabulary can get large). Kernels: plain linear gram, RBF with a
median-heuristic default bandwidth, and the deep kernel x_i' M x_j with
M = S S' for learned substructure embeddings S, computed as the gram of
the projected vectors so M is never materialized. Every kernel is exactly
symmetric: each pair is computed once and mirrored.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .decomposition.vocabulary import PatternDocument, Vocabulary

log = logging.getLogger(__name__)


@dataclass
class FrequencyVector:
    """Sparse L1-normalized pattern histogram of one graph."""

    graph_id: str
    values: dict[int, float]


@dataclass
class KernelMatrix:
    """Symmetric graph-by-graph similarity matrix with its id index."""

    graph_ids: list[str]
    values: np.ndarray

    def save_csv(self, path: str) -> None:
        """Header row of graph ids, then one row of values per graph."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(self.graph_ids) + "\n")
            for row in self.values:
                fh.write(",".join(repr(float(x)) for x in row) + "\n")

    @classmethod
    def load_csv(cls, path: str) -> "KernelMatrix":
        with open(path, encoding="utf-8") as fh:
            ids = fh.readline().rstrip("\n").split(",")
            values = np.loadtxt(fh, delimiter=",", ndmin=2)
        if values.shape != (len(ids), len(ids)):
            raise ValueError(f"{path}: matrix shape {values.shape} does not "
                             f"match {len(ids)} graph ids")
        return cls(ids, values)


def save_frequency_vectors(vectors: list[FrequencyVector], path: str) -> None:
    """JSON sparse maps: {graph_id: {pattern id: frequency}}."""
    payload = {v.graph_id: {str(t): val for t, val in v.values.items()}
               for v in vectors}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_frequency_vectors(path: str) -> list[FrequencyVector]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [FrequencyVector(gid, {int(t): val for t, val in values.items()})
            for gid, values in payload.items()]


def frequency_vectors(documents: list[PatternDocument],
                      vocab: Vocabulary) -> list[FrequencyVector]:
    """Per-graph token counts divided by document length.

    An empty document yields the zero vector (with a warning) so the graph
    keeps its row in the kernel.
    """
    vectors = []
    for doc in documents:
        if not doc.tokens:
            log.warning("graph %s has an empty document; zero frequency vector",
                        doc.graph_id)
            vectors.append(FrequencyVector(doc.graph_id, {}))
            continue
        counts: dict[int, int] = {}
        for token in doc.tokens:
            tid = vocab.id_of(token)
            counts[tid] = counts.get(tid, 0) + 1
        length = len(doc.tokens)
        vectors.append(FrequencyVector(
            doc.graph_id, {tid: c / length for tid, c in sorted(counts.items())}))
    return vectors


def vectors_to_csr(vectors: list[FrequencyVector],
                   dim: int | None = None) -> sparse.csr_matrix:
    rows, cols, vals = [], [], []
    for i, vec in enumerate(vectors):
        for tid, value in vec.values.items():
            rows.append(i)
            cols.append(tid)
            vals.append(value)
    if dim is None:
        dim = max(cols) + 1 if cols else 1
    return sparse.csr_matrix((vals, (rows, cols)),
                             shape=(len(vectors), dim))


def _mirror(matrix: np.ndarray) -> np.ndarray:
    """Exact symmetry: keep the upper triangle, mirror it down."""
    upper = np.triu(matrix)
    return upper + np.triu(matrix, 1).T


def linear_kernel(vectors: list[FrequencyVector]) -> KernelMatrix:
    """K[i, j] = <v_i, v_j>."""
    x = vectors_to_csr(vectors)
    gram = (x @ x.T).toarray().astype(np.float64)
    return KernelMatrix([v.graph_id for v in vectors], _mirror(gram))


def median_heuristic_gamma(vectors: list[FrequencyVector]) -> float:
    """1 / (2 * median^2) over the pairwise Euclidean distances."""
    gram = linear_kernel(vectors).values
    sq = np.maximum(_squared_distances(gram), 0.0)
    iu = np.triu_indices_from(sq, k=1)
    if len(iu[0]) == 0:
        return 1.0
    median = float(np.median(np.sqrt(sq[iu])))
    if median == 0.0:
        log.warning("median pairwise distance is 0; falling back to gamma=1.0")
        return 1.0
    return 1.0 / (2.0 * median * median)


def _squared_distances(gram: np.ndarray) -> np.ndarray:
    diag = np.diag(gram)
    return diag[:, None] + diag[None, :] - 2.0 * gram


def rbf_kernel(vectors: list[FrequencyVector],
               gamma: float | None = None) -> KernelMatrix:
    """K[i, j] = exp(-gamma * ||v_i - v_j||^2); gamma defaults to the
    median heuristic. Diagonal is exactly 1."""
    if gamma is None:
        gamma = median_heuristic_gamma(vectors)
    if gamma <= 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    gram = linear_kernel(vectors).values
    sq = np.maximum(_squared_distances(gram), 0.0)
    values = np.exp(-gamma * sq)
    np.fill_diagonal(values, 1.0)
    return KernelMatrix([v.graph_id for v in vectors], _mirror(values))


def deep_kernel(vectors: list[FrequencyVector],
                substructure_embeddings: np.ndarray) -> KernelMatrix:
    """K[i, j] = <S' v_i, S' v_j> for substructure embedding rows S.

    Algebraically x_i' (S S') x_j, but the |V| x |V| similarity matrix is
    never formed; the frequency vectors are projected to d dimensions
    first, which keeps the kernel symmetric PSD by construction.
    """
    s = np.asarray(substructure_embeddings, dtype=np.float64)
    max_id = max((max(v.values) for v in vectors if v.values), default=-1)
    if max_id >= s.shape[0]:
        raise ValueError(
            f"substructure embeddings have {s.shape[0]} rows but vectors "
            f"reference pattern id {max_id}")
    x = vectors_to_csr(vectors, dim=s.shape[0])
    projected = x @ s
    gram = projected @ projected.T
    return KernelMatrix([v.graph_id for v in vectors], _mirror(gram))
