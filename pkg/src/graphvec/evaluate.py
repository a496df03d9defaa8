"""Repeated stratified cross-validation with a kernel/embedding k-NN.

The classifier is a deliberately dependency-free nearest-neighbor vote:
distances come either from a precomputed kernel, d(i, j) =
sqrt(max(0, K_ii + K_jj - 2 K_ij)), or directly from embedding rows.
Reports carry every fold accuracy plus mean and population std, the shape
benchmark tables are written in.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .kernels import KernelMatrix

log = logging.getLogger(__name__)


@dataclass
class CVReport:
    """Fold accuracies per repeat plus summary statistics and config echo."""

    accuracies: list[list[float]]  # [repeat][fold]
    mean: float
    std: float
    config: dict

    @property
    def flat(self) -> list[float]:
        return [a for repeat in self.accuracies for a in repeat]

    def to_dict(self) -> dict:
        return {"accuracies": self.accuracies, "mean": self.mean,
                "std": self.std, "config": self.config}

    def save_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    def to_text(self, row_label: str = "result") -> str:
        """Aligned one-row table: mean +/- std over folds x repeats."""
        folds = len(self.accuracies[0]) if self.accuracies else 0
        header = (f"{'method':<24}{'accuracy':>16}  "
                  f"({len(self.accuracies)}x{folds}-fold CV, "
                  f"std over all folds, population)")
        value = f"{100 * self.mean:.2f} +/- {100 * self.std:.2f}"
        return f"{header}\n{row_label:<24}{value:>16}"


def make_report(accuracies: list[list[float]], config: dict) -> CVReport:
    flat = np.asarray([a for rep in accuracies for a in rep], dtype=np.float64)
    return CVReport(accuracies, float(flat.mean()),
                    float(flat.std()),  # population std
                    config)


def stratified_folds(labels, n_folds: int, seed: int = 0
                     ) -> list[tuple[np.ndarray, np.ndarray]]:
    """Partition indices into `n_folds` test folds, per-class balanced.

    Per-class counts across folds differ by at most one. Falls back to a
    plain shuffled split (with a warning) when some class has fewer than
    `n_folds` members.
    """
    labels = np.asarray(labels)
    n = len(labels)
    if n_folds < 2:
        raise ValueError(f"need n_folds >= 2, got {n_folds}")
    if n_folds > n:
        raise ValueError(f"n_folds={n_folds} exceeds {n} samples")
    rng = np.random.default_rng(seed)
    fold_members: list[list[int]] = [[] for _ in range(n_folds)]
    classes, counts = np.unique(labels, return_counts=True)
    if counts.min() < n_folds:
        log.warning("class with %d members < %d folds; "
                    "falling back to non-stratified folds", counts.min(), n_folds)
        order = rng.permutation(n)
        for pos, idx in enumerate(order):
            fold_members[pos % n_folds].append(int(idx))
    else:
        start = 0
        for cls in classes:
            members = rng.permutation(np.flatnonzero(labels == cls))
            for pos, idx in enumerate(members):
                fold_members[(start + pos) % n_folds].append(int(idx))
            start += len(members)  # rotate so remainders spread over folds
    folds = []
    everything = set(range(n))
    for members in fold_members:
        test = np.asarray(sorted(members), dtype=np.intp)
        train = np.asarray(sorted(everything - set(members)), dtype=np.intp)
        folds.append((train, test))
    return folds


def _kernel_distances(values: np.ndarray, test: np.ndarray,
                      train: np.ndarray) -> np.ndarray:
    diag = np.diag(values)
    sq = diag[test, None] + diag[None, train] - 2.0 * values[np.ix_(test, train)]
    return np.sqrt(np.maximum(sq, 0.0))


def _classify(distances: np.ndarray, train_labels: np.ndarray,
              k_neighbors: int) -> np.ndarray:
    """Majority vote over the k nearest columns of each distance row.

    Candidates are ordered by (distance, class id, train position) so that
    degenerate all-equidistant inputs resolve to the lowest class id; vote
    ties break by smallest summed distance, then lowest class id.
    """
    k = min(k_neighbors, distances.shape[1])
    predictions = np.empty(len(distances), dtype=train_labels.dtype)
    for i, row in enumerate(distances):
        order = sorted(range(len(row)),
                       key=lambda j: (row[j], train_labels[j], j))[:k]
        votes: dict[int, int] = {}
        dist_sum: dict[int, float] = {}
        for j in order:
            cls = int(train_labels[j])
            votes[cls] = votes.get(cls, 0) + 1
            dist_sum[cls] = dist_sum.get(cls, 0.0) + float(row[j])
        predictions[i] = min(votes,
                             key=lambda c: (-votes[c], dist_sum[c], c))
    return predictions


def _fold_accuracies(distance_fn, labels: np.ndarray,
                     folds, k_neighbors: int) -> list[float]:
    accs = []
    for train, test in folds:
        distances = distance_fn(test, train)
        predicted = _classify(distances, labels[train], k_neighbors)
        accs.append(float(np.mean(predicted == labels[test])))
    return accs


def knn_evaluate(kernel: KernelMatrix, labels, folds,
                 k_neighbors: int = 1) -> CVReport:
    """k-NN over kernel-induced distances; one repeat over `folds`."""
    labels = np.asarray(labels)
    if len(labels) != len(kernel.graph_ids):
        raise ValueError(f"{len(labels)} labels for "
                         f"{len(kernel.graph_ids)} kernel rows")
    accs = _fold_accuracies(
        lambda test, train: _kernel_distances(kernel.values, test, train),
        labels, folds, k_neighbors)
    return make_report([accs], {"classifier": "knn", "k_neighbors": k_neighbors,
                                "folds": len(folds), "repeats": 1,
                                "distance": "kernel"})


def embedding_evaluate(embeddings: np.ndarray, labels, folds,
                       k_neighbors: int = 1) -> CVReport:
    """Euclidean k-NN directly on embedding rows; same contract as
    `knn_evaluate` with the gram matrix of the embeddings."""
    embeddings = np.asarray(embeddings, dtype=np.float64)
    labels = np.asarray(labels)
    if len(labels) != len(embeddings):
        raise ValueError(f"{len(labels)} labels for {len(embeddings)} embeddings")

    def distance_fn(test, train):
        diff = embeddings[test][:, None, :] - embeddings[train][None, :, :]
        return np.sqrt((diff * diff).sum(axis=2))

    accs = _fold_accuracies(distance_fn, labels, folds, k_neighbors)
    return make_report([accs], {"classifier": "knn", "k_neighbors": k_neighbors,
                                "folds": len(folds), "repeats": 1,
                                "distance": "euclidean"})


def cross_validate(source, labels, n_folds: int = 10, repeats: int = 10,
                   k_neighbors: int = 1, seed: int = 0) -> CVReport:
    """Repeated k-fold CV; repeat r derives its folds from seed + r.

    `source` is either a KernelMatrix or an embedding matrix.
    """
    labels = np.asarray(labels)
    per_repeat = []
    for r in range(repeats):
        folds = stratified_folds(labels, n_folds, seed=seed + r)
        if isinstance(source, KernelMatrix):
            report = knn_evaluate(source, labels, folds, k_neighbors)
        else:
            report = embedding_evaluate(source, labels, folds, k_neighbors)
        per_repeat.append(report.accuracies[0])
    return make_report(per_repeat, {
        "classifier": "knn", "k_neighbors": k_neighbors, "folds": n_folds,
        "repeats": repeats, "seed": seed, "stratified": True,
        "distance": "kernel" if isinstance(source, KernelMatrix) else "euclidean"})


def majority_baseline(labels) -> float:
    """Accuracy of always predicting the most frequent class."""
    _, counts = np.unique(np.asarray(labels), return_counts=True)
    return float(counts.max() / counts.sum())
