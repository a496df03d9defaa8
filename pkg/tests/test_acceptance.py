"""Acceptance suite: one test per criterion, each printing a verdict line.

Criteria 7-10 operate on the MUTAG benchmark, which cannot be downloaded
in every environment; those tests skip with an explicit reason when the
raw files are absent (see conftest.MUTAG_SKIP_REASON) and run fully when
`data/MUTAG/` or GRAPHVEC_TU_DATA provides them. Their property content is
mirrored on a deterministic synthetic dataset in the stand-in tests at the
bottom, which always run.
"""

import functools
import hashlib
import json
import math
import time

import numpy as np
import pytest

from graphvec.corpus import NegativeSampler, build_pvdbow_corpus
from graphvec.dataset_io import format_dataset, load_dataset
from graphvec.decomposition import (anonymous_walk_corpus,
                                    enumerate_connected_subsets,
                                    graphlet_token, wl_corpus)
from graphvec.embedding import (MODES, PVDBOW, EmbeddingModel, TrainConfig,
                                batch_loss_and_grads, train)
from graphvec.evaluate import cross_validate, majority_baseline
from graphvec.graphs import Graph, GraphDataset, permute
from graphvec.kernels import (deep_kernel, frequency_vectors, linear_kernel,
                              median_heuristic_gamma, rbf_kernel)
from graphvec.synthetic import random_graph, two_class_dataset

from conftest import complete_graph
from oracles import adjacency_matrix, anonymous_sequences, group_by_isomorphism
from test_embedding import random_instance, reference_loss


def criterion(number, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except pytest.skip.Exception:
                print(f"\ncriterion {number:>2} [{name}]: SKIP "
                      f"(MUTAG data unavailable in this environment)")
                raise
            except BaseException:
                print(f"\ncriterion {number:>2} [{name}]: FAIL")
                raise
            print(f"\ncriterion {number:>2} [{name}]: PASS")
            return result
        return wrapper
    return decorate


@criterion(1, "WL isomorphism invariance")
def test_criterion_1_wl_invariance():
    started = time.perf_counter()
    rng = np.random.default_rng(101)
    graphs, labels = [], {}
    for i in range(100):
        g = random_graph(rng, int(rng.integers(2, 26)), 0.3,
                         labels=("A", "B", "C"), graph_id=f"g{i}")
        twin = permute(g, list(rng.permutation(g.n)))
        twin = Graph(f"g{i}p", twin.node_labels, twin.edges())
        graphs += [g, twin]
        labels[g.graph_id] = labels[twin.graph_id] = 0
    dataset = GraphDataset("pairs", graphs, labels)
    for depth in (0, 1, 2, 3):
        docs, _ = wl_corpus(dataset, depth)
        for i in range(0, len(docs), 2):
            assert sorted(docs[i].tokens) == sorted(docs[i + 1].tokens)
    assert time.perf_counter() - started < 10.0


@criterion(2, "anonymous-walk oracle equivalence")
def test_criterion_2_anonymous_walk_oracle():
    started = time.perf_counter()
    k8 = complete_graph("k8", 8)
    dataset = GraphDataset("K8", [k8], {"k8": 0})
    for length in (1, 2, 3, 4, 5):
        _, vocab = anonymous_walk_corpus(dataset, length)
        oracle_count = len(anonymous_sequences(length))
        assert len(vocab) == oracle_count
    assert time.perf_counter() - started < 30.0


@criterion(3, "graphlet canonicalization vs isomorphism oracle")
def test_criterion_3_graphlet_canonicalization():
    started = time.perf_counter()
    rng = np.random.default_rng(303)
    for i in range(50):
        g = random_graph(rng, int(rng.integers(5, 11)), 0.4, graph_id=str(i))
        for k in (3, 4):
            subsets = list(enumerate_connected_subsets(g, k))
            if not subsets:
                continue
            by_token: dict = {}
            for idx, nodes in enumerate(subsets):
                by_token.setdefault(graphlet_token(g, nodes), []).append(idx)
            matrices = [adjacency_matrix(g, nodes) for nodes in subsets]
            oracle = group_by_isomorphism(matrices)
            assert sorted(map(sorted, by_token.values())) == \
                   sorted(map(sorted, oracle))
    assert time.perf_counter() - started < 60.0


@criterion(4, "gradient check vs finite differences")
def test_criterion_4_gradient_check():
    started = time.perf_counter()
    rng = np.random.default_rng(404)
    h = 1e-5
    worst = 0.0
    for trial in range(100):
        model, batch, negatives = random_instance(rng, MODES[trial % 3])
        _, (trows, tgrad), (crows, cgrad) = batch_loss_and_grads(
            model, batch, negatives)
        for rows, grads, matrix in ((trows, tgrad, model.target),
                                    (crows, cgrad, model.context)):
            for ri, row in enumerate(rows):
                for j in range(model.dim):
                    original = matrix[row, j]
                    matrix[row, j] = original + h
                    up = reference_loss(model, batch, negatives)
                    matrix[row, j] = original - h
                    down = reference_loss(model, batch, negatives)
                    matrix[row, j] = original
                    fd = (up - down) / (2 * h)
                    scale = max(1e-8, abs(fd), abs(grads[ri, j]))
                    worst = max(worst, abs(fd - grads[ri, j]) / scale)
    assert worst <= 1e-4
    assert time.perf_counter() - started < 10.0


@criterion(5, "initial-loss identity (k+1) log 2")
def test_criterion_5_initial_loss_identity():
    rng = np.random.default_rng(505)
    for k in (1, 3, 10):
        batch_size = int(rng.integers(2, 40))
        vocab_size = int(rng.integers(2, 20))
        model = EmbeddingModel(PVDBOW, 7, vocab_size, 16,
                               seed=int(rng.integers(999)))
        batch = (rng.integers(7, size=batch_size),
                 rng.integers(vocab_size, size=batch_size))
        negatives = rng.integers(vocab_size, size=(batch_size, k))
        loss, _, _ = batch_loss_and_grads(model, batch, negatives)
        assert abs(loss / batch_size - (k + 1) * math.log(2)) < 1e-9


@criterion(6, "noise distribution (exact + 3 sigma empirical)")
def test_criterion_6_noise_distribution():
    started = time.perf_counter()
    counts = np.array([5, 1, 2, 1, 1])
    sampler = NegativeSampler(counts, seed=606)
    expected = counts / counts.sum()
    assert np.array_equal(sampler.probabilities, expected)  # count/|D| exact
    n = 10 ** 6
    draws = sampler._draw(n)
    for tid, p in enumerate(expected):
        sigma = math.sqrt(p * (1 - p) / n)
        freq = float((draws == tid).mean())
        assert abs(freq - p) <= 3 * sigma, f"token {tid}: {freq} vs {p}"
    assert time.perf_counter() - started < 5.0


# ------------------------------------------------------------ MUTAG-gated

def _mutag_wl2(mutag_dir, tmp_path):
    format_dataset(mutag_dir, "MUTAG", str(tmp_path / "data"))
    dataset = load_dataset(str(tmp_path / "data" / "MUTAG.Labels"))
    docs, vocab = wl_corpus(dataset, 2)
    return dataset, docs, vocab


def _mutag_baseline(mutag_dir):
    import os
    with open(os.path.join(mutag_dir, "MUTAG_graph_labels.txt")) as fh:
        raw = [line.strip() for line in fh if line.strip()]
    from collections import Counter
    return max(Counter(raw).values()) / len(raw)


@criterion(7, "kernel properties on MUTAG WL-depth-2")
def test_criterion_7_mutag_kernel_properties(mutag_dir, tmp_path):
    started = time.perf_counter()
    _, docs, vocab = _mutag_wl2(mutag_dir, tmp_path)
    vectors = frequency_vectors(docs, vocab)
    rng = np.random.default_rng(707)
    embeddings = rng.normal(size=(len(vocab), 16))
    linear = linear_kernel(vectors).values
    rbf = rbf_kernel(vectors).values
    deep = deep_kernel(vectors, embeddings).values
    for values in (linear, rbf, deep):
        assert np.abs(values - values.T).max() <= 1e-9
    assert np.array_equal(np.diag(rbf), np.ones(len(rbf)))
    for values in (linear, deep):
        eigenvalues = np.linalg.eigvalsh(values)
        assert eigenvalues.min() >= -1e-8 * eigenvalues.max()
    assert time.perf_counter() - started < 60.0


def _run_mutag_kernel_route(mutag_dir, tmp_path):
    dataset, docs, vocab = _mutag_wl2(mutag_dir, tmp_path)
    vectors = frequency_vectors(docs, vocab)
    kernel = rbf_kernel(vectors, gamma=median_heuristic_gamma(vectors))
    labels = dataset.labels_in_order()
    report = cross_validate(kernel, labels, n_folds=10, repeats=10,
                            k_neighbors=1, seed=808)
    artifacts = {
        "kernel": hashlib.sha256(
            json.dumps(kernel.values.tolist()).encode()).hexdigest(),
        "report": hashlib.sha256(
            json.dumps(report.to_dict()).encode()).hexdigest(),
    }
    return report, artifacts


@criterion(8, "MUTAG WL2+RBF 1-NN beats baseline by >= 10 points")
def test_criterion_8_mutag_kernel_replication(mutag_dir, tmp_path):
    started = time.perf_counter()
    report, _ = _run_mutag_kernel_route(mutag_dir, tmp_path)
    baseline = _mutag_baseline(mutag_dir)
    assert abs(baseline - 0.665) < 0.005  # 125 of 188
    # an SVM replication is out of scope; the bar is the majority baseline
    # plus 10 points. No pilot run was possible without the dataset, so no
    # tighter regression bound applies.
    assert report.mean >= baseline + 0.10
    assert time.perf_counter() - started < 180.0


def _run_mutag_graph2vec_route(mutag_dir, tmp_path):
    dataset, docs, vocab = _mutag_wl2(mutag_dir, tmp_path)
    corpus = build_pvdbow_corpus(docs, vocab)
    model = EmbeddingModel(PVDBOW, len(dataset), len(vocab), 32, seed=909)
    sampler = NegativeSampler.from_vocabulary(vocab, seed=910)
    config = TrainConfig(epochs=100, batch_size=1000, initial_lr=0.1,
                         num_negatives=10, seed=911)
    trace = train(model, corpus, sampler, config)
    labels = dataset.labels_in_order()
    report = cross_validate(model.target, labels, n_folds=10, repeats=10,
                            k_neighbors=1, seed=912)
    artifacts = {
        "embeddings": hashlib.sha256(model.target.tobytes()).hexdigest(),
        "trace": hashlib.sha256(json.dumps(trace).encode()).hexdigest(),
        "report": hashlib.sha256(
            json.dumps(report.to_dict()).encode()).hexdigest(),
    }
    return trace, report, artifacts


@criterion(9, "MUTAG Graph2Vec analogue (PV-DBOW d=32)")
def test_criterion_9_mutag_graph2vec(mutag_dir, tmp_path):
    started = time.perf_counter()
    trace, report, _ = _run_mutag_graph2vec_route(mutag_dir, tmp_path)
    moving = np.convolve(trace, np.ones(10) / 10, mode="valid")
    assert all(moving[i + 1] < moving[i] for i in range(len(moving) - 1))
    assert trace[-1] < 0.5 * trace[0]
    baseline = _mutag_baseline(mutag_dir)
    # no pilot was possible without the dataset; primary threshold only
    assert report.mean >= baseline + 0.05
    assert time.perf_counter() - started < 300.0


@criterion(10, "determinism of criteria 8-9 (hash equality)")
def test_criterion_10_mutag_determinism(mutag_dir, tmp_path):
    _, kernel_first = _run_mutag_kernel_route(mutag_dir, tmp_path / "a")
    _, kernel_second = _run_mutag_kernel_route(mutag_dir, tmp_path / "b")
    assert kernel_first == kernel_second
    _, _, g2v_first = _run_mutag_graph2vec_route(mutag_dir, tmp_path / "c")
    _, _, g2v_second = _run_mutag_graph2vec_route(mutag_dir, tmp_path / "d")
    assert g2v_first == g2v_second


# --------------------------------------------- synthetic stand-ins (8-10)

def _standin_dataset():
    return two_class_dataset(num_graphs=120, seed=7)


def test_standin_kernel_replication():
    """Criterion 8's content on the synthetic dataset (always runs).

    Pilot run (2026-08): mean accuracy 1.000 at baseline 0.600; the
    regression bound is pilot minus 2 points.
    """
    dataset = _standin_dataset()
    docs, vocab = wl_corpus(dataset, 2)
    vectors = frequency_vectors(docs, vocab)
    kernel = rbf_kernel(vectors)
    labels = dataset.labels_in_order()
    report = cross_validate(kernel, labels, n_folds=10, repeats=10,
                            k_neighbors=1, seed=0)
    baseline = majority_baseline(labels)
    assert baseline == pytest.approx(0.6)
    assert report.mean >= baseline + 0.10
    assert report.mean >= 0.98  # pilot 1.000 - 2 points
    print(f"\nstand-in kernel route: {report.mean:.4f} +/- {report.std:.4f} "
          f"(baseline {baseline:.3f})")


def test_standin_graph2vec_replication():
    """Criterion 9's content on the synthetic dataset (always runs).

    Pilot run (2026-08): loss ratio 0.440, accuracy 1.000; regression
    bound is pilot accuracy minus 2 points.
    """
    dataset = _standin_dataset()
    docs, vocab = wl_corpus(dataset, 2)
    corpus = build_pvdbow_corpus(docs, vocab)
    model = EmbeddingModel(PVDBOW, len(dataset), len(vocab), 32, seed=0)
    sampler = NegativeSampler.from_vocabulary(vocab, seed=1)
    config = TrainConfig(epochs=100, batch_size=1000, initial_lr=0.1,
                         num_negatives=10, seed=2)
    trace = train(model, corpus, sampler, config)
    moving = np.convolve(trace, np.ones(10) / 10, mode="valid")
    assert all(moving[i + 1] < moving[i] for i in range(len(moving) - 1))
    assert trace[-1] < 0.5 * trace[0]
    labels = dataset.labels_in_order()
    report = cross_validate(model.target, labels, n_folds=10, repeats=10,
                            k_neighbors=1, seed=0)
    baseline = majority_baseline(labels)
    assert report.mean >= baseline + 0.05
    assert report.mean >= 0.98  # pilot 1.000 - 2 points
    print(f"\nstand-in graph2vec route: {report.mean:.4f} +/- {report.std:.4f} "
          f"(loss ratio {trace[-1] / trace[0]:.3f})")


def test_standin_determinism():
    """Criterion 10's content on the synthetic dataset (always runs)."""
    hashes = []
    for _ in range(2):
        dataset = _standin_dataset()
        docs, vocab = wl_corpus(dataset, 2)
        corpus = build_pvdbow_corpus(docs, vocab)
        model = EmbeddingModel(PVDBOW, len(dataset), len(vocab), 16, seed=4)
        sampler = NegativeSampler.from_vocabulary(vocab, seed=5)
        config = TrainConfig(epochs=25, batch_size=1000, initial_lr=0.1,
                             num_negatives=10, seed=6)
        trace = train(model, corpus, sampler, config)
        vectors = frequency_vectors(docs, vocab)
        kernel = rbf_kernel(vectors)
        hashes.append((hashlib.sha256(model.target.tobytes()).hexdigest(),
                       hashlib.sha256(json.dumps(trace).encode()).hexdigest(),
                       hashlib.sha256(kernel.values.tobytes()).hexdigest()))
    assert hashes[0] == hashes[1]
