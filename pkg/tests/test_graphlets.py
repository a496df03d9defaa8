import logging
from itertools import combinations

import numpy as np
import pytest

from graphvec.decomposition import (canonical_form,
                                    enumerate_connected_subsets,
                                    graphlet_corpus, graphlet_extension,
                                    graphlet_token, induced_adjacency,
                                    sample_graphlet_nodes)
from graphvec.graphs import Graph, bfs_distances

from conftest import (make_dataset, path_graph, random_graph_pool,
                      triangle)
from oracles import (adjacency_matrix, connected_labeled_graphs,
                     group_by_isomorphism, matrices_isomorphic)


def test_triangle_and_path_get_distinct_tokens():
    tri = triangle("t")
    p3 = path_graph("p", ["1", "1", "1"])
    docs, vocab = graphlet_corpus(make_dataset([tri, p3],
                                               {"t": 0, "p": 0}),
                                  size=3, num_samples=5, seed=0)
    assert set(docs[0].tokens) != set(docs[1].tokens)
    assert len(set(docs[0].tokens)) == 1  # every triangle sample identical
    assert len(vocab) == 2


def test_permuted_subgraph_same_token():
    rng = np.random.default_rng(3)
    for trial in range(20):
        g = Graph("g", ["x"] * 7,
                  [(u, v) for u in range(7) for v in range(u + 1, 7)
                   if rng.random() < 0.5])
        nodes = sorted(rng.choice(7, size=5, replace=False).tolist())
        token = graphlet_token(g, nodes)
        perm = list(rng.permutation(5))
        assert graphlet_token(g, [nodes[i] for i in perm]) == token


def test_connected_4_node_graphs_have_6_canonical_classes():
    mats = connected_labeled_graphs(4)  # oracle enumeration: 38 graphs
    canonical = {canonical_form([list(r) for r in m]) for m in mats}
    oracle_classes = group_by_isomorphism(mats)
    assert len(oracle_classes) == 6
    assert len(canonical) == 6


def test_canonical_form_matches_pairwise_oracle_k3_to_k5():
    for k in (3, 4, 5):
        mats = connected_labeled_graphs(k)
        by_canon = {}
        for i, m in enumerate(mats):
            by_canon.setdefault(canonical_form([list(r) for r in m]), []).append(i)
        oracle = group_by_isomorphism(mats)
        assert sorted(map(sorted, by_canon.values())) == sorted(map(sorted, oracle))


def test_exhaustive_enumeration_matches_brute_force():
    for g in random_graph_pool(seed=7, count=15, max_n=9):
        for k in (2, 3, 4):
            esu = set(enumerate_connected_subsets(g, k))
            brute = set()
            for nodes in combinations(range(g.n), k):
                sub_adj = induced_adjacency(g, nodes)
                # connectivity of the induced subgraph
                seen = {0}
                stack = [0]
                while stack:
                    u = stack.pop()
                    for v in range(k):
                        if sub_adj[u][v] and v not in seen:
                            seen.add(v)
                            stack.append(v)
                if len(seen) == k:
                    brute.add(nodes)
            assert esu == brute


def test_sampler_returns_connected_sets():
    rng = np.random.default_rng(11)
    for g in random_graph_pool(seed=12, count=20, max_n=15, edge_prob=0.35):
        nodes = sample_graphlet_nodes(g, 4, rng)
        if len(nodes) >= 2:
            reachable = {v for v in bfs_distances(
                Graph("s", ["x"] * len(nodes), induced_edges(g, nodes)), 0)}
            assert reachable == set(range(len(nodes)))


def induced_edges(g, nodes):
    index = {v: i for i, v in enumerate(nodes)}
    return [(index[u], index[v]) for u, v in g.edges()
            if u in index and v in index]


def test_corpus_deterministic_given_seed():
    graphs = random_graph_pool(seed=15, count=10, max_n=12, edge_prob=0.3)
    ds = make_dataset(graphs)
    first, _ = graphlet_corpus(ds, size=4, num_samples=20, seed=5)
    second, _ = graphlet_corpus(ds, size=4, num_samples=20, seed=5)
    assert [d.tokens for d in first] == [d.tokens for d in second]
    third, _ = graphlet_corpus(ds, size=4, num_samples=20, seed=6)
    assert [d.tokens for d in first] != [d.tokens for d in third]


def test_small_graph_falls_back_to_achievable_size():
    g = path_graph("p", ["1", "1", "1"])  # only 3 nodes, ask for 5
    docs, _ = graphlet_corpus(make_dataset([g]), size=5, num_samples=4, seed=0)
    assert docs[0].tokens == [f"g3_{canonical_form([[0, 1, 0], [1, 0, 1], [0, 1, 0]]):x}"] * 4


def test_no_usable_component_warns_and_empties(caplog):
    isolated = Graph("i", ["1", "1"], [])
    with caplog.at_level(logging.WARNING):
        docs, _ = graphlet_corpus(make_dataset([isolated]), size=3,
                                  num_samples=3, seed=0)
    assert docs[0].tokens == []
    assert "no component" in caplog.text


def test_exhaustive_token_invariance_under_permutation():
    # sampling is not permutation-covariant; assert invariance exhaustively
    rng = np.random.default_rng(19)
    from graphvec.graphs import permute
    for g in random_graph_pool(seed=20, count=50, max_n=9, edge_prob=0.35):
        twin = permute(g, list(rng.permutation(g.n)))
        for k in (3, 4):
            tokens_g = sorted(graphlet_token(g, s)
                              for s in enumerate_connected_subsets(g, k))
            tokens_t = sorted(graphlet_token(twin, s)
                              for s in enumerate_connected_subsets(twin, k))
            assert tokens_g == tokens_t


def test_size_bounds_and_extension():
    g = triangle()
    with pytest.raises(ValueError):
        graphlet_corpus(make_dataset([g]), size=9, num_samples=1, seed=0)
    with pytest.raises(ValueError):
        graphlet_corpus(make_dataset([g]), size=3, num_samples=0, seed=0)
    assert graphlet_extension(7) == "glt7"


def test_tokens_hex_and_isomorphism_complete():
    # same canonical integer iff isomorphic, across a spread of 5-node sets
    rng = np.random.default_rng(23)
    pool = []
    for _ in range(30):
        g = Graph("g", ["x"] * 5,
                  [(u, v) for u in range(5) for v in range(u + 1, 5)
                   if rng.random() < 0.5])
        pool.append(adjacency_matrix(g, list(range(5))))
    for a in pool:
        for b in pool:
            same = (canonical_form([list(r) for r in a])
                    == canonical_form([list(r) for r in b]))
            assert same == matrices_isomorphic(a, b)
