"""Target-context corpora and the negative-sampling noise distribution.

Three corpus shapes feed the three embedding models:

* skipgram pairs (pattern, nearby pattern) from a sliding window;
* graph-context pairs (graph index, pattern), one per token occurrence;
* windowed samples (graph index, fixed-width context, target pattern)
  where short windows are padded with a reserved PAD id the model masks.

Noise contexts are drawn from the empirical unigram distribution of the
patterns, count(p) / total count, optionally raised to an exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition.vocabulary import PatternDocument, Vocabulary


class CorpusError(ValueError):
    """Documents and vocabulary disagree, or a corpus cannot be built."""


@dataclass
class SkipgramCorpus:
    """(target pattern id, context pattern id) pairs."""

    pairs: np.ndarray  # (N, 2) int64
    vocab_size: int

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class PVDBOWCorpus:
    """(graph index, pattern id) pairs, one per token occurrence."""

    pairs: np.ndarray  # (N, 2) int64
    vocab_size: int
    graph_ids: list[str] = field(default_factory=list)

    @property
    def num_graphs(self) -> int:
        return len(self.graph_ids)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class PVDMCorpus:
    """(graph index, context window, target pattern id) samples.

    Context rows have fixed width 2 * window; absent positions hold
    `pad_id` (== vocab_size), which the model excludes from averaging.
    """

    graph_indices: np.ndarray  # (N,) int64
    contexts: np.ndarray       # (N, 2 * window) int64, PAD-filled
    targets: np.ndarray        # (N,) int64
    vocab_size: int
    graph_ids: list[str] = field(default_factory=list)

    @property
    def pad_id(self) -> int:
        return self.vocab_size

    @property
    def num_graphs(self) -> int:
        return len(self.graph_ids)

    def __len__(self) -> int:
        return len(self.targets)


def _token_ids(doc: PatternDocument, vocab: Vocabulary) -> list[int]:
    try:
        return [vocab.id_of(t) for t in doc.tokens]
    except KeyError as exc:
        raise CorpusError(f"document {doc.graph_id}: {exc.args[0]}") from None


def build_skipgram_corpus(documents: list[PatternDocument], vocab: Vocabulary,
                          window: int) -> SkipgramCorpus:
    """Pair every token with the tokens at distance <= window around it,
    clipped at document boundaries; deterministic document order."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(vocab) == 0:
        raise CorpusError("empty vocabulary")
    pairs = []
    for doc in documents:
        ids = _token_ids(doc, vocab)
        for i, target in enumerate(ids):
            for j in range(max(0, i - window), min(len(ids), i + window + 1)):
                if j != i:
                    pairs.append((target, ids[j]))
    return SkipgramCorpus(np.asarray(pairs, dtype=np.int64).reshape(-1, 2),
                          vocab_size=len(vocab))


def build_pvdbow_corpus(documents: list[PatternDocument],
                        vocab: Vocabulary) -> PVDBOWCorpus:
    """One (graph, pattern) pair per token occurrence, multiplicity kept,
    so pair frequency carries the per-graph pattern counts."""
    if len(vocab) == 0:
        raise CorpusError("empty vocabulary")
    pairs = []
    for gi, doc in enumerate(documents):
        for tid in _token_ids(doc, vocab):
            pairs.append((gi, tid))
    return PVDBOWCorpus(np.asarray(pairs, dtype=np.int64).reshape(-1, 2),
                        vocab_size=len(vocab),
                        graph_ids=[d.graph_id for d in documents])


def build_pvdm_corpus(documents: list[PatternDocument], vocab: Vocabulary,
                      window: int) -> PVDMCorpus:
    """One sample per token: the graph, the 2*window surrounding tokens
    (PAD-filled at the borders), and the token itself as target."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(vocab) == 0:
        raise CorpusError("empty vocabulary")
    pad = len(vocab)
    graph_indices, contexts, targets = [], [], []
    for gi, doc in enumerate(documents):
        ids = _token_ids(doc, vocab)
        for i, target in enumerate(ids):
            row = []
            for j in range(i - window, i + window + 1):
                if j == i:
                    continue
                row.append(ids[j] if 0 <= j < len(ids) else pad)
            graph_indices.append(gi)
            contexts.append(row)
            targets.append(target)
    return PVDMCorpus(np.asarray(graph_indices, dtype=np.int64),
                      np.asarray(contexts, dtype=np.int64).reshape(-1, 2 * window),
                      np.asarray(targets, dtype=np.int64),
                      vocab_size=len(vocab),
                      graph_ids=[d.graph_id for d in documents])


class NegativeSampler:
    """Draws noise pattern ids from the empirical unigram distribution.

    P(p) = count(p) / sum(counts), with an optional exponent knob
    (1.0 keeps the raw distribution; 0.75 is the word2vec variant).
    """

    def __init__(self, counts: np.ndarray, seed: int = 0,
                 exponent: float = 1.0):
        counts = np.asarray(counts, dtype=np.float64)
        if np.any(counts < 0):
            raise CorpusError("counts must be non-negative")
        if counts.size < 2 or np.count_nonzero(counts) < 2:
            raise CorpusError(
                "need at least 2 patterns with positive count to sample "
                "negatives while avoiding the positive context")
        weights = counts ** exponent
        self.probabilities = weights / weights.sum()
        self._cumulative = np.cumsum(self.probabilities)
        self.rng = np.random.default_rng(seed)

    @classmethod
    def from_vocabulary(cls, vocab: Vocabulary, seed: int = 0,
                        exponent: float = 1.0) -> "NegativeSampler":
        return cls(vocab.counts_array(), seed=seed, exponent=exponent)

    def _draw(self, shape) -> np.ndarray:
        idx = np.searchsorted(self._cumulative, self.rng.random(shape),
                              side="right")
        return np.minimum(idx, len(self._cumulative) - 1)

    def sample(self, k: int, forbidden: int) -> np.ndarray:
        """k i.i.d. draws, resampling any draw equal to `forbidden`."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        draws = self._draw(k)
        mask = draws == forbidden
        while mask.any():
            draws[mask] = self._draw(int(mask.sum()))
            mask = draws == forbidden
        return draws

    def sample_matrix(self, forbidden: np.ndarray, k: int) -> np.ndarray:
        """(len(forbidden), k) draws with row i avoiding forbidden[i]."""
        draws = self._draw((len(forbidden), k))
        mask = draws == forbidden[:, None]
        while mask.any():
            draws[mask] = self._draw(int(mask.sum()))
            mask = draws == forbidden[:, None]
        return draws
