"""Negative-sampling embedding models and their SGD training loop.

Three model shapes share one binary logistic objective: skipgram embeds
the patterns themselves (targets = patterns), the graph-context model
embeds whole graphs against single patterns (PV-DBOW shape), and the
windowed model averages a graph row with the context pattern rows to
predict the target pattern (PV-DM shape, mean variant, PAD masked out).

For each (input u, positive v+, negatives v-_1..k) the contribution is

    -[ log sigma(u . v+) + sum_n log sigma(-u . v-_n) ]

and a batch loss is the sum of its samples' contributions. Training is
plain SGD over shuffled minibatches with a cosine-annealed learning rate,
double precision throughout, bitwise deterministic for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .corpus import (NegativeSampler, PVDBOWCorpus, PVDMCorpus,
                     SkipgramCorpus)

SGNS = "sgns"
PVDBOW = "pvdbow"
PVDM = "pvdm"
MODES = (SGNS, PVDBOW, PVDM)


class ConfigError(ValueError):
    """Rejected training configuration."""


class TrainingError(RuntimeError):
    """Numerical failure during training (non-finite loss or inputs)."""


@dataclass
class TrainConfig:
    epochs: int = 100
    batch_size: int = 1000
    initial_lr: float = 0.1
    min_lr: float | None = None  # defaults to 1e-4 * initial_lr
    num_negatives: int = 10
    window: int = 5
    seed: int = 0
    optimizer: str = "sgd"

    def __post_init__(self):
        if self.min_lr is None:
            self.min_lr = 1e-4 * self.initial_lr
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0 < self.min_lr <= self.initial_lr:
            raise ConfigError(
                f"need 0 < min_lr <= initial_lr, got {self.min_lr}, {self.initial_lr}")
        if self.num_negatives < 1:
            raise ConfigError(f"num_negatives must be >= 1, got {self.num_negatives}")
        if self.optimizer != "sgd":
            raise ConfigError(
                f"optimizer {self.optimizer!r} is not supported; this trainer "
                f"implements plain 'sgd' with cosine annealing only")


class EmbeddingModel:
    """Target matrix plus context matrix, double precision.

    Targets are the patterns for skipgram and the graphs for the two
    paragraph-vector shapes. Target rows start uniform in
    [-0.5/dim, 0.5/dim]; context rows start at zero, which makes the
    expected first-batch loss exactly (k + 1) * log 2 per sample.
    """

    def __init__(self, mode: str, num_targets: int, vocab_size: int,
                 dim: int, seed: int = 0):
        if mode not in MODES:
            raise ConfigError(f"unknown model mode {mode!r}; expected one of {MODES}")
        if num_targets < 1 or vocab_size < 1 or dim < 1:
            raise ConfigError("num_targets, vocab_size and dim must be >= 1")
        if mode == SGNS and num_targets != vocab_size:
            raise ConfigError(
                f"skipgram embeds the patterns themselves: num_targets "
                f"({num_targets}) must equal vocab_size ({vocab_size})")
        rng = np.random.default_rng(seed)
        self.mode = mode
        self.dim = dim
        self.target = (rng.random((num_targets, dim)) - 0.5) / dim
        self.context = np.zeros((vocab_size, dim))

    @property
    def num_targets(self) -> int:
        return self.target.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.context.shape[0]


def log_sigmoid(x: np.ndarray) -> np.ndarray:
    # -softplus(-x); the max-based softplus never overflows
    return -(np.maximum(-x, 0.0) + np.log1p(np.exp(-np.abs(x))))


def cosine_lr(step: int, total_steps: int, initial_lr: float,
              min_lr: float) -> float:
    """Cosine annealing from initial_lr (step 0) to min_lr (step total)."""
    if total_steps <= 0:
        return initial_lr
    return min_lr + 0.5 * (initial_lr - min_lr) * (
        1.0 + np.cos(np.pi * step / total_steps))


def _consolidate(rows: np.ndarray, grads: np.ndarray):
    """Sum gradient rows that address the same matrix row."""
    unique, inverse = np.unique(rows, return_inverse=True)
    out = np.zeros((len(unique), grads.shape[-1]))
    np.add.at(out, inverse, grads)
    return unique, out


def batch_loss_and_grads(model: EmbeddingModel, batch: tuple,
                         negatives: np.ndarray):
    """Loss of one batch and exact gradients on the touched rows.

    `batch` is (targets, contexts) for the pairwise modes and
    (graph_indices, context_windows, targets) for the windowed mode;
    `negatives` has one row of k noise pattern ids per batch item.
    Returns (loss, (target_rows, target_grads), (context_rows, context_grads))
    with duplicate rows already summed.
    """
    if model.mode == PVDM:
        graph_idx, windows, pos = (np.asarray(a) for a in batch)
        pad = model.vocab_size
        mask = windows != pad                       # (B, 2w)
        safe = np.where(mask, windows, 0)
        ctx_rows = model.context[safe] * mask[..., None]
        denom = 1.0 + mask.sum(axis=1)              # graph row always counts
        u = (model.target[graph_idx] + ctx_rows.sum(axis=1)) / denom[:, None]
    else:
        tgt, pos = (np.asarray(a) for a in batch)
        u = model.target[tgt]

    negatives = np.asarray(negatives)
    v_pos = model.context[pos]                      # (B, d)
    v_neg = model.context[negatives]                # (B, k, d)
    if not (np.isfinite(u).all() and np.isfinite(v_pos).all()
            and np.isfinite(v_neg).all()):
        raise TrainingError("non-finite embedding entries entering batch")

    pos_dot = np.einsum("bd,bd->b", u, v_pos)
    neg_dot = np.einsum("bd,bkd->bk", u, v_neg)
    loss = -(log_sigmoid(pos_dot).sum() + log_sigmoid(-neg_dot).sum())

    g_pos = expit(pos_dot) - 1.0                    # dL/d(pos_dot)
    g_neg = expit(neg_dot)                          # dL/d(neg_dot)
    grad_u = g_pos[:, None] * v_pos + np.einsum("bk,bkd->bd", g_neg, v_neg)
    grad_v_pos = g_pos[:, None] * u
    grad_v_neg = g_neg[..., None] * u[:, None, :]

    ctx_idx = np.concatenate([pos, negatives.reshape(-1)])
    ctx_grad = np.concatenate([grad_v_pos,
                               grad_v_neg.reshape(-1, model.dim)])
    if model.mode == PVDM:
        # u is a masked mean: every contributing row gets grad_u / denom
        share = grad_u / denom[:, None]
        tgt_rows, tgt_grad = graph_idx, share
        window_rows = safe[mask]
        window_grad = np.repeat(share, mask.sum(axis=1), axis=0)
        ctx_idx = np.concatenate([ctx_idx, window_rows])
        ctx_grad = np.concatenate([ctx_grad, window_grad])
    else:
        tgt_rows, tgt_grad = tgt, grad_u

    return (float(loss), _consolidate(tgt_rows, tgt_grad),
            _consolidate(ctx_idx, ctx_grad))


def _batch_views(model: EmbeddingModel, corpus, order: np.ndarray,
                 lo: int, hi: int):
    """(batch tuple, forbidden ids) for items order[lo:hi]."""
    idx = order[lo:hi]
    if model.mode == PVDM:
        batch = (corpus.graph_indices[idx], corpus.contexts[idx],
                 corpus.targets[idx])
        return batch, corpus.targets[idx]
    pairs = corpus.pairs[idx]
    return (pairs[:, 0], pairs[:, 1]), pairs[:, 1]


def _apply_pair_updates(model: EmbeddingModel, tgt, pos, negatives,
                        lr: float) -> None:
    """Sequential per-sample SGD for the two pairwise modes.

    Word2vec-style: each sample's gradients are computed from the current
    parameters and applied immediately, so steps stay bounded by
    lr * |u| * (k + 1) no matter how often a hot pattern repeats.
    """
    target, context = model.target, model.context
    for i in range(len(tgt)):
        t, p = tgt[i], pos[i]
        negs = negatives[i]
        u = target[t].copy()
        v_pos = context[p].copy()
        v_neg = context[negs]  # fancy indexing copies
        g_pos = expit(u @ v_pos) - 1.0
        g_neg = expit(v_neg @ u)
        context[p] -= lr * g_pos * u
        np.add.at(context, negs, (-lr) * g_neg[:, None] * u)
        target[t] -= lr * (g_pos * v_pos + g_neg @ v_neg)


def _apply_pvdm_updates(model: EmbeddingModel, graph_idx, windows, tgt,
                        negatives, lr: float) -> None:
    target, context = model.target, model.context
    pad = model.vocab_size
    for i in range(len(tgt)):
        g = graph_idx[i]
        ctx_rows = windows[i][windows[i] != pad]
        negs = negatives[i]
        u = (target[g] + context[ctx_rows].sum(axis=0)) / (1 + len(ctx_rows))
        p = tgt[i]
        v_pos = context[p].copy()
        v_neg = context[negs]
        g_pos = expit(u @ v_pos) - 1.0
        g_neg = expit(v_neg @ u)
        context[p] -= lr * g_pos * u
        np.add.at(context, negs, (-lr) * g_neg[:, None] * u)
        share = (g_pos * v_pos + g_neg @ v_neg) / (1 + len(ctx_rows))
        target[g] -= lr * share
        np.add.at(context, ctx_rows, -lr * share)


def train(model: EmbeddingModel,
          corpus: SkipgramCorpus | PVDBOWCorpus | PVDMCorpus,
          sampler: NegativeSampler, config: TrainConfig) -> list[float]:
    """Minibatch-metered SGD with a cosine-annealed learning rate.

    Each epoch shuffles the corpus and walks it in batches: the batch loss
    is evaluated on the batch-start parameters (so the first batch of a
    zero-context model reports exactly (k + 1) * log 2 per sample), then
    the batch's samples are applied as sequential per-sample SGD steps at
    the batch's learning rate. Returns the per-epoch mean per-sample loss
    trace; bitwise deterministic for a fixed config and sampler seed.
    """
    _check_shapes(model, corpus)
    n = len(corpus)
    if n == 0:
        raise TrainingError("corpus is empty")
    batches = (n + config.batch_size - 1) // config.batch_size
    total_steps = config.epochs * batches
    shuffle_rng = np.random.default_rng(config.seed)
    trace = []
    step = 0
    for epoch in range(config.epochs):
        order = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for b in range(batches):
            lo = b * config.batch_size
            hi = min(n, lo + config.batch_size)
            batch, forbidden = _batch_views(model, corpus, order, lo, hi)
            negatives = sampler.sample_matrix(forbidden, config.num_negatives)
            lr = cosine_lr(step, total_steps, config.initial_lr, config.min_lr)
            try:
                loss, _, _ = batch_loss_and_grads(model, batch, negatives)
            except TrainingError as exc:
                raise TrainingError(
                    f"{exc} (lr={lr:.6g}, epoch={epoch}, batch={b})") from None
            if not np.isfinite(loss):
                raise TrainingError(
                    f"loss became non-finite (lr={lr:.6g}, epoch={epoch}, batch={b})")
            if model.mode == PVDM:
                _apply_pvdm_updates(model, *batch, negatives, lr)
            else:
                _apply_pair_updates(model, *batch, negatives, lr)
            epoch_loss += loss
            step += 1
        trace.append(epoch_loss / n)
    return trace


def _check_shapes(model: EmbeddingModel, corpus) -> None:
    by_mode = {SGNS: SkipgramCorpus, PVDBOW: PVDBOWCorpus, PVDM: PVDMCorpus}
    if not isinstance(corpus, by_mode[model.mode]):
        raise ConfigError(
            f"corpus {type(corpus).__name__} does not fit model mode {model.mode!r}")
    if corpus.vocab_size != model.vocab_size:
        raise ConfigError(
            f"vocab size mismatch: corpus {corpus.vocab_size}, model {model.vocab_size}")
    if model.mode in (PVDBOW, PVDM) and corpus.num_graphs != model.num_targets:
        raise ConfigError(
            f"graph count mismatch: corpus {corpus.num_graphs}, model {model.num_targets}")


def export_embeddings(model: EmbeddingModel, index: list[str],
                      path: str) -> None:
    """Write the target matrix as JSON {id: [floats]}, full precision."""
    if len(index) != model.num_targets:
        raise ValueError(
            f"index has {len(index)} ids for {model.num_targets} target rows")
    payload = {key: [float(x) for x in row]
               for key, row in zip(index, model.target)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_embeddings(path: str) -> tuple[list[str], np.ndarray]:
    """Inverse of `export_embeddings`: (ids, matrix) in file order."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    ids = list(payload.keys())
    return ids, np.asarray([payload[k] for k in ids], dtype=np.float64)


def save_loss_trace(trace: list[float], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("epoch,mean_loss\n")
        for epoch, value in enumerate(trace):
            fh.write(f"{epoch},{value!r}\n")
