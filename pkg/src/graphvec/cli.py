"""Command-line pipeline: format, decompose, train, kernel, evaluate.

Every stage is also a library call; the CLI adds a TOML config with flag
overrides, a resolved-config echo next to the outputs, and a sha256
manifest of produced artifacts so identical configs can be verified to
reproduce identical bytes. Exit codes: 0 ok, 1 user error, 2 internal
error; every failure prints a single `error: ...` line to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from . import dataset_io, decomposition, embedding, evaluate, kernels
from .corpus import (CorpusError, NegativeSampler, build_pvdbow_corpus,
                     build_pvdm_corpus, build_skipgram_corpus)
from .dataset_io import DataFormatError, DatasetManifest, IngestionError
from .decomposition import WalkBudgetError
from .decomposition.vocabulary import Vocabulary, VocabularyError
from .embedding import PVDBOW, PVDM, SGNS, ConfigError, TrainConfig
from .graphs import GraphDataset, GraphError


class UserExit(Exception):
    """Bad invocation or unusable input; maps to exit code 1."""


USER_ERRORS = (UserExit, IngestionError, DataFormatError, GraphError,
               CorpusError, ConfigError, VocabularyError, WalkBudgetError,
               FileNotFoundError, NotADirectoryError, ValueError, KeyError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UserExit(message)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _load_gexf_dataset(gexf_dir: str, labels_path: str | None = None):
    """Dataset from a directory of gexf files, labels from the manifest.

    Without a manifest, class labels default to 0 (training does not need
    them); with one, labels are matched to graphs by file stem.
    """
    if labels_path is None:
        candidate = gexf_dir.rstrip("/\\") + ".Labels"
        labels_path = candidate if os.path.exists(candidate) else None
    if labels_path is not None:
        manifest_dir = os.path.dirname(os.path.abspath(labels_path))
        name = os.path.splitext(os.path.basename(labels_path))[0]
        manifest = DatasetManifest.load(labels_path)
        entries = [(os.path.join(manifest_dir, p), lbl) for p, lbl in manifest.entries]
    else:
        name = os.path.basename(gexf_dir.rstrip("/\\"))
        stems = [f[:-5] for f in os.listdir(gexf_dir) if f.endswith(".gexf")]
        if not stems:
            raise IngestionError(f"no .gexf files in {gexf_dir}")
        stems.sort(key=(lambda s: int(s)) if all(s.isdigit() for s in stems) else str)
        entries = [(os.path.join(gexf_dir, s + ".gexf"), 0) for s in stems]
    graphs, class_labels = [], {}
    for path, label in entries:
        if not os.path.exists(path):
            raise IngestionError(f"manifest references missing file {path}")
        g = dataset_io.read_gexf(path)
        graphs.append(g)
        class_labels[g.graph_id] = label
    return GraphDataset(name, graphs, class_labels)


def _labels_by_stem(labels_path: str) -> dict[str, int]:
    manifest = DatasetManifest.load(labels_path)
    return {os.path.splitext(os.path.basename(p))[0]: lbl
            for p, lbl in manifest.entries}


def _align_labels(ids: list[str], labels_path: str) -> list[int]:
    by_stem = _labels_by_stem(labels_path)
    missing = [i for i in ids if i not in by_stem]
    if missing:
        raise DataFormatError(
            f"{labels_path} has no class label for graph ids {missing[:5]}")
    return [by_stem[i] for i in ids]


# ---------------------------------------------------------------- decompose

def run_decomposition(dataset, method: str, params: dict, threads: int = 1):
    """Dispatch one decomposition; returns (documents, vocab, extension)."""
    if method == "wl":
        depth = int(params.get("depth", 2))
        docs, vocab = decomposition.wl_corpus(
            dataset, depth, include_depth0=bool(params.get("include_depth0", True)))
        return docs, vocab, decomposition.wl_extension(depth)
    if method == "sp":
        docs, vocab = decomposition.sp_corpus(dataset, threads=threads)
        return docs, vocab, decomposition.SP_EXTENSION
    if method == "graphlet":
        size = int(params.get("size", 7))
        docs, vocab = decomposition.graphlet_corpus(
            dataset, size, int(params.get("samples", 100)),
            int(params.get("seed", 0)), threads=threads)
        return docs, vocab, decomposition.graphlet_extension(size)
    if method == "aw":
        length = int(params.get("length", 10))
        docs, vocab = decomposition.anonymous_walk_corpus(
            dataset, length,
            budget=int(params.get("budget", decomposition.DEFAULT_WALK_BUDGET)),
            threads=threads)
        return docs, vocab, decomposition.aw_extension(length)
    raise UserExit(f"unknown decomposition method {method!r}; "
                   f"expected wl, sp, graphlet or aw")


def _vocab_path(dataset_dir: str, extension: str) -> str:
    return os.path.join(dataset_dir, f"vocab.{extension}.json")


def cmd_format(args) -> int:
    manifest = dataset_io.format_dataset(args.input_dir, args.name, args.output_dir)
    print(f"formatted {len(manifest.entries)} graphs into "
          f"{os.path.join(args.output_dir, args.name)}")
    return 0


def cmd_decompose(args) -> int:
    dataset = _load_gexf_dataset(args.dataset_dir)
    params = {"depth": args.depth, "size": args.size, "samples": args.samples,
              "length": args.length, "seed": args.seed, "budget": args.budget,
              "include_depth0": args.include_depth0}
    docs, vocab, ext = run_decomposition(dataset, args.method, params,
                                         threads=args.threads)
    decomposition.save_documents(docs, args.dataset_dir, ext)
    vocab.save_json(_vocab_path(args.dataset_dir, ext))
    print(f"wrote {len(docs)} .{ext} documents, vocabulary of {len(vocab)} patterns")
    return 0


# -------------------------------------------------------------------- train

def _train_on_documents(documents, vocab: Vocabulary, model_name: str,
                        config: TrainConfig, dim: int, min_count: int = 0,
                        negative_exponent: float = 1.0):
    """Corpus construction + model training; returns (model, trace, ids)."""
    documents, vocab = decomposition.prune_min_count(documents, vocab, min_count)
    graph_ids = [d.graph_id for d in documents]
    if model_name == SGNS:
        corpus = build_skipgram_corpus(documents, vocab, config.window)
        num_targets = len(vocab)
        index = vocab.tokens
    elif model_name == PVDBOW:
        corpus = build_pvdbow_corpus(documents, vocab)
        num_targets = len(graph_ids)
        index = graph_ids
    elif model_name == PVDM:
        corpus = build_pvdm_corpus(documents, vocab, config.window)
        num_targets = len(graph_ids)
        index = graph_ids
    else:
        raise UserExit(f"unknown model {model_name!r}; expected "
                       f"{SGNS}, {PVDBOW} or {PVDM}")
    model = embedding.EmbeddingModel(model_name, num_targets, len(vocab),
                                     dim, seed=config.seed)
    sampler = NegativeSampler.from_vocabulary(vocab, seed=config.seed + 1,
                                              exponent=negative_exponent)
    trace = embedding.train(model, corpus, sampler, config)
    return model, trace, index


def cmd_train(args) -> int:
    documents = decomposition.load_documents(args.dataset_dir, args.extension)
    vocab = decomposition.build_vocabulary(documents)
    config = TrainConfig(epochs=args.epochs, batch_size=args.batch_size,
                         initial_lr=args.lr, min_lr=args.min_lr,
                         num_negatives=args.negatives, window=args.window,
                         seed=args.seed)
    model, trace, index = _train_on_documents(
        documents, vocab, args.model, config, args.dim,
        min_count=args.min_count)
    os.makedirs(args.output_dir, exist_ok=True)
    emb_path = os.path.join(args.output_dir, "embeddings.json")
    loss_path = os.path.join(args.output_dir, "loss.csv")
    embedding.export_embeddings(model, index, emb_path)
    embedding.save_loss_trace(trace, loss_path)
    print(f"trained {args.model} for {args.epochs} epochs; "
          f"final mean loss {trace[-1]:.4f}; wrote {emb_path}")
    return 0


# ------------------------------------------------------------------- kernel

def cmd_kernel(args) -> int:
    documents = decomposition.load_documents(args.dataset_dir, args.extension)
    vocab = decomposition.build_vocabulary(documents)
    vectors = kernels.frequency_vectors(documents, vocab)
    if args.type == "linear":
        matrix = kernels.linear_kernel(vectors)
    elif args.type == "rbf":
        matrix = kernels.rbf_kernel(vectors, gamma=args.gamma)
    elif args.type == "deep":
        if not args.embeddings:
            raise UserExit("--type deep requires --embeddings "
                           "(substructure embeddings JSON from a sgns run)")
        tokens, rows = embedding.load_embeddings(args.embeddings)
        position = {t: i for i, t in enumerate(tokens)}
        try:
            order = np.asarray([position[t] for t in vocab.tokens])
        except KeyError as exc:
            raise UserExit(f"{args.embeddings} is missing an embedding for "
                           f"pattern {exc.args[0]!r}") from None
        matrix = kernels.deep_kernel(vectors, rows[order])
    else:
        raise UserExit(f"unknown kernel type {args.type!r}")
    matrix.save_csv(args.output)
    if args.save_vectors:
        kernels.save_frequency_vectors(vectors, args.save_vectors)
    print(f"wrote {len(matrix.graph_ids)}x{len(matrix.graph_ids)} "
          f"{args.type} kernel to {args.output}")
    return 0


# ----------------------------------------------------------------- evaluate

def cmd_evaluate(args) -> int:
    if bool(args.kernel) == bool(args.embeddings):
        raise UserExit("provide exactly one of --kernel or --embeddings")
    if args.kernel:
        matrix = kernels.KernelMatrix.load_csv(args.kernel)
        ids, source = matrix.graph_ids, matrix
    else:
        ids, source = embedding.load_embeddings(args.embeddings)
    labels = _align_labels(ids, args.labels)
    report = evaluate.cross_validate(source, labels, n_folds=args.folds,
                                     repeats=args.repeats,
                                     k_neighbors=args.neighbors,
                                     seed=args.seed)
    print(report.to_text(row_label=args.row_label))
    if args.output:
        report.save_json(args.output)
    return 0


# ----------------------------------------------------------------- pipeline

CONFIG_SCHEMA: dict[str, dict[str, type]] = {
    "dataset": {"gexf_dir": str, "labels": str},
    "decomposition": {"method": str, "depth": int, "size": int, "samples": int,
                      "length": int, "budget": int, "seed": int,
                      "include_depth0": bool},
    "corpus": {"window": int, "min_count": int, "negative_exponent": float},
    "training": {"model": str, "dim": int, "epochs": int, "batch_size": int,
                 "initial_lr": float, "min_lr": float, "negatives": int,
                 "seed": int},
    "kernel": {"type": str, "gamma": float},
    "evaluation": {"folds": int, "repeats": int, "k_neighbors": int,
                   "seed": int},
}

CONFIG_DEFAULTS: dict = {
    "decomposition": {"method": "wl", "depth": 2, "size": 7, "samples": 100,
                      "length": 10, "budget": decomposition.DEFAULT_WALK_BUDGET,
                      "seed": 0, "include_depth0": True},
    "corpus": {"window": 5, "min_count": 0, "negative_exponent": 1.0},
    "evaluation": {"folds": 10, "repeats": 10, "k_neighbors": 1, "seed": 0},
}


def _parse_override(text: str):
    if "=" not in text or "." not in text.split("=", 1)[0]:
        raise UserExit(f"override {text!r} is not of the form section.key=value")
    dotted, raw = text.split("=", 1)
    section, key = dotted.split(".", 1)
    for caster in (int, float):
        try:
            return section, key, caster(raw)
        except ValueError:
            pass
    if raw.lower() in ("true", "false"):
        return section, key, raw.lower() == "true"
    return section, key, raw


def load_pipeline_config(path: str, overrides: list[str]) -> dict:
    """Parse, override, validate; rejects unknown sections/keys upfront."""
    with open(path, "rb") as fh:
        config = tomllib.load(fh)
    for text in overrides or []:
        section, key, value = _parse_override(text)
        config.setdefault(section, {})[key] = value
    for section, table in config.items():
        if section not in CONFIG_SCHEMA:
            raise UserExit(f"unknown config section [{section}]")
        if not isinstance(table, dict):
            raise UserExit(f"config section [{section}] must be a table")
        for key, value in table.items():
            if key not in CONFIG_SCHEMA[section]:
                raise UserExit(f"unknown config key {section}.{key}")
            expected = CONFIG_SCHEMA[section][key]
            if expected is float and isinstance(value, int):
                table[key] = float(value)
            elif expected is int and isinstance(value, bool):
                raise UserExit(f"config key {section}.{key} must be {expected.__name__}")
            elif not isinstance(value, expected):
                raise UserExit(f"config key {section}.{key} must be "
                               f"{expected.__name__}, got {value!r}")
    if "dataset" not in config or "gexf_dir" not in config["dataset"]:
        raise UserExit("config needs [dataset] with gexf_dir")
    resolved = {}
    for section in CONFIG_SCHEMA:
        if section in config or section in CONFIG_DEFAULTS:
            resolved[section] = dict(CONFIG_DEFAULTS.get(section, {}))
            resolved[section].update(config.get(section, {}))
    model = resolved.get("training", {}).get("model")
    if model == SGNS and resolved.get("kernel", {}).get("type", "deep") != "deep":
        raise UserExit("training.model = 'sgns' embeds patterns; pair it with "
                       "kernel.type = 'deep'")
    if model == SGNS and "kernel" not in resolved:
        resolved["kernel"] = {"type": "deep"}
    if model in (PVDBOW, PVDM) and "kernel" in resolved:
        raise UserExit(f"training.model = {model!r} already yields graph "
                       f"embeddings; drop the [kernel] section")
    if "training" not in resolved and "kernel" not in resolved:
        raise UserExit("config needs [training] and/or [kernel] to produce a result")
    if "training" not in resolved and resolved.get("kernel", {}).get("type") == "deep":
        raise UserExit("kernel.type = 'deep' needs [training] with model = 'sgns'")
    return resolved


def _toml_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    return json.dumps(str(value))


def write_resolved_config(config: dict, path: str) -> None:
    lines = []
    for section, table in config.items():
        lines.append(f"[{section}]")
        lines.extend(f"{key} = {_toml_scalar(value)}"
                     for key, value in table.items())
        lines.append("")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))


def cmd_pipeline(args) -> int:
    config = load_pipeline_config(args.config, args.set)
    out_dir = args.output_dir
    os.makedirs(out_dir, exist_ok=True)
    artifacts: dict[str, str] = {}

    def record(path: str, key: str | None = None) -> None:
        artifacts[key or os.path.relpath(path, out_dir)] = _sha256(path)

    resolved_path = os.path.join(out_dir, "resolved_config.toml")
    write_resolved_config(config, resolved_path)
    record(resolved_path)

    gexf_dir = config["dataset"]["gexf_dir"]
    labels_path = config["dataset"].get("labels")
    dataset = _load_gexf_dataset(gexf_dir, labels_path)
    dec = config["decomposition"]
    docs, vocab, ext = run_decomposition(dataset, dec["method"], dec,
                                         threads=args.threads)
    for path in decomposition.save_documents(docs, gexf_dir, ext):
        record(path, key=os.path.join(gexf_dir, os.path.basename(path)))
    vocab.save_json(_vocab_path(gexf_dir, ext))
    record(_vocab_path(gexf_dir, ext),
           key=os.path.join(gexf_dir, f"vocab.{ext}.json"))

    cor = config["corpus"]
    source = None
    if "training" in config:
        tr = config["training"]
        tc = TrainConfig(epochs=tr.get("epochs", 100),
                         batch_size=tr.get("batch_size", 1000),
                         initial_lr=tr.get("initial_lr", 0.1),
                         min_lr=tr.get("min_lr"),
                         num_negatives=tr.get("negatives", 10),
                         window=cor["window"], seed=tr.get("seed", 0))
        model, trace, index = _train_on_documents(
            docs, vocab, tr.get("model", PVDBOW), tc, tr.get("dim", 32),
            min_count=cor["min_count"],
            negative_exponent=cor["negative_exponent"])
        emb_path = os.path.join(out_dir, "embeddings.json")
        loss_path = os.path.join(out_dir, "loss.csv")
        embedding.export_embeddings(model, index, emb_path)
        embedding.save_loss_trace(trace, loss_path)
        record(emb_path)
        record(loss_path)
        if model.mode in (PVDBOW, PVDM):
            source, ids = model.target, index
        else:  # sgns: substructure embeddings feed the deep kernel
            vectors = kernels.frequency_vectors(docs, vocab)
            matrix = kernels.deep_kernel(vectors, model.target)
            kernel_path = os.path.join(out_dir, "kernel.csv")
            matrix.save_csv(kernel_path)
            record(kernel_path)
            source, ids = matrix, matrix.graph_ids
    if source is None:  # no training: plain frequency-vector kernel route
        ker = config["kernel"]
        vectors = kernels.frequency_vectors(docs, vocab)
        if ker["type"] == "linear":
            matrix = kernels.linear_kernel(vectors)
        elif ker["type"] == "rbf":
            matrix = kernels.rbf_kernel(vectors, gamma=ker.get("gamma"))
        else:
            raise UserExit(f"unknown kernel type {ker['type']!r}")
        kernel_path = os.path.join(out_dir, "kernel.csv")
        matrix.save_csv(kernel_path)
        record(kernel_path)
        source, ids = matrix, matrix.graph_ids

    ev = config["evaluation"]
    if labels_path:
        labels = _align_labels(list(ids), labels_path)
    else:
        labels = [dataset.class_labels[i] for i in ids]
    report = evaluate.cross_validate(source, labels, n_folds=ev["folds"],
                                     repeats=ev["repeats"],
                                     k_neighbors=ev["k_neighbors"],
                                     seed=ev["seed"])
    report_path = os.path.join(out_dir, "report.json")
    report.save_json(report_path)
    record(report_path)
    text_path = os.path.join(out_dir, "report.txt")
    stage2 = config.get("training", {}).get(
        "model", config.get("kernel", {}).get("type", ""))
    row = f"{dec['method']}+{stage2}"
    with open(text_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_text(row_label=row) + "\n")
    record(text_path)

    manifest_path = os.path.join(out_dir, "run_manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump({"artifacts": artifacts}, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(report.to_text(row_label=row))
    print(f"pipeline artifacts and hashes recorded in {manifest_path}")
    return 0


# --------------------------------------------------------------------- main

def build_parser() -> _Parser:
    parser = _Parser(prog="graphvec",
                     description="Distributed representations of graphs: "
                                 "decompose, embed, compare, classify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("format", help="convert TU-Dortmund flat files to gexf")
    p.add_argument("--input-dir", required=True)
    p.add_argument("--name", required=True)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_format)

    p = sub.add_parser("decompose", help="induce substructure patterns")
    p.add_argument("--dataset-dir", required=True)
    p.add_argument("--method", required=True, choices=["wl", "sp", "graphlet", "aw"])
    p.add_argument("--depth", type=int, default=2, help="wl: relabeling depth")
    p.add_argument("--include-depth0", action=argparse.BooleanOptionalAction,
                   default=True, help="wl: emit raw-label depth-0 tokens")
    p.add_argument("--size", type=int, default=7, help="graphlet: nodes per graphlet")
    p.add_argument("--samples", type=int, default=100, help="graphlet: per graph")
    p.add_argument("--length", type=int, default=10, help="aw: walk length")
    p.add_argument("--budget", type=int, default=decomposition.DEFAULT_WALK_BUDGET,
                   help="aw: per-graph walk-count refusal threshold")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("train", help="train an embedding model on documents")
    p.add_argument("--dataset-dir", required=True)
    p.add_argument("--extension", required=True, help="document extension, e.g. wld2")
    p.add_argument("--model", required=True, choices=[SGNS, PVDBOW, PVDM])
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--batch-size", type=int, default=1000)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--min-lr", type=float, default=None)
    p.add_argument("--negatives", type=int, default=10)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--min-count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("kernel", help="build a graph kernel matrix")
    p.add_argument("--dataset-dir", required=True)
    p.add_argument("--extension", required=True)
    p.add_argument("--type", required=True, choices=["linear", "rbf", "deep"])
    p.add_argument("--gamma", type=float, default=None,
                   help="rbf bandwidth; default median heuristic")
    p.add_argument("--embeddings", default=None,
                   help="deep: substructure embeddings JSON")
    p.add_argument("--output", required=True)
    p.add_argument("--save-vectors", default=None,
                   help="also write the frequency vectors as sparse JSON")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("evaluate", help="repeated stratified k-fold CV with k-NN")
    p.add_argument("--kernel", default=None, help="kernel CSV")
    p.add_argument("--embeddings", default=None, help="embeddings JSON")
    p.add_argument("--labels", required=True, help=".Labels manifest")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--neighbors", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--row-label", default="result")
    p.add_argument("--output", default=None, help="report JSON path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="chained decompose/train/kernel/evaluate")
    p.add_argument("--config", required=True, help="TOML pipeline config")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--set", action="append", default=[],
                   metavar="SECTION.KEY=VALUE", help="override a config value")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args) or 0
    except USER_ERRORS as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"error: internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
