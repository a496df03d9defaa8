"""Pattern documents, the shared vocabulary, and their on-disk formats.

Every decomposition reduces a graph to an ordered list of pattern tokens
(one document per graph); the vocabulary maps each distinct token to a
dense integer id and its total occurrence count across all documents.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np


class VocabularyError(KeyError):
    """Token/vocabulary inconsistency."""


@dataclass
class PatternDocument:
    """Ordered pattern tokens induced from one graph."""

    graph_id: str
    tokens: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tokens)


class Vocabulary:
    """Bidirectional token <-> dense id map with occurrence counts."""

    def __init__(self):
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = []
        self._counts: list[int] = []

    @classmethod
    def from_documents(cls, documents: list[PatternDocument]) -> "Vocabulary":
        vocab = cls()
        for doc in documents:
            for token in doc.tokens:
                vocab.add(token)
        return vocab

    def add(self, token: str, count: int = 1) -> int:
        if token in self._ids:
            tid = self._ids[token]
            self._counts[tid] += count
        else:
            tid = len(self._tokens)
            self._ids[token] = tid
            self._tokens.append(token)
            self._counts.append(count)
        return tid

    def id_of(self, token: str) -> int:
        try:
            return self._ids[token]
        except KeyError:
            raise VocabularyError(f"token {token!r} not in vocabulary") from None

    def token_of(self, tid: int) -> str:
        return self._tokens[tid]

    def count_of(self, token: str) -> int:
        return self._counts[self.id_of(token)]

    def counts_array(self) -> np.ndarray:
        """Occurrence counts indexed by token id."""
        return np.asarray(self._counts, dtype=np.int64)

    @property
    def tokens(self) -> list[str]:
        return list(self._tokens)

    @property
    def total_count(self) -> int:
        return int(sum(self._counts))

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def __len__(self) -> int:
        return len(self._tokens)

    def save_json(self, path: str) -> None:
        payload = {tok: {"id": tid, "count": self._counts[tid]}
                   for tok, tid in self._ids.items()}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")

    @classmethod
    def load_json(cls, path: str) -> "Vocabulary":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        vocab = cls()
        for token, entry in sorted(payload.items(), key=lambda kv: kv[1]["id"]):
            tid = vocab.add(token, count=entry["count"])
            if tid != entry["id"]:
                raise VocabularyError(f"{path}: non-dense ids around {token!r}")
        return vocab


def build_vocabulary(documents: list[PatternDocument]) -> Vocabulary:
    return Vocabulary.from_documents(documents)


def prune_min_count(documents: list[PatternDocument], vocab: Vocabulary,
                    min_count: int) -> tuple[list[PatternDocument], Vocabulary]:
    """Drop tokens rarer than `min_count` and rebuild the vocabulary.

    min_count <= 1 returns the inputs unchanged.
    """
    if min_count <= 1:
        return documents, vocab
    kept = [PatternDocument(doc.graph_id,
                            [t for t in doc.tokens if vocab.count_of(t) >= min_count])
            for doc in documents]
    return kept, build_vocabulary(kept)


def save_documents(documents: list[PatternDocument], directory: str,
                   extension: str) -> list[str]:
    """Write one `<graph_id>.<extension>` file per document.

    Tokens are single-space separated with a trailing newline.
    """
    paths = []
    for doc in documents:
        path = os.path.join(directory, f"{doc.graph_id}.{extension}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(" ".join(doc.tokens))
            fh.write("\n")
        paths.append(path)
    return paths


def load_documents(directory: str, extension: str) -> list[PatternDocument]:
    """Load all `*.{extension}` documents from a directory.

    Files are ordered by integer stem when every stem is numeric (the
    convention produced by `format_dataset`), lexicographically otherwise.
    """
    suffix = f".{extension}"
    stems = [name[:-len(suffix)] for name in os.listdir(directory)
             if name.endswith(suffix)]
    if not stems:
        raise FileNotFoundError(
            f"no *{suffix} documents in {directory} "
            f"(contains: {sorted(os.listdir(directory))[:8]}...)")
    stems.sort(key=(lambda s: int(s)) if all(s.isdigit() for s in stems) else str)
    documents = []
    for stem in stems:
        with open(os.path.join(directory, stem + suffix), encoding="utf-8") as fh:
            documents.append(PatternDocument(stem, fh.read().split()))
    return documents
