"""Document ingestion: sentence segmentation, tokenization, transaction databases.

Each sentence of a document becomes one transaction whose items are the
distinct terms of that sentence.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

_SENTENCE_END = re.compile(r"[.!?]+")
_NON_ALNUM = re.compile(r"[\W_]+")


class CorpusError(Exception):
    """Base class for corpus loading failures."""

    def __init__(self, message: str, path: str | Path | None = None):
        super().__init__(message)
        self.path = None if path is None else str(path)


class CorpusRootNotFound(CorpusError):
    pass


class EmptyContextError(CorpusError):
    pass


class UnreadableDocumentError(CorpusError):
    pass


def parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line.lower())
    return frozenset(words)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file; ``None`` loads the bundled English list."""
    if path is None:
        text = resources.files("ctxcat").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_stopwords(text)


@dataclass(frozen=True)
class TokenConfig:
    min_length: int = 2
    stopwords: frozenset[str] = field(default_factory=load_stopwords)

    def __post_init__(self):
        if self.min_length < 1:
            raise ValueError(f"min_length must be >= 1, got {self.min_length}")
        for w in self.stopwords:
            if not w or any(c.isspace() for c in w):
                raise ValueError(f"invalid stopword {w!r}")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    sentences: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be nonempty")


@dataclass(frozen=True)
class LabeledCorpus:
    contexts: tuple[str, ...]
    documents: tuple[tuple[Document, str], ...]

    def __post_init__(self):
        known = set(self.contexts)
        seen_ids = set()
        for doc, label in self.documents:
            if label not in known:
                raise ValueError(f"document {doc.id!r} has unknown context {label!r}")
            if doc.id in seen_ids:
                raise ValueError(f"duplicate document id {doc.id!r}")
            seen_ids.add(doc.id)
        for ctx in self.contexts:
            if not any(label == ctx for _, label in self.documents):
                raise ValueError(f"empty context: {ctx}")

    def documents_of(self, context: str) -> list[Document]:
        return [doc for doc, label in self.documents if label == context]


def segment_sentences(text: str) -> list[str]:
    """Split on runs of ``.``, ``!``, ``?``; unterminated trailing text is kept."""
    parts = (p.strip() for p in _SENTENCE_END.split(text))
    return [p for p in parts if p]


def tokenize(sentence: str, config: TokenConfig | None = None) -> list[str]:
    if config is None:
        config = DEFAULT_TOKEN_CONFIG
    tokens = []
    for tok in _NON_ALNUM.split(sentence.lower()):
        if len(tok) < config.min_length or tok in config.stopwords:
            continue
        tokens.append(tok)
    return tokens


def preprocess(doc: Document, config: TokenConfig | None = None) -> Document:
    sentences = tuple(tuple(tokenize(s, config)) for s in segment_sentences(doc.text))
    return dataclasses.replace(doc, sentences=sentences)


class TransactionDatabase:
    """Term vocabulary plus an ordered list of sentence transactions.

    Item ids are dense and assigned in order of first appearance, so the
    same token stream always yields the same ids.
    """

    def __init__(self, sentences: Iterable[Iterable[str]] = ()):
        self._terms: list[str] = []
        self._ids: dict[str, int] = {}
        transactions = []
        for tokens in sentences:
            items = []
            seen = set()
            for term in tokens:
                item = self._ids.get(term)
                if item is None:
                    item = len(self._terms)
                    self._ids[term] = item
                    self._terms.append(term)
                if item not in seen:
                    seen.add(item)
                    items.append(item)
            if items:
                transactions.append(frozenset(items))
        self.transactions: tuple[frozenset[int], ...] = tuple(transactions)

    def __len__(self) -> int:
        return len(self.transactions)

    def __repr__(self) -> str:
        return f"TransactionDatabase({len(self._terms)} terms, {len(self)} transactions)"

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(self._terms)

    @property
    def vocabulary_size(self) -> int:
        return len(self._terms)

    def term(self, item: int) -> str:
        return self._terms[item]

    def item(self, term: str) -> int:
        return self._ids[term]

    def items_of(self, terms: Iterable[str]) -> frozenset[int]:
        return frozenset(self._ids[t] for t in terms)

    def terms_of(self, items: Iterable[int]) -> tuple[str, ...]:
        return tuple(self._terms[i] for i in items)

    def item_counts(self) -> list[int]:
        counts = [0] * len(self._terms)
        for t in self.transactions:
            for i in t:
                counts[i] += 1
        return counts


def _require_sentences(doc: Document) -> tuple[tuple[str, ...], ...]:
    if doc.sentences is None:
        raise ValueError(f"document {doc.id!r} has not been preprocessed")
    return doc.sentences


def build_transactions(doc: Document) -> TransactionDatabase:
    return TransactionDatabase(_require_sentences(doc))


def build_cluster_transactions(docs: Sequence[Document]) -> TransactionDatabase:
    return TransactionDatabase(s for doc in docs for s in _require_sentences(doc))


def read_document(path: str | Path, doc_id: str | None = None) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableDocumentError(f"unreadable document: {path} ({exc})", path) from exc
    return Document(doc_id or str(path), text)


def load_labeled_corpus(root: str | Path) -> LabeledCorpus:
    """Load ``<root>/<context>/<doc>.txt``; contexts and files are sorted by name."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusRootNotFound(f"corpus root not found: {root}", root)
    context_dirs = sorted(
        (p for p in root.iterdir() if p.is_dir() and not p.name.startswith(".")),
        key=lambda p: p.name,
    )
    if not context_dirs:
        raise CorpusError(f"no context directories in corpus root: {root}", root)
    contexts = []
    documents = []
    for cdir in context_dirs:
        files = sorted(
            (p for p in cdir.iterdir() if p.is_file() and p.suffix == ".txt" and not p.name.startswith(".")),
            key=lambda p: p.name,
        )
        if not files:
            raise EmptyContextError(f"empty context: {cdir.name}", cdir)
        contexts.append(cdir.name)
        for f in files:
            documents.append((read_document(f, f"{cdir.name}/{f.name}"), cdir.name))
    return LabeledCorpus(tuple(contexts), tuple(documents))


DEFAULT_TOKEN_CONFIG = TokenConfig()
