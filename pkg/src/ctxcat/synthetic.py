"""Generated corpora and transaction databases for experiments and tests."""

from __future__ import annotations

import random
from pathlib import Path
from typing import Sequence

from ctxcat.corpus import Document, LabeledCorpus, TransactionDatabase


def _sentence(rng: random.Random, vocab: Sequence[tuple[str, float]]) -> str:
    words = [w for w, p in vocab if rng.random() < p]
    if not words:
        words = [rng.choice(vocab)[0]]
    rng.shuffle(words)
    return " ".join(words) + "."


def make_document(rng: random.Random, doc_id: str, vocab: Sequence[tuple[str, float]], n_sentences: int) -> Document:
    """Each sentence includes each (term, probability) pair independently."""
    return Document(doc_id, " ".join(_sentence(rng, vocab) for _ in range(n_sentences)))


def marker_vocabularies(
    n_contexts: int = 4,
    n_markers: int = 5,
    n_noise: int = 10,
    marker_p: float = 0.6,
    noise_p: float = 0.15,
) -> dict[str, list[tuple[str, float]]]:
    """Each context owns ``n_markers`` unique terms; all contexts share the noise terms."""
    noise = [(f"noise{j}", noise_p) for j in range(n_noise)]
    vocabs = {}
    for c in range(n_contexts):
        name = f"ctx{c}"
        markers = [(f"{name}marker{j}", marker_p) for j in range(n_markers)]
        vocabs[name] = markers + noise
    return vocabs


def shared_vocabularies(n_terms: int = 10, high_p: float = 0.5, low_p: float = 0.04) -> dict[str, list[tuple[str, float]]]:
    """Two contexts over one vocabulary, with the frequent and infrequent halves swapped."""
    terms = [f"term{j}" for j in range(n_terms)]
    half = n_terms // 2
    return {
        "alpha": [(t, high_p if j < half else low_p) for j, t in enumerate(terms)],
        "beta": [(t, low_p if j < half else high_p) for j, t in enumerate(terms)],
    }


def make_corpus(
    rng: random.Random,
    vocabs: dict[str, list[tuple[str, float]]],
    docs_per_context: int,
    sentences_per_doc: int = 12,
    prefix: str = "doc",
) -> LabeledCorpus:
    docs = []
    for ctx in sorted(vocabs):
        for k in range(docs_per_context):
            doc = make_document(rng, f"{ctx}/{prefix}{k:03d}.txt", vocabs[ctx], sentences_per_doc)
            docs.append((doc, ctx))
    return LabeledCorpus(tuple(sorted(vocabs)), tuple(docs))


def write_corpus(corpus: LabeledCorpus, root: str | Path) -> Path:
    """Write in the ``<root>/<context>/<doc>.txt`` layout; doc ids must be ``<context>/<file>``."""
    root = Path(root)
    for doc, ctx in corpus.documents:
        path = root / doc.id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(doc.text, encoding="utf-8")
    return root


def random_database(
    rng: random.Random, n_items: int, n_transactions: int, density: float = 0.4
) -> TransactionDatabase:
    items = [f"i{j}" for j in range(n_items)]
    rows = []
    for _ in range(n_transactions):
        row = [it for it in items if rng.random() < density]
        rows.append(row or [rng.choice(items)])
    return TransactionDatabase(rows)


def zipf_database(
    rng: random.Random, n_transactions: int, vocab_size: int = 200, mean_length: int = 8, exponent: float = 1.1
) -> TransactionDatabase:
    """Sentence-like transactions with Zipf-distributed term frequencies."""
    terms = [f"w{j}" for j in range(vocab_size)]
    weights = [1.0 / (j + 1) ** exponent for j in range(vocab_size)]
    rows = []
    for _ in range(n_transactions):
        length = max(1, int(rng.expovariate(1.0 / mean_length)))
        rows.append(rng.choices(terms, weights=weights, k=length))
    return TransactionDatabase(rows)
