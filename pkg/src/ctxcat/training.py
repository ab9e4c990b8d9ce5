"""Per-context feature score tables.

For each document of a context: mine its sentence transactions, rank the
mined terms by how many sentences contain them, weight each term by its
rank group (1 - gamma/n), and fold that weight into the context's running
mean for the term. Means are accumulated as exact rationals so the result
does not depend on document order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Mapping, Sequence

from ctxcat.corpus import (
    DEFAULT_TOKEN_CONFIG,
    Document,
    LabeledCorpus,
    TokenConfig,
    build_transactions,
    preprocess,
)
from ctxcat.mining import MiningParams, extract_features, mine


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class FrequencyGroup:
    frequency: int
    features: tuple[str, ...]
    index: int


@dataclass(frozen=True)
class FeatureScore:
    score: float
    doc_frequency: int
    weight_sum: Fraction = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0 < self.score <= 1:
            raise TrainingError(f"score out of (0, 1]: {self.score}")
        if self.doc_frequency < 1:
            raise TrainingError(f"doc_frequency must be >= 1, got {self.doc_frequency}")
        if self.weight_sum is None:
            object.__setattr__(self, "weight_sum", Fraction(self.score) * self.doc_frequency)


@dataclass(frozen=True)
class FeatureScoreTable:
    context: str
    entries: Mapping[str, FeatureScore]

    def __len__(self) -> int:
        return len(self.entries)

    def score(self, feature: str) -> float:
        entry = self.entries.get(feature)
        return 0.0 if entry is None else entry.score


@dataclass(frozen=True)
class ContextModel:
    contexts: tuple[str, ...]
    tables: Mapping[str, FeatureScoreTable]
    params: MiningParams = MiningParams()
    token_config: TokenConfig = DEFAULT_TOKEN_CONFIG

    def __post_init__(self):
        if len(set(self.contexts)) != len(self.contexts):
            raise TrainingError("duplicate context names")
        if set(self.contexts) != set(self.tables):
            raise TrainingError("tables must match contexts one-to-one")


def _ensure_preprocessed(doc: Document, config: TokenConfig) -> Document:
    return doc if doc.sentences is not None else preprocess(doc, config)


def document_features(doc: Document, params: MiningParams) -> tuple[list[str], dict[str, int]]:
    """Mined terms of one document and, for each, the number of its sentences containing it."""
    db = build_transactions(doc)
    if len(db) == 0:
        return [], {}
    features = extract_features(mine(db, params))
    counts = db.item_counts()
    return features, {f: counts[db.item(f)] for f in features}


def group_by_frequency(freqs: Mapping[str, int]) -> list[FrequencyGroup]:
    """One group per distinct frequency, highest frequency first (index 0)."""
    by_freq: dict[int, list[str]] = {}
    for feature, f in freqs.items():
        if f < 1:
            raise TrainingError(f"frequency of {feature!r} must be >= 1, got {f}")
        by_freq.setdefault(f, []).append(feature)
    ordered = sorted(by_freq, reverse=True)
    return [FrequencyGroup(f, tuple(sorted(by_freq[f])), idx) for idx, f in enumerate(ordered)]


def feature_weight(gamma: int, n: int) -> Fraction:
    """Weight 1 - gamma/n of a feature in rank group ``gamma`` out of ``n`` groups."""
    if n < 1 or not 0 <= gamma < n:
        raise TrainingError(f"index out of range: gamma={gamma}, n={n}")
    return 1 - Fraction(gamma, n)


def update_score(prev: FeatureScore | None, weight: Real) -> FeatureScore:
    """Fold one more document's weight into a feature's running mean."""
    w = Fraction(weight)
    if not 0 < w <= 1:
        raise TrainingError(f"weight out of (0, 1]: {weight}")
    if prev is None:
        total, d = w, 1
    else:
        total, d = prev.weight_sum + w, prev.doc_frequency + 1
    return FeatureScore(float(total / d), d, total)


def train_context(
    docs: Sequence[Document],
    context: str,
    params: MiningParams,
    token_config: TokenConfig = DEFAULT_TOKEN_CONFIG,
) -> FeatureScoreTable:
    if not docs:
        raise TrainingError(f"empty context: {context}")
    entries: dict[str, FeatureScore] = {}
    for doc in docs:
        doc = _ensure_preprocessed(doc, token_config)
        _, freqs = document_features(doc, params)
        groups = group_by_frequency(freqs)
        for group in groups:
            w = feature_weight(group.index, len(groups))
            for feature in group.features:
                entries[feature] = update_score(entries.get(feature), w)
    return FeatureScoreTable(context, dict(sorted(entries.items())))


def train_model(
    corpus: LabeledCorpus,
    params: MiningParams = MiningParams(),
    token_config: TokenConfig = DEFAULT_TOKEN_CONFIG,
) -> ContextModel:
    contexts = tuple(sorted(corpus.contexts))
    tables = {}
    for ctx in contexts:
        try:
            tables[ctx] = train_context(corpus.documents_of(ctx), ctx, params, token_config)
        except TrainingError as exc:
            raise TrainingError(f"context {ctx}: {exc}") from exc
    return ContextModel(contexts, tables, params, token_config)
