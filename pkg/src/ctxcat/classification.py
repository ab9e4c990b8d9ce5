"""Context discovery for unseen documents.

The query document is mined with the model's own parameters; its distinct
terms index the columns of a context-feature matrix whose entries are the
trained scores (0 where a context never saw the term). Each row sum is a
context score and the largest one wins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ctxcat.corpus import Document, build_transactions, preprocess
from ctxcat.mining import extract_features, mine
from ctxcat.training import ContextModel


class NoFeaturesError(ValueError):
    pass


@dataclass(frozen=True)
class ContextFeatureMatrix:
    contexts: tuple[str, ...]
    features: tuple[str, ...]
    values: np.ndarray

    def column(self, feature: str) -> np.ndarray:
        return self.values[:, self.features.index(feature)]


@dataclass(frozen=True)
class Prediction:
    best_context: str
    ranking: tuple[tuple[str, float], ...]
    zero_confidence: bool = False
    tie: bool = False

    @property
    def best_score(self) -> float:
        return self.ranking[0][1]


def extract_query_features(doc: Document, model: ContextModel) -> tuple[str, ...]:
    if doc.sentences is None:
        doc = preprocess(doc, model.token_config)
    db = build_transactions(doc)
    if len(db) == 0:
        raise NoFeaturesError(f"no features extracted from {doc.id}")
    features = extract_features(mine(db, model.params))
    if not features:
        raise NoFeaturesError(f"no features extracted from {doc.id}")
    return tuple(features)


def build_cfm(features, model: ContextModel) -> ContextFeatureMatrix:
    features = tuple(features)
    values = np.zeros((len(model.contexts), len(features)))
    for i, ctx in enumerate(model.contexts):
        table = model.tables[ctx]
        for j, f in enumerate(features):
            values[i, j] = table.score(f)
    return ContextFeatureMatrix(model.contexts, features, values)


def context_scores(cfm: ContextFeatureMatrix) -> dict[str, float]:
    # plain left-to-right sums keep results independent of BLAS reduction order
    return {ctx: float(sum(row.tolist(), 0.0)) for ctx, row in zip(cfm.contexts, cfm.values)}


def rank_contexts(scores: dict[str, float]) -> Prediction:
    """Order by score descending, ties by context name."""
    ranking = tuple(sorted(scores.items(), key=lambda kv: (-kv[1], kv[0])))
    best, top = ranking[0]
    tie = len(ranking) > 1 and ranking[1][1] == top
    return Prediction(best, ranking, zero_confidence=(top == 0.0), tie=tie)


def predict(doc: Document, model: ContextModel) -> Prediction:
    cfm = build_cfm(extract_query_features(doc, model), model)
    return rank_contexts(context_scores(cfm))
