"""Precision, recall and F-measure per context, one-vs-rest from single-label predictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ctxcat.classification import NoFeaturesError, predict, rank_contexts
from ctxcat.corpus import LabeledCorpus
from ctxcat.training import ContextModel


class EvaluationError(ValueError):
    pass


def precision(tp: int, fp: int) -> float:
    return tp / (tp + fp) if tp + fp else 0.0


def recall(tp: int, fn: int) -> float:
    return tp / (tp + fn) if tp + fn else 0.0


def f_measure(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r else 0.0


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int


@dataclass(frozen=True)
class CategoryMetrics:
    counts: ConfusionCounts
    precision: float
    recall: float
    f_measure: float


@dataclass(frozen=True)
class EvalReport:
    categories: tuple[str, ...]
    confusion: np.ndarray  # rows: true label, columns: predicted label
    metrics: dict[str, CategoryMetrics]
    n_documents: int

    @property
    def macro_precision(self) -> float:
        return _mean(m.precision for m in self.metrics.values())

    @property
    def macro_recall(self) -> float:
        return _mean(m.recall for m in self.metrics.values())

    @property
    def macro_f_measure(self) -> float:
        return _mean(m.f_measure for m in self.metrics.values())

    @property
    def accuracy(self) -> float:
        return int(np.trace(self.confusion)) / self.n_documents if self.n_documents else 0.0


def _mean(xs) -> float:
    xs = list(xs)
    return sum(xs) / len(xs) if xs else 0.0


def counts_from_confusion(confusion: np.ndarray, index: int) -> ConfusionCounts:
    tp = int(confusion[index, index])
    fp = int(confusion[:, index].sum()) - tp
    fn = int(confusion[index, :].sum()) - tp
    tn = int(confusion.sum()) - tp - fp - fn
    return ConfusionCounts(tp, fp, fn, tn)


def report_from_confusion(categories: Sequence[str], confusion: np.ndarray) -> EvalReport:
    categories = tuple(categories)
    confusion = np.asarray(confusion, dtype=np.int64)
    metrics = {}
    for idx, cat in enumerate(categories):
        c = counts_from_confusion(confusion, idx)
        p, r = precision(c.tp, c.fp), recall(c.tp, c.fn)
        metrics[cat] = CategoryMetrics(c, p, r, f_measure(p, r))
    return EvalReport(categories, confusion, metrics, int(confusion.sum()))


def report_from_labels(categories: Sequence[str], truth: Sequence[str], predicted: Sequence[str]) -> EvalReport:
    categories = tuple(categories)
    index = {c: i for i, c in enumerate(categories)}
    confusion = np.zeros((len(categories), len(categories)), dtype=np.int64)
    for t, p in zip(truth, predicted, strict=True):
        for label in (t, p):
            if label not in index:
                raise EvaluationError(f"unknown label: {label}")
        confusion[index[t], index[p]] += 1
    return report_from_confusion(categories, confusion)


def evaluate(model: ContextModel, test: LabeledCorpus) -> EvalReport:
    """Classify every test document and tabulate per-context metrics.

    A document with no minable features is scored as an all-zero row, so it
    falls to the tie-break context like any other zero-confidence prediction.
    """
    unknown = sorted(set(test.contexts) - set(model.contexts))
    if unknown:
        raise EvaluationError(f"unknown test label: {', '.join(unknown)}")
    truth, predicted = [], []
    for doc, label in test.documents:
        try:
            pred = predict(doc, model)
        except NoFeaturesError:
            pred = rank_contexts(dict.fromkeys(model.contexts, 0.0))
        truth.append(label)
        predicted.append(pred.best_context)
    return report_from_labels(model.contexts, truth, predicted)


def format_text(report: EvalReport) -> str:
    width = max([len(c) for c in report.categories] + [len("macro avg")])
    lines = [f"{'context':<{width}}  {'precision':>9}  {'recall':>9}  {'f-measure':>9}  {'support':>7}"]
    for cat in report.categories:
        m = report.metrics[cat]
        n_true = m.counts.tp + m.counts.fn
        lines.append(f"{cat:<{width}}  {m.precision:>9.4f}  {m.recall:>9.4f}  {m.f_measure:>9.4f}  {n_true:>7d}")
    lines.append(
        f"{'macro avg':<{width}}  {report.macro_precision:>9.4f}  {report.macro_recall:>9.4f}"
        f"  {report.macro_f_measure:>9.4f}  {report.n_documents:>7d}"
    )
    lines.append(f"accuracy: {report.accuracy:.4f} ({report.n_documents} documents)")
    return "\n".join(lines) + "\n"


def format_delimited(report: EvalReport, sep: str = "\t") -> str:
    rows = [sep.join(("category", "precision", "recall", "f_measure"))]
    for cat in report.categories:
        m = report.metrics[cat]
        rows.append(sep.join((cat, f"{m.precision:.4f}", f"{m.recall:.4f}", f"{m.f_measure:.4f}")))
    return "\n".join(rows) + "\n"
