import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctxcat.corpus import Document, LabeledCorpus
from ctxcat.evaluation import (
    EvaluationError,
    counts_from_confusion,
    evaluate,
    f_measure,
    format_delimited,
    format_text,
    precision,
    recall,
    report_from_confusion,
    report_from_labels,
)
from ctxcat.training import train_model

unit = st.floats(0, 1)


class TestMetrics:
    def test_precision(self):
        assert precision(7, 3) == 0.7
        assert precision(0, 0) == 0
        assert precision(5, 0) == 1.0

    def test_recall(self):
        assert recall(7, 7) == 0.5
        assert recall(0, 4) == 0
        assert recall(11, 0) == 1.0

    def test_f_measure_reported_rows(self):
        assert f_measure(0.625, 0.5) == pytest.approx(0.5556, abs=1e-4)
        assert f_measure(0.8462, 0.4889) == pytest.approx(0.6197, abs=1e-4)
        assert f_measure(0.7795, 0.7795) == pytest.approx(0.7795)

    def test_f_zero(self):
        assert f_measure(0, 0) == 0

    @given(unit, unit)
    def test_f_symmetric_and_bounded(self, p, r):
        f = f_measure(p, r)
        assert f == f_measure(r, p)
        assert 0 <= f <= 1
        if p > 0 and r > 0:
            assert min(p, r) - 1e-12 <= f <= max(p, r) + 1e-12

    @given(unit)
    def test_f_equal_inputs(self, p):
        assert f_measure(p, p) == pytest.approx(p)


class TestReport:
    def test_single_wrong_prediction(self):
        rep = report_from_labels(("c", "c2"), ["c"], ["c2"])
        assert rep.metrics["c"].counts.fn == 1 and rep.metrics["c"].recall == 0
        assert rep.metrics["c2"].counts.fp == 1 and rep.metrics["c2"].precision == 0

    def test_unknown_label(self):
        with pytest.raises(EvaluationError, match="unknown label: z"):
            report_from_labels(("a",), ["z"], ["a"])

    def test_interest_row_fixture(self):
        # tp=5, fp=3, fn=5 -> P=0.625, R=0.5
        confusion = np.array([[5, 5], [3, 7]])
        rep = report_from_confusion(("interest", "other"), confusion)
        m = rep.metrics["interest"]
        assert (m.precision, m.recall) == (0.625, 0.5)
        assert "interest\t0.6250\t0.5000\t0.5556" in format_delimited(rep)

    @given(st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from("abc")), min_size=1, max_size=40))
    def test_invariants(self, pairs):
        truth, pred = zip(*pairs)
        rep = report_from_labels(("a", "b", "c"), truth, pred)
        n = len(pairs)
        assert rep.n_documents == n
        correct = sum(t == p for t, p in pairs)
        assert sum(m.counts.tp for m in rep.metrics.values()) == correct
        assert sum(m.counts.tp + m.counts.fp for m in rep.metrics.values()) == n
        for i, cat in enumerate(rep.categories):
            c = rep.metrics[cat].counts
            assert c.tp + c.fp + c.fn + c.tn == n
            assert rep.confusion[i].sum() == truth.count(cat)
            assert counts_from_confusion(rep.confusion, i) == c
        again = report_from_confusion(rep.categories, rep.confusion)
        assert again.metrics == rep.metrics
        for m in rep.metrics.values():
            assert 0 <= m.precision <= 1 and 0 <= m.recall <= 1 and 0 <= m.f_measure <= 1

    def test_text_format(self):
        rep = report_from_labels(("a", "b"), ["a", "b"], ["a", "a"])
        text = format_text(rep)
        assert "macro avg" in text and "accuracy: 0.5000" in text


def corpus(spec):
    docs = tuple((Document(f"{ctx}/{i}", text), ctx) for ctx, texts in spec.items() for i, text in enumerate(texts))
    return LabeledCorpus(tuple(spec), docs)


def test_perfect_model():
    train = corpus({"chess": ["King queen. Rook king."], "golf": ["Putt green. Birdie putt."]})
    test = corpus({"chess": ["Queen and king."], "golf": ["Green putt."]})
    rep = evaluate(train_model(train), test)
    for m in rep.metrics.values():
        assert (m.precision, m.recall, m.f_measure) == (1.0, 1.0, 1.0)


def test_unknown_test_label():
    train = corpus({"chess": ["King queen."]})
    with pytest.raises(EvaluationError, match="unknown test label: golf"):
        evaluate(train_model(train), corpus({"golf": ["Putt."]}))


def test_zero_confidence_counts_as_tie_break():
    train = corpus({"chess": ["King queen."], "golf": ["Putt green."]})
    test = corpus({"golf": ["Zebra giraffe.", "The and."]})
    rep = evaluate(train_model(train), test)
    # both documents fall to the first context by name
    assert rep.confusion.tolist() == [[0, 0], [2, 0]]
