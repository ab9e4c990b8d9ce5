"""Context-based text categorization with frequent-itemset features."""

from ctxcat.classification import Prediction, build_cfm, context_scores, predict
from ctxcat.corpus import Document, LabeledCorpus, TokenConfig, TransactionDatabase, load_labeled_corpus
from ctxcat.evaluation import EvalReport, evaluate, f_measure, precision, recall
from ctxcat.mining import MiningParams, apriori, diffset_mine, mine, msapriori, rsapriori
from ctxcat.modelfile import load_model, read_model, save_model, write_model
from ctxcat.training import ContextModel, train_model

__all__ = [
    "ContextModel",
    "Document",
    "EvalReport",
    "LabeledCorpus",
    "MiningParams",
    "Prediction",
    "TokenConfig",
    "TransactionDatabase",
    "apriori",
    "build_cfm",
    "context_scores",
    "diffset_mine",
    "evaluate",
    "f_measure",
    "load_labeled_corpus",
    "load_model",
    "mine",
    "msapriori",
    "precision",
    "predict",
    "read_model",
    "recall",
    "rsapriori",
    "save_model",
    "train_model",
    "write_model",
]
