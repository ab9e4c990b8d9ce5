"""Command-line interface: ``train``, ``classify``, ``evaluate``, ``mine``.

Exit status is 0 on success, 1 on user or data errors, 2 when an internal
invariant fails. ``CTXCAT_LOG`` sets the log level; nothing else is read
from the environment.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from ctxcat.classification import NoFeaturesError, predict
from ctxcat.corpus import (
    CorpusError,
    TokenConfig,
    TransactionDatabase,
    load_labeled_corpus,
    load_stopwords,
    read_document,
)
from ctxcat.evaluation import EvaluationError, evaluate, format_delimited, format_text
from ctxcat.mining import ALGORITHMS, MINERS, MiningError, MiningParams
from ctxcat.modelfile import ModelFormatError, read_model, write_model
from ctxcat.training import TrainingError, train_model

log = logging.getLogger("ctxcat")

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


class _Once(argparse.Action):
    """Store a value, rejecting a second occurrence of the same option."""

    def __call__(self, parser, namespace, values, option_string=None):
        seen = namespace.__dict__.setdefault("_seen", set())
        if self.dest in seen:
            parser.error(f"{option_string} given more than once")
        seen.add(self.dest)
        setattr(namespace, self.dest, values)


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"must be in [0, 1]: {text}")
    return value


def _add_mining_flags(p: argparse.ArgumentParser) -> None:
    defaults = MiningParams()
    p.add_argument("--algorithm", choices=ALGORITHMS, default=defaults.algorithm, action=_Once)
    p.add_argument("--min-support", type=_fraction, default=defaults.min_support, action=_Once)
    p.add_argument("--rare-min-support", type=_fraction, default=defaults.rare_min_support, action=_Once)
    p.add_argument("--relative-support", type=_fraction, default=defaults.relative_support, action=_Once)
    p.add_argument("--mis-beta", type=_fraction, default=defaults.mis_beta, action=_Once)
    p.add_argument("--mis-floor", type=_fraction, default=defaults.mis_floor, action=_Once)
    p.add_argument("--max-itemset-size", type=int, default=None, action=_Once)


def _mining_params(args) -> MiningParams:
    return MiningParams(
        algorithm=args.algorithm,
        min_support=args.min_support,
        rare_min_support=args.rare_min_support,
        relative_support=args.relative_support,
        mis_beta=args.mis_beta,
        mis_floor=args.mis_floor,
        max_itemset_size=args.max_itemset_size,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="ctxcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("train", help="learn per-context feature scores from a labeled corpus")
    p.add_argument("--corpus", required=True, action=_Once, help="directory of <context>/<doc>.txt")
    p.add_argument("--model", required=True, action=_Once, help="output model file")
    p.add_argument("--stopwords", action=_Once, help="stopword file (default: bundled English list)")
    p.add_argument("--min-token-length", type=int, default=2, action=_Once)
    _add_mining_flags(p)

    p = sub.add_parser("classify", help="assign a context to each document")
    p.add_argument("--model", required=True, action=_Once)
    p.add_argument("--ranking", action="store_true", help="also print every context's score")
    p.add_argument("documents", nargs="+")

    p = sub.add_parser("evaluate", help="precision/recall/F-measure on a labeled test corpus")
    p.add_argument("--model", required=True, action=_Once)
    p.add_argument("--corpus", required=True, action=_Once)
    p.add_argument("--report", action=_Once, help="also write a tab-separated report here")

    p = sub.add_parser("mine", help="mine frequent itemsets from a transaction file")
    p.add_argument("transactions", help="one transaction per line, items separated by whitespace")
    p.add_argument("--bench", action="store_true", help="time all four algorithms on the input")
    _add_mining_flags(p)
    return parser


def read_transaction_file(path: str | Path) -> TransactionDatabase:
    rows = []
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                raise UsageError(f"{path}:{lineno}: malformed line (invalid UTF-8)") from None
            line = line.rstrip("\r\n")
            if any(not c.isprintable() and not c.isspace() for c in line):
                raise UsageError(f"{path}:{lineno}: malformed line (control character)")
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            rows.append(stripped.split())
    if not rows:
        raise UsageError(f"{path}: no transactions")
    return TransactionDatabase(rows)


def _format_itemsets(fis, db) -> list[str]:
    named = sorted(
        ((tuple(sorted(db.terms_of(s.items))), s.support_count) for s in fis),
        key=lambda x: (len(x[0]), x[0]),
    )
    return [f"{count}\t{' '.join(terms)}" for terms, count in named]


def cmd_train(args, out) -> int:
    stopwords = load_stopwords(args.stopwords)
    token_config = TokenConfig(min_length=args.min_token_length, stopwords=stopwords)
    params = _mining_params(args)
    corpus = load_labeled_corpus(args.corpus)
    model = train_model(corpus, params, token_config)
    write_model(args.model, model)
    for ctx in model.contexts:
        out.write(f"{ctx}\t{len(model.tables[ctx])} features\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    model = read_model(args.model)
    for path in args.documents:
        try:
            pred = predict(read_document(path), model)
        except (NoFeaturesError, CorpusError) as exc:
            log.warning("%s", exc)
            out.write(f"{path}\tUNCLASSIFIABLE\t0\n")
            continue
        line = f"{path}\t{pred.best_context}\t{pred.best_score:.6f}"
        if pred.tie:
            line += "\ttie"
        out.write(line + "\n")
        if args.ranking:
            for rank, (ctx, score) in enumerate(pred.ranking, start=1):
                out.write(f"{path}\t#{rank}\t{ctx}\t{score:.6f}\n")
    return EXIT_OK


def cmd_evaluate(args, out) -> int:
    model = read_model(args.model)
    test = load_labeled_corpus(args.corpus)
    report = evaluate(model, test)
    out.write(format_text(report))
    if args.report:
        Path(args.report).write_text(format_delimited(report), encoding="utf-8")
    return EXIT_OK


def cmd_mine(args, out) -> int:
    db = read_transaction_file(args.transactions)
    params = _mining_params(args)
    if not args.bench:
        fis = MINERS[params.algorithm](db, params)
        for line in _format_itemsets(fis, db):
            out.write(line + "\n")
        return EXIT_OK

    results = {}
    out.write(f"transactions\t{len(db)}\titems\t{db.vocabulary_size}\n")
    out.write("algorithm\titemsets\tseconds\n")
    for name in ALGORITHMS:
        start = time.perf_counter()
        fis = MINERS[name](db, params)
        elapsed = time.perf_counter() - start
        results[name] = fis
        out.write(f"{name}\t{len(fis)}\t{elapsed:.4f}\n")
    same = results["apriori"].counts() == results["diffset"].counts()
    out.write(f"apriori=diffset\t{'EQUAL' if same else 'DIFFERENT'}\n")
    contained = results["apriori"].counts().items() <= results["rsapriori"].counts().items()
    out.write(f"rsapriori>=apriori\t{'YES' if contained else 'NO'}\n")
    return EXIT_OK if same and contained else EXIT_INTERNAL


COMMANDS = {"train": cmd_train, "classify": cmd_classify, "evaluate": cmd_evaluate, "mine": cmd_mine}


def main(argv=None, out=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("CTXCAT_LOG", "WARNING").upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USER
    try:
        return COMMANDS[args.command](args, out)
    except (
        UsageError,
        CorpusError,
        MiningError,
        TrainingError,
        EvaluationError,
        ModelFormatError,
        ValueError,
        OSError,
    ) as exc:
        print(f"ctxcat {args.command}: {exc}", file=sys.stderr)
        return EXIT_USER
    except Exception as exc:  # invariant violation
        log.exception("internal error")
        print(f"ctxcat {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
