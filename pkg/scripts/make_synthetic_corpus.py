"""Write a generated train/test corpus in the <root>/<context>/<doc>.txt layout.

    python scripts/make_synthetic_corpus.py markers data/
    ctxcat train --corpus data/train --model m.ctx
    ctxcat evaluate --model m.ctx --corpus data/test
"""

import argparse
import random
from pathlib import Path

from ctxcat.synthetic import make_corpus, marker_vocabularies, shared_vocabularies, write_corpus

KINDS = {"markers": marker_vocabularies, "shared": shared_vocabularies}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("kind", choices=sorted(KINDS))
    ap.add_argument("root", type=Path)
    ap.add_argument("--train-docs", type=int, default=10, help="documents per context")
    ap.add_argument("--test-docs", type=int, default=10)
    ap.add_argument("--sentences", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    vocabs = KINDS[args.kind]()
    write_corpus(make_corpus(rng, vocabs, args.train_docs, args.sentences), args.root / "train")
    write_corpus(make_corpus(rng, vocabs, args.test_docs, args.sentences, prefix="test"), args.root / "test")
    print(f"wrote {len(vocabs)} contexts under {args.root}")


if __name__ == "__main__":
    main()
