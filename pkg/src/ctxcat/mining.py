"""Frequent-itemset mining over sentence transactions.

Four miners share one output type:

* ``apriori``: level-wise join-and-prune.
* ``msapriori``: per-item minimum supports, MIS(i) = max(beta * supp(i), floor).
* ``rsapriori``: frequent itemsets plus rare ones with high relative support.
* ``diffset_mine``: vertical dEclat mining on diffsets.

Threshold tests are done on integer counts against exact rationals, so
``min_support=0.05`` on 100 transactions keeps an itemset seen 5 times.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Real
from typing import Callable, Iterable, Mapping

from ctxcat.corpus import TransactionDatabase

ALGORITHMS = ("apriori", "msapriori", "rsapriori", "diffset")
BRUTE_FORCE_MAX_ITEMS = 20

ItemTuple = tuple[int, ...]


class MiningError(ValueError):
    pass


def as_fraction(x: Real | str) -> Fraction:
    """Exact rational for a user threshold; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class MiningParams:
    algorithm: str = "apriori"
    min_support: float = 0.05
    rare_min_support: float = 0.03
    relative_support: float = 0.6
    mis_beta: float = 0.5
    mis_floor: float = 0.03
    max_itemset_size: int | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise MiningError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        ms = as_fraction(self.min_support)
        rare = as_fraction(self.rare_min_support)
        if not 0 < rare <= ms <= 1:
            raise MiningError(
                f"need 0 < rare_min_support <= min_support <= 1, got {self.rare_min_support}, {self.min_support}"
            )
        if not 0 < as_fraction(self.relative_support) <= 1:
            raise MiningError(f"relative_support must be in (0, 1], got {self.relative_support}")
        if not 0 <= as_fraction(self.mis_beta) <= 1:
            raise MiningError(f"mis_beta must be in [0, 1], got {self.mis_beta}")
        floor = as_fraction(self.mis_floor)
        if not 0 < floor <= ms:
            raise MiningError(f"need 0 < mis_floor <= min_support, got {self.mis_floor}")
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise MiningError(f"max_itemset_size must be >= 1, got {self.max_itemset_size}")


@dataclass(frozen=True, order=True)
class Itemset:
    items: ItemTuple
    support_count: int

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.items, self.items[1:])):
            raise ValueError(f"itemset items must be strictly ascending: {self.items}")
        if self.support_count < 0:
            raise ValueError("negative support count")

    def __len__(self) -> int:
        return len(self.items)


def _itemset_order(items: ItemTuple) -> tuple[int, ItemTuple]:
    return (len(items), items)


@dataclass(frozen=True)
class FrequentItemsetSet:
    """Mining output, ordered by (size, items). ``terms`` maps item ids to terms."""

    itemsets: tuple[Itemset, ...]
    db_size: int
    terms: tuple[str, ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[ItemTuple, int], db: TransactionDatabase) -> FrequentItemsetSet:
        ordered = sorted(counts, key=_itemset_order)
        return cls(tuple(Itemset(k, counts[k]) for k in ordered), len(db), db.terms)

    def counts(self) -> dict[ItemTuple, int]:
        return {s.items: s.support_count for s in self.itemsets}

    def support(self, itemset: Itemset) -> float:
        return itemset.support_count / self.db_size

    def __len__(self) -> int:
        return len(self.itemsets)

    def __iter__(self):
        return iter(self.itemsets)

    def __contains__(self, items) -> bool:
        return tuple(items) in self.counts()


@dataclass(frozen=True)
class AssociationRule:
    antecedent: ItemTuple
    consequent: ItemTuple
    support: float
    confidence: float


def _require_nonempty(db: TransactionDatabase) -> int:
    if len(db) == 0:
        raise MiningError("empty database")
    return len(db)


def min_count(threshold: Real, n: int) -> int:
    """Smallest integer count c with c >= threshold * n."""
    return max(1, math.ceil(as_fraction(threshold) * n))


def support_count(db: TransactionDatabase, items: Iterable[int]) -> int:
    items = frozenset(items)
    return sum(1 for t in db.transactions if items <= t)


def support(db: TransactionDatabase, items: Iterable[int]) -> float:
    n = _require_nonempty(db)
    items = frozenset(items)
    if not items:
        raise MiningError("support of the empty itemset is undefined")
    return support_count(db, items) / n


def confidence(db: TransactionDatabase, x: Iterable[int], y: Iterable[int]) -> float:
    x, y = frozenset(x), frozenset(y)
    if not x or not y:
        raise MiningError("rule sides must be nonempty")
    if x & y:
        raise MiningError("rule sides must be disjoint")
    _require_nonempty(db)
    cx = support_count(db, x)
    if cx == 0:
        raise MiningError("zero antecedent support")
    return support_count(db, x | y) / cx


# -- level-wise machinery -----------------------------------------------------


def _count_candidates(transactions, candidates: set[ItemTuple], k: int) -> dict[ItemTuple, int]:
    counts = dict.fromkeys(candidates, 0)
    live = {i for c in candidates for i in c}
    n_cand = len(candidates)
    for t in transactions:
        items = sorted(live.intersection(t))
        if len(items) < k:
            continue
        if math.comb(len(items), k) <= n_cand:
            for c in combinations(items, k):
                if c in counts:
                    counts[c] += 1
        else:
            present = set(items)
            for c in candidates:
                if present.issuperset(c):
                    counts[c] += 1
    return counts


def _join(level: Iterable[ItemTuple]) -> list[ItemTuple]:
    """Join k-itemsets sharing their first k-1 items."""
    by_prefix: dict[ItemTuple, list[int]] = defaultdict(list)
    for items in level:
        by_prefix[items[:-1]].append(items[-1])
    joined = []
    for prefix, tails in by_prefix.items():
        tails.sort()
        for a, b in combinations(tails, 2):
            joined.append(prefix + (a, b))
    return joined


def _levelwise(db: TransactionDatabase, count_floor: int, max_size: int | None) -> dict[ItemTuple, int]:
    """All itemsets with count >= count_floor."""
    found: dict[ItemTuple, int] = {}
    level = {(i,): c for i, c in enumerate(db.item_counts()) if c >= count_floor}
    k = 1
    while level:
        found.update(level)
        if max_size is not None and k >= max_size:
            break
        candidates = {
            c for c in _join(level)
            if all(c[:j] + c[j + 1:] in level for j in range(len(c) - 2))
        }
        k += 1
        if not candidates:
            break
        counts = _count_candidates(db.transactions, candidates, k)
        level = {c: n for c, n in counts.items() if n >= count_floor}
    return found


def apriori(db: TransactionDatabase, params: MiningParams) -> FrequentItemsetSet:
    n = _require_nonempty(db)
    found = _levelwise(db, min_count(params.min_support, n), params.max_itemset_size)
    return FrequentItemsetSet.from_counts(found, db)


def rsapriori(db: TransactionDatabase, params: MiningParams) -> FrequentItemsetSet:
    """Frequent itemsets, plus rare ones whose support is close to their rarest item's.

    Relative support is supp(X) / min over i in X of supp({i}). Expansion is
    pruned at the rare threshold, which is anti-monotone.
    """
    n = _require_nonempty(db)
    freq_count = min_count(params.min_support, n)
    rare_count = min_count(params.rare_min_support, n)
    rel = as_fraction(params.relative_support)
    found = _levelwise(db, rare_count, params.max_itemset_size)
    kept = {}
    for items, c in found.items():
        if c >= freq_count:
            kept[items] = c
            continue
        rarest = min(found[(i,)] for i in items)
        if Fraction(c, rarest) >= rel:
            kept[items] = c
    return FrequentItemsetSet.from_counts(kept, db)


def mis_counts(db: TransactionDatabase, params: MiningParams) -> list[Fraction]:
    """Per-item minimum support, in count units: max(beta * count(i), floor * n)."""
    n = len(db)
    beta = as_fraction(params.mis_beta)
    floor = as_fraction(params.mis_floor) * n
    return [max(beta * c, floor) for c in db.item_counts()]


def msapriori(db: TransactionDatabase, params: MiningParams) -> FrequentItemsetSet:
    """Multiple-minimum-support Apriori.

    X is kept iff count(X) >= min MIS over its items. Items are relabelled by
    ascending MIS so the first item of every candidate carries its threshold;
    subsets dropping that first item are only pruned against when the first
    two items share a MIS value.
    """
    _require_nonempty(db)
    counts = db.item_counts()
    mis = mis_counts(db, params)
    order = sorted(range(len(counts)), key=lambda i: (mis[i], i))
    rank_mis = [mis[i] for i in order]
    rank_count = [counts[i] for i in order]
    rank = {item: r for r, item in enumerate(order)}
    ranked_tx = [frozenset(rank[i] for i in t) for t in db.transactions]
    max_size = params.max_itemset_size

    found: dict[ItemTuple, int] = {}
    level = {(r,): rank_count[r] for r in range(len(order)) if rank_count[r] >= rank_mis[r]}
    found.update(level)
    k = 1
    if max_size is None or max_size >= 2:
        seeds = [r for r in range(len(order)) if rank_count[r] >= rank_mis[r]]
        candidates = {
            (a, b) for a in seeds for b in range(a + 1, len(order)) if rank_count[b] >= rank_mis[a]
        }
        k = 2
        while candidates:
            tallies = _count_candidates(ranked_tx, candidates, k)
            level = {c: n for c, n in tallies.items() if n >= rank_mis[c[0]]}
            found.update(level)
            if max_size is not None and k >= max_size:
                break
            candidates = set()
            for c in _join(level):
                same_floor = rank_mis[c[1]] == rank_mis[c[0]]
                if all(
                    c[:j] + c[j + 1:] in level
                    for j in range(len(c) - 2)
                    if j > 0 or same_floor
                ):
                    candidates.add(c)
            k += 1

    kept = {tuple(sorted(order[r] for r in items)): c for items, c in found.items()}
    return FrequentItemsetSet.from_counts(kept, db)


def diffset_mine(db: TransactionDatabase, params: MiningParams) -> FrequentItemsetSet:
    """dEclat: tidsets for single items, diffsets for every longer prefix class.

    Tidsets and diffsets are int bitmasks over transaction positions.
    """
    n = _require_nonempty(db)
    floor = min_count(params.min_support, n)
    max_size = params.max_itemset_size
    tids = [0] * db.vocabulary_size
    for pos, t in enumerate(db.transactions):
        bit = 1 << pos
        for i in t:
            tids[i] |= bit
    found: dict[ItemTuple, int] = {}

    def extend(prefix: ItemTuple, members: list[tuple[int, int, int]], top: bool) -> None:
        for idx, (xi, si, ci) in enumerate(members):
            items = prefix + (xi,)
            found[items] = ci
            if max_size is not None and len(items) >= max_size:
                continue
            child = []
            for xj, sj, _ in members[idx + 1:]:
                # top class holds tidsets: d(XY) = t(X) - t(Y); below: d(PXY) = d(PY) - d(PX)
                d = si & ~sj if top else sj & ~si
                c = ci - d.bit_count()
                if c >= floor:
                    child.append((xj, d, c))
            if child:
                extend(items, child, False)

    singles = [(i, tids[i], tids[i].bit_count()) for i in range(len(tids))]
    extend((), [m for m in singles if m[2] >= floor], True)
    return FrequentItemsetSet.from_counts(found, db)


MINERS: dict[str, Callable[[TransactionDatabase, MiningParams], FrequentItemsetSet]] = {
    "apriori": apriori,
    "msapriori": msapriori,
    "rsapriori": rsapriori,
    "diffset": diffset_mine,
}


def mine(db: TransactionDatabase, params: MiningParams) -> FrequentItemsetSet:
    return MINERS[params.algorithm](db, params)


def generate_rules(
    fis: FrequentItemsetSet, db: TransactionDatabase, min_confidence: Real = 0.0
) -> list[AssociationRule]:
    """Rules A => X\\A for each mined X with |X| >= 2 and conf >= min_confidence."""
    known = fis.counts()
    min_conf = as_fraction(min_confidence)
    n = len(db)

    def count(items: ItemTuple) -> int:
        c = known.get(items)
        if c is None:
            c = known[items] = support_count(db, items)
        return c

    rules = []
    for s in fis:
        if len(s.items) < 2:
            continue
        whole = count(s.items)
        for r in range(1, len(s.items)):
            for ante in combinations(s.items, r):
                ca = count(ante)
                if Fraction(whole, ca) < min_conf:
                    continue
                cons = tuple(i for i in s.items if i not in ante)
                rules.append(AssociationRule(ante, cons, whole / n, whole / ca))
    return rules


def extract_features(fis: FrequentItemsetSet) -> list[str]:
    """Distinct terms across all mined itemsets, sorted."""
    items = {i for s in fis for i in s.items}
    return sorted(fis.terms[i] for i in items)


def keep_predicate(db: TransactionDatabase, params: MiningParams) -> Callable[[ItemTuple, int], bool]:
    """Definition-level membership test for ``params.algorithm``, for use with brute_force_mine."""
    n = _require_nonempty(db)
    singles = [support_count(db, (i,)) for i in range(db.vocabulary_size)]
    ms = as_fraction(params.min_support)
    rare = as_fraction(params.rare_min_support)
    rel = as_fraction(params.relative_support)
    beta = as_fraction(params.mis_beta)
    floor = as_fraction(params.mis_floor)
    cap = params.max_itemset_size

    def supp(c: int) -> Fraction:
        return Fraction(c, n)

    def pred(items: ItemTuple, c: int) -> bool:
        if cap is not None and len(items) > cap:
            return False
        if params.algorithm in ("apriori", "diffset"):
            return supp(c) >= ms
        if params.algorithm == "rsapriori":
            if supp(c) >= ms:
                return True
            rarest = min(singles[i] for i in items)
            return supp(c) >= rare and rarest > 0 and Fraction(c, rarest) >= rel
        mis = min(max(beta * supp(singles[i]), floor) for i in items)
        return supp(c) >= mis

    return pred


def brute_force_mine(
    db: TransactionDatabase, predicate: Callable[[ItemTuple, int], bool]
) -> FrequentItemsetSet:
    """Enumerate every nonempty subset of the vocabulary and keep those passing ``predicate``."""
    m = db.vocabulary_size
    if m > BRUTE_FORCE_MAX_ITEMS:
        raise MiningError(f"vocabulary too large for brute force: {m} > {BRUTE_FORCE_MAX_ITEMS}")
    kept = {}
    for k in range(1, m + 1):
        for items in combinations(range(m), k):
            s = frozenset(items)
            c = sum(1 for t in db.transactions if s <= t)
            if predicate(items, c):
                kept[items] = c
    return FrequentItemsetSet.from_counts(kept, db)
