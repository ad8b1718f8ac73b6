"""Corpus statistics and label distributions.

Unique counts are exact by default. ``approximate=True`` swaps the hash
sets for HyperLogLog sketches (about 0.8% standard error at the default
precision) for corpora that do not fit in memory; results from that mode
are flagged ``approximate``.
"""
from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Union

from .errors import EmptyInput, UnparseableUrl
from .ingest import Malformed, QueryRecord
from .lexicons import Lexicon, default_lexicons
from .taxonomy import INFORMATIONAL_LEAVES, LEAF_ORDER, IntentLabel
from .url_tools import parse_url


class HyperLogLog:
    """Cardinality sketch with 2**p registers."""

    def __init__(self, p: int = 14):
        if not 4 <= p <= 18:
            raise ValueError("precision must be in [4, 18]")
        self.p = p
        self.m = 1 << p
        self.registers = bytearray(self.m)

    def add(self, item: str) -> None:
        h = int.from_bytes(hashlib.blake2b(item.encode("utf-8"), digest_size=8).digest(), "big")
        idx = h >> (64 - self.p)
        rest = (h << self.p) & ((1 << 64) - 1)
        rank = (64 - self.p + 1) if rest == 0 else (65 - rest.bit_length())
        if rank > self.registers[idx]:
            self.registers[idx] = rank

    def update(self, other: "HyperLogLog") -> None:
        if other.p != self.p:
            raise ValueError("cannot merge sketches of different precision")
        self.registers = bytearray(max(a, b) for a, b in zip(self.registers, other.registers))

    def __len__(self) -> int:
        m = self.m
        alpha = 0.7213 / (1 + 1.079 / m)
        est = alpha * m * m / sum(2.0 ** -r for r in self.registers)
        zeros = self.registers.count(0)
        if est <= 2.5 * m and zeros:
            est = m * math.log(m / zeros)
        return int(round(est))


def _new_set(approximate: bool):
    return HyperLogLog() if approximate else set()


def _merge_into(a, b):
    if isinstance(a, HyperLogLog):
        a.update(b)
    else:
        a |= b


@dataclass(frozen=True)
class CorpusStats:
    n_rows: int
    n_unique_queries: int
    n_unique_urls: int
    n_unique_domains: int
    n_unique_query_words: int
    mean_query_length_words: float
    n_duplicate_pairs: int
    approximate: bool = False

    def to_text(self) -> str:
        rows = [
            ("dataset size", f"{self.n_rows:,}"),
            ("un. queries", f"{self.n_unique_queries:,}"),
            ("un. URLs", f"{self.n_unique_urls:,}"),
            ("un. domains", f"{self.n_unique_domains:,}"),
            ("un. words in query", f"{self.n_unique_query_words:,}"),
            ("mean query length (words)", f"{self.mean_query_length_words:.2f}"),
            ("duplicate query-URL pairs", f"{self.n_duplicate_pairs:,}"),
        ]
        out = [f"{k:<28}{v:>14}" for k, v in rows]
        if self.approximate:
            out.append("(unique counts are HyperLogLog estimates)")
        return "\n".join(out)

    def to_kv(self) -> str:
        return "\n".join(
            [
                f"n_rows={self.n_rows}",
                f"n_unique_queries={self.n_unique_queries}",
                f"n_unique_urls={self.n_unique_urls}",
                f"n_unique_domains={self.n_unique_domains}",
                f"n_unique_query_words={self.n_unique_query_words}",
                f"mean_query_length_words={self.mean_query_length_words:.6f}",
                f"n_duplicate_pairs={self.n_duplicate_pairs}",
                f"approximate={str(self.approximate).lower()}",
            ]
        )


@dataclass
class CorpusStatsAccumulator:
    """Mergeable partial state behind :func:`corpus_stats`."""

    approximate: bool = False
    suffixes: Optional[Lexicon] = None
    n_rows: int = 0
    n_words: int = 0
    queries: object = None
    urls: object = None
    domains: object = None
    words: object = None
    pairs: object = None

    def __post_init__(self):
        for name in ("queries", "urls", "domains", "words", "pairs"):
            if getattr(self, name) is None:
                setattr(self, name, _new_set(self.approximate))
        if self.suffixes is None:
            self.suffixes = default_lexicons()["tld_suffixes"]

    def add(self, record: QueryRecord) -> None:
        tokens = record.query.split()
        self.n_rows += 1
        self.n_words += len(tokens)
        self.queries.add(record.query)
        self.urls.add(record.url)
        self.pairs.add(record.query + "\t" + record.url)
        for tok in tokens:
            self.words.add(tok)
        try:
            self.domains.add(parse_url(record.url, self.suffixes).registrable_domain)
        except UnparseableUrl:
            pass

    def merge(self, other: "CorpusStatsAccumulator") -> "CorpusStatsAccumulator":
        if self.approximate != other.approximate:
            raise ValueError("cannot merge exact and approximate accumulators")
        self.n_rows += other.n_rows
        self.n_words += other.n_words
        for name in ("queries", "urls", "domains", "words", "pairs"):
            _merge_into(getattr(self, name), getattr(other, name))
        return self

    def result(self) -> CorpusStats:
        n_pairs = len(self.pairs)
        return CorpusStats(
            n_rows=self.n_rows,
            n_unique_queries=len(self.queries),
            n_unique_urls=len(self.urls),
            n_unique_domains=len(self.domains),
            n_unique_query_words=len(self.words),
            mean_query_length_words=self.n_words / self.n_rows if self.n_rows else 0.0,
            n_duplicate_pairs=max(0, self.n_rows - n_pairs),
            approximate=self.approximate,
        )


def corpus_stats(
    records: Iterable[Union[QueryRecord, Malformed]],
    approximate: bool = False,
    suffixes: Optional[Lexicon] = None,
) -> CorpusStats:
    acc = CorpusStatsAccumulator(approximate=approximate, suffixes=suffixes)
    for r in records:
        if isinstance(r, QueryRecord):
            acc.add(r)
    return acc.result()


@dataclass(frozen=True)
class LabelDistribution:
    fractions: Dict[IntentLabel, float]
    informational: float
    n: int

    def to_text(self) -> str:
        def row(name, frac, indent=""):
            return f"{indent + name:<16}{100 * frac:>8.2f}%"

        out = [
            row("Navigational", self.fractions[IntentLabel.NAVIGATIONAL]),
            row("Transactional", self.fractions[IntentLabel.TRANSACTIONAL]),
            row("Informational", self.informational),
            row("Instrumental", self.fractions[IntentLabel.INSTRUMENTAL], "- "),
            row("Factual", self.fractions[IntentLabel.FACTUAL], "- "),
            row("Abstain", self.fractions[IntentLabel.ABSTAIN], "- "),
        ]
        return "\n".join(out)

    def to_kv(self) -> str:
        out = [f"{label.value}={self.fractions[label]:.6f}" for label in LEAF_ORDER]
        out.append(f"informational={self.informational:.6f}")
        return "\n".join(out)


def label_distribution(labels: Iterable) -> LabelDistribution:
    """Fractions of final labels.

    Accepts labelled records (anything with ``final_label``) or bare
    :class:`IntentLabel` values.
    """
    counts: Counter = Counter()
    for item in labels:
        counts[getattr(item, "final_label", item)] += 1
    n = sum(counts.values())
    if n == 0:
        raise EmptyInput("label stream")
    fractions = {label: counts.get(label, 0) / n for label in LEAF_ORDER}
    informational = sum(fractions[label] for label in INFORMATIONAL_LEAVES)
    return LabelDistribution(fractions, informational, n)
