import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orcas_intent.errors import EmptyInput
from orcas_intent.ingest import Malformed, QueryRecord
from orcas_intent.stats import CorpusStatsAccumulator, HyperLogLog, corpus_stats, label_distribution
from orcas_intent.synthetic import synthetic_records
from orcas_intent.taxonomy import IntentLabel


def rec(q, url="https://www.example.com/", qid="1"):
    return QueryRecord(qid, q, "D", url)


def test_duplicates_and_uniques():
    stats = corpus_stats([rec("a b"), rec("a b")])
    assert (stats.n_rows, stats.n_unique_queries, stats.n_duplicate_pairs) == (2, 1, 1)


def test_mean_length_and_domains():
    stats = corpus_stats([rec("a b c", "https://www.bbc.co.uk/x"), Malformed(2, "x", "bad")])
    assert stats.n_rows == 1
    assert stats.mean_query_length_words == 3.0
    assert stats.n_unique_domains == 1
    assert stats.n_unique_query_words == 3


def test_merge_equals_concatenation():
    records = [r for r in synthetic_records(4000, seed=3)]
    left, right = CorpusStatsAccumulator(), CorpusStatsAccumulator()
    for r in records[:1500]:
        left.add(r)
    for r in records[1500:]:
        right.add(r)
    assert left.merge(right).result() == corpus_stats(records)


def test_hyperloglog_estimate():
    sketch = HyperLogLog()
    for i in range(50_000):
        sketch.add(f"item-{i}")
    assert abs(len(sketch) - 50_000) / 50_000 < 0.03
    small = HyperLogLog()
    for i in range(100):
        small.add(str(i))
    assert abs(len(small) - 100) <= 2


def test_approximate_mode_is_close():
    records = list(synthetic_records(20_000, seed=6))
    exact = corpus_stats(records)
    approx = corpus_stats(records, approximate=True)
    assert approx.approximate and approx.n_rows == exact.n_rows
    assert approx.n_unique_urls == pytest.approx(exact.n_unique_urls, rel=0.03)


def test_distribution_examples():
    dist = label_distribution([IntentLabel.ABSTAIN] * 5)
    assert dist.fractions[IntentLabel.ABSTAIN] == 1.0 and dist.informational == 1.0
    assert label_distribution([IntentLabel.NAVIGATIONAL]).fractions[IntentLabel.NAVIGATIONAL] == 1.0
    with pytest.raises(EmptyInput):
        label_distribution([])
    text = label_distribution([IntentLabel.FACTUAL, IntentLabel.NAVIGATIONAL]).to_text()
    assert "Informational" in text and "50.00%" in text


@given(st.lists(st.sampled_from(list(IntentLabel)), min_size=1, max_size=50), st.randoms())
def test_distribution_is_permutation_invariant(labels, rnd):
    shuffled = list(labels)
    rnd.shuffle(shuffled)
    assert label_distribution(labels).fractions == label_distribution(shuffled).fractions
