"""Two-level labelling cascade and streaming orchestration.

Level one decides navigational or transactional. Records it leaves
undecided go to level two (factual or instrumental); if level two also
declines, the record is ``abstain``.
"""
from __future__ import annotations

import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Union

from .aggregation import (
    MajorityAggregator,
    Method,
    WeightedAggregator,
    fit_agreement_weights,
    load_weights,
    MIN_FIT_RECORDS,
)
from .config import RunConfig
from .errors import SinkFailure
from .ingest import Malformed, QueryRecord, format_labeled
from .lexicons import LexiconSet, default_lexicons, load_lexicon_set
from .lfs import (
    LabelingFunction,
    Level,
    QueryContext,
    VoteVector,
    for_level,
    registry_default,
    select,
    vote_level,
)
from .taxonomy import LEAF_ORDER, IntentLabel, LevelVote, TopLevelLabel, project_top_level

DEFAULT_CHUNK_SIZE = 2000


@dataclass(frozen=True)
class LabeledRecord:
    record: QueryRecord
    level1: LevelVote
    final_label: IntentLabel
    top_level: TopLevelLabel
    votes_l1: Optional[VoteVector] = None
    votes_l2: Optional[VoteVector] = None


class Labeler:
    """Labels records with a fixed registry, lexicon set and aggregator.

    Immutable after construction, so one instance can be shared by any
    number of threads or copied into worker processes.
    """

    def __init__(
        self,
        config: Optional[RunConfig] = None,
        lexicons: Optional[LexiconSet] = None,
        registry: Optional[Sequence[LabelingFunction]] = None,
        aggregator: Optional[Callable[[VoteVector], object]] = None,
    ):
        self.config = config or RunConfig()
        if lexicons is None:
            lex_dir = self.config.resolved_lexicon_dir()
            lexicons = load_lexicon_set(lex_dir) if lex_dir else default_lexicons()
        self.lexicons = lexicons
        registry = registry_default() if registry is None else tuple(registry)
        self.functions = select(registry, self.config.lf_overrides, self.config.mute_url_lfs)
        self.level_one = for_level(self.functions, Level.ONE)
        self.level_two = for_level(self.functions, Level.TWO)
        if aggregator is None:
            if self.config.aggregator is Method.AGREEMENT_WEIGHTED:
                if not self.config.weights_file:
                    raise ValueError("weighted aggregation needs fitted weights (weights_file)")
                aggregator = WeightedAggregator(load_weights(self.config.weights_file))
            else:
                aggregator = MajorityAggregator()
        self.aggregator = aggregator

    def context(self, record: QueryRecord) -> QueryContext:
        return QueryContext(record.query, record.url, self.lexicons, self.config.nav_threshold)

    def label(self, record: QueryRecord) -> LabeledRecord:
        ctx = self.context(record)
        votes_l1 = vote_level(ctx, self.level_one, Level.ONE, record.query_id)
        level1 = self.aggregator(votes_l1).label
        if level1 is not None:
            return LabeledRecord(record, level1, level1, project_top_level(level1), votes_l1)
        votes_l2 = vote_level(ctx, self.level_two, Level.TWO, record.query_id)
        final = self.aggregator(votes_l2).label or IntentLabel.ABSTAIN
        return LabeledRecord(record, None, final, project_top_level(final), votes_l1, votes_l2)

    def label_many(self, records: Iterable[QueryRecord]) -> List[LabeledRecord]:
        return [self.label(r) for r in records]


def label_record(
    record: QueryRecord,
    registry: Optional[Sequence[LabelingFunction]] = None,
    lexicons: Optional[LexiconSet] = None,
    aggregator=None,
    config: Optional[RunConfig] = None,
) -> LabeledRecord:
    return Labeler(config, lexicons, registry, aggregator).label(record)


def fit_cascade_weights(
    records: Sequence[QueryRecord],
    config: Optional[RunConfig] = None,
    lexicons: Optional[LexiconSet] = None,
    registry: Optional[Sequence[LabelingFunction]] = None,
    min_records: int = MIN_FIT_RECORDS,
) -> Dict[str, float]:
    """Fit agreement weights for both levels on a sample.

    Level-two weights are fitted on the records the weighted level-one voter
    leaves undecided, mirroring how the cascade routes them.
    """
    base = Labeler(config, lexicons, registry, aggregator=MajorityAggregator())
    contexts = [base.context(r) for r in records]
    l1 = [vote_level(c, base.level_one, Level.ONE, r.query_id) for c, r in zip(contexts, records)]
    weights = fit_agreement_weights(l1, min_records=min_records)
    agg1 = WeightedAggregator(weights)
    undecided = [i for i, vv in enumerate(l1) if agg1(vv).label is None]
    l2 = [vote_level(contexts[i], base.level_two, Level.TWO, records[i].query_id) for i in undecided]
    weights.update(fit_agreement_weights(l2, min_records=min(min_records, len(l2))))
    return weights


@dataclass
class RunSummary:
    counts: Counter = field(default_factory=Counter)
    malformed_count: int = 0
    elapsed_s: float = 0.0

    @property
    def n_labeled(self) -> int:
        return sum(self.counts.values())

    @property
    def records_per_sec(self) -> float:
        return self.n_labeled / self.elapsed_s if self.elapsed_s > 0 else 0.0

    def merge(self, other: "RunSummary") -> "RunSummary":
        return RunSummary(
            self.counts + other.counts,
            self.malformed_count + other.malformed_count,
            max(self.elapsed_s, other.elapsed_s),
        )

    def as_kv(self) -> str:
        lines = [f"records={self.n_labeled}", f"malformed={self.malformed_count}"]
        lines += [f"{label.value}={self.counts.get(label, 0)}" for label in LEAF_ORDER]
        lines += [f"elapsed_s={self.elapsed_s:.3f}", f"records_per_sec={self.records_per_sec:.1f}"]
        return "\n".join(lines)

    def as_text(self) -> str:
        n = self.n_labeled
        out = [f"Labelled {n:,} records ({self.malformed_count:,} malformed rows skipped) "
               f"in {self.elapsed_s:.1f}s, {self.records_per_sec:,.0f} records/s"]
        for label in LEAF_ORDER:
            c = self.counts.get(label, 0)
            share = 100.0 * c / n if n else 0.0
            out.append(f"  {label.value:<14}{c:>12,}  {share:6.2f}%")
        return "\n".join(out)



_worker_labeler: Optional[Labeler] = None


def _init_worker(labeler: Labeler) -> None:
    global _worker_labeler
    _worker_labeler = labeler


def _label_chunk(chunk: List[QueryRecord]) -> List[LabeledRecord]:
    return _worker_labeler.label_many(chunk)


def _chunks(source: Iterable, size: int, summary: RunSummary) -> Iterator[List[QueryRecord]]:
    chunk = []
    for item in source:
        if isinstance(item, Malformed):
            summary.malformed_count += 1
            continue
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _labelled_chunks(labeler: Labeler, chunks: Iterator[List[QueryRecord]], workers: int):
    if workers <= 1:
        for chunk in chunks:
            yield labeler.label_many(chunk)
        return
    # At most 2 * workers chunks in flight keeps memory independent of input size.
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(labeler,)) as pool:
        pending: deque = deque()
        for chunk in chunks:
            pending.append(pool.submit(_label_chunk, chunk))
            if len(pending) >= 2 * workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def label_stream(
    source: Iterable[Union[QueryRecord, Malformed]],
    sink,
    config: Optional[RunConfig] = None,
    labeler: Optional[Labeler] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> RunSummary:
    """Label every record from ``source`` and hand it to ``sink``.

    ``sink`` is either a text stream (receives TSV lines) or a callable
    taking a :class:`LabeledRecord`. Malformed rows are counted and
    skipped. A failing sink raises :class:`SinkFailure` carrying the number
    of records written before the failure.
    """
    config = config or (labeler.config if labeler else RunConfig())
    labeler = labeler or Labeler(config)
    summary = RunSummary()
    if hasattr(sink, "write"):
        include_votes = config.include_votes

        def emit(lr):
            sink.write(format_labeled(lr, include_votes))
    else:
        emit = sink

    start = time.perf_counter()
    written = 0
    counts = summary.counts
    for batch in _labelled_chunks(labeler, _chunks(source, chunk_size, summary), config.workers):
        for lr in batch:
            try:
                emit(lr)
            except Exception as exc:
                summary.elapsed_s = time.perf_counter() - start
                raise SinkFailure(written, exc) from exc
            written += 1
            counts[lr.final_label] += 1
    summary.elapsed_s = time.perf_counter() - start
    return summary
