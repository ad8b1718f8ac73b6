"""Weak-supervision intent labelling for query/URL click logs.

Queries are labelled navigational, transactional, or informational, with
informational split further into factual, instrumental, and abstain. Labels
come from keyword, site-list and URL-similarity rules that are aggregated by
majority vote in a two-level cascade.
"""
from .aggregation import (
    LevelDecision,
    fit_agreement_weights,
    majority_vote,
    weighted_vote,
)
from .config import RunConfig
from .evaluation import EvalReport, cohen_kappa, evaluate, evaluate_top_level
from .ingest import GoldRecord, QueryRecord, read_gold_tsv, read_orcas_tsv, write_labeled_tsv
from .lexicons import LexiconSet, load_lexicon_set, lexicon_matches
from .lfs import Level, LabelingFunction, VoteVector, apply_level, deinflect_ing, registry_default
from .pipeline import LabeledRecord, Labeler, RunSummary, label_record, label_stream
from .stats import CorpusStats, LabelDistribution, corpus_stats, label_distribution
from .taxonomy import NO_VOTE, IntentLabel, TopLevelLabel, project_top_level
from .url_tools import (
    ParsedUrl,
    levenshtein_distance,
    levenshtein_ratio,
    navigational_similarity,
    parse_url,
)

__version__ = "0.1.0"
