"""Turning one level's votes into a single decision.

Majority voting is the default. The agreement-weighted voter is a simplified
stand-in for a generative label model: each function's weight is its rate of
agreement with the unweighted majority, and votes are summed as log-odds.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import InsufficientData, MissingWeight
from .lfs import VoteVector
from .taxonomy import IntentLabel, LevelVote

WEIGHT_FLOOR = 0.05
WEIGHT_CEIL = 0.95
NO_EVIDENCE_WEIGHT = 0.5
MIN_FIT_RECORDS = 1000


class Method(Enum):
    MAJORITY = "majority"
    AGREEMENT_WEIGHTED = "weighted"


class TiePolicy(Enum):
    ABSTAIN_ON_TIE = "abstain_on_tie"


@dataclass(frozen=True)
class LevelDecision:
    label: LevelVote
    method: Method
    tally: Mapping[IntentLabel, float] = field(default_factory=dict)


Votes = Union[VoteVector, Sequence[LevelVote]]


def _labels(votes: Votes) -> Sequence[LevelVote]:
    return votes.labels() if isinstance(votes, VoteVector) else votes


def _plurality(tally: Mapping[IntentLabel, float]) -> LevelVote:
    best, best_n, tied = None, 0, False
    for label, n in tally.items():
        if n > best_n:
            best, best_n, tied = label, n, False
        elif n == best_n:
            tied = True
    return None if tied else best


def majority_vote(votes: Votes, tie_policy: TiePolicy = TiePolicy.ABSTAIN_ON_TIE) -> LevelDecision:
    """Label with the strictly largest count among non-declining votes.

    All-declined and tied inputs give ``None``.
    """
    tally: Dict[IntentLabel, int] = {}
    for v in _labels(votes):
        if v is not None:
            tally[v] = tally.get(v, 0) + 1
    return LevelDecision(_plurality(tally), Method.MAJORITY, tally)


def fit_agreement_weights(
    vote_matrix: Iterable[VoteVector],
    min_records: int = MIN_FIT_RECORDS,
) -> Dict[str, float]:
    """Estimate each function's accuracy from agreement with the majority.

    Only records with at least two voters count. A vote on a tied record
    counts as a disagreement. Functions without any such votes get 0.5;
    all weights are clamped to [0.05, 0.95].
    """
    agree: Dict[str, int] = {}
    seen: Dict[str, int] = {}
    n_records = 0
    n_contested = 0
    for vv in vote_matrix:
        n_records += 1
        for lf_id, _ in vv.votes:
            seen.setdefault(lf_id, 0)
            agree.setdefault(lf_id, 0)
        if vv.voters() < 2:
            continue
        n_contested += 1
        decision = majority_vote(vv).label
        for lf_id, v in vv.votes:
            if v is None:
                continue
            seen[lf_id] += 1
            if v == decision:
                agree[lf_id] += 1
    if n_records < min_records:
        raise InsufficientData(f"{n_records} records, need at least {min_records}")
    if n_contested == 0:
        raise InsufficientData("no record has two or more voting functions")
    weights = {}
    for lf_id, n in seen.items():
        if n == 0:
            weights[lf_id] = NO_EVIDENCE_WEIGHT
        else:
            weights[lf_id] = min(WEIGHT_CEIL, max(WEIGHT_FLOOR, agree[lf_id] / n))
    return weights


def log_odds(w: float) -> float:
    return math.log(w / (1.0 - w))


def weighted_vote(votes: VoteVector, weights: Mapping[str, float]) -> LevelDecision:
    """Sum log(w / (1 - w)) per label; the single largest positive score wins."""
    scores: Dict[IntentLabel, float] = {}
    for lf_id, v in votes.votes:
        if v is None:
            continue
        try:
            w = weights[lf_id]
        except KeyError:
            raise MissingWeight(lf_id) from None
        scores[v] = scores.get(v, 0.0) + log_odds(w)
    best, best_s, tied = None, 0.0, False
    for label, s in scores.items():
        if s <= 0.0 or math.isclose(s, 0.0, abs_tol=1e-12):
            continue
        if best is None or (s > best_s and not math.isclose(s, best_s, rel_tol=1e-12)):
            best, best_s, tied = label, s, False
        elif math.isclose(s, best_s, rel_tol=1e-12):
            tied = True
    return LevelDecision(None if tied else best, Method.AGREEMENT_WEIGHTED, scores)


class MajorityAggregator:
    method = Method.MAJORITY

    def __call__(self, votes: VoteVector) -> LevelDecision:
        return majority_vote(votes)


class WeightedAggregator:
    method = Method.AGREEMENT_WEIGHTED

    def __init__(self, weights: Mapping[str, float]):
        self.weights = dict(weights)

    def __call__(self, votes: VoteVector) -> LevelDecision:
        return weighted_vote(votes, self.weights)


def save_weights(weights: Mapping[str, float], path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# agreement weights, one labelling function per line\n")
        for lf_id in sorted(weights):
            fh.write(f"{lf_id} = {weights[lf_id]!r}\n")


def load_weights(path: Union[str, os.PathLike]) -> Dict[str, float]:
    weights = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{line_no}: expected 'lf_id = weight'")
            w = float(value)
            if not 0.0 < w < 1.0:
                raise ValueError(f"{path}:{line_no}: weight {w} outside (0, 1)")
            weights[key.strip()] = w
    return weights
