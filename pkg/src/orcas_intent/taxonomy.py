"""Intent label hierarchy.

Five leaf intents hang off three top-level classes::

    navigational
    transactional
    informational -> factual | instrumental | abstain

A labelling function that declines to vote returns ``None`` (``NO_VOTE``).
That is not the same thing as the ``ABSTAIN`` leaf, which the cascade
assigns only after both levels have declined.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional


class TopLevelLabel(Enum):
    NAVIGATIONAL = "navigational"
    TRANSACTIONAL = "transactional"
    INFORMATIONAL = "informational"

    def __str__(self):
        return self.value


class IntentLabel(Enum):
    NAVIGATIONAL = "navigational"
    TRANSACTIONAL = "transactional"
    FACTUAL = "factual"
    INSTRUMENTAL = "instrumental"
    ABSTAIN = "abstain"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "IntentLabel":
        """Case-insensitive lookup by canonical name; raises ``ValueError``."""
        return cls(text.strip().lower())

    @property
    def top_level(self) -> TopLevelLabel:
        return _PROJECTION[self]


# None means the labelling function (or a whole level) declined.
LevelVote = Optional[IntentLabel]
NO_VOTE: LevelVote = None

_PROJECTION = {
    IntentLabel.NAVIGATIONAL: TopLevelLabel.NAVIGATIONAL,
    IntentLabel.TRANSACTIONAL: TopLevelLabel.TRANSACTIONAL,
    IntentLabel.FACTUAL: TopLevelLabel.INFORMATIONAL,
    IntentLabel.INSTRUMENTAL: TopLevelLabel.INFORMATIONAL,
    IntentLabel.ABSTAIN: TopLevelLabel.INFORMATIONAL,
}

LEVEL_ONE_TARGETS = frozenset({IntentLabel.NAVIGATIONAL, IntentLabel.TRANSACTIONAL})
LEVEL_TWO_TARGETS = frozenset({IntentLabel.FACTUAL, IntentLabel.INSTRUMENTAL})
INFORMATIONAL_LEAVES = (IntentLabel.FACTUAL, IntentLabel.INSTRUMENTAL, IntentLabel.ABSTAIN)

# Row order used by the report tables.
LEAF_ORDER = (
    IntentLabel.NAVIGATIONAL,
    IntentLabel.TRANSACTIONAL,
    IntentLabel.INSTRUMENTAL,
    IntentLabel.FACTUAL,
    IntentLabel.ABSTAIN,
)
TOP_LEVEL_ORDER = (
    TopLevelLabel.NAVIGATIONAL,
    TopLevelLabel.TRANSACTIONAL,
    TopLevelLabel.INFORMATIONAL,
)


def project_top_level(label: IntentLabel) -> TopLevelLabel:
    return _PROJECTION[label]


def label_name(vote: LevelVote) -> str:
    """Serialise a vote; ``None`` becomes ``-``."""
    return "-" if vote is None else vote.value
