"""Labelling functions and their two-level registry.

Level one separates navigational and transactional queries; level two
separates factual and instrumental ones among what level one left undecided.
Every function votes for its single target label or returns ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import UnparseableUrl
from .lexicons import Lexicon, LexiconSet
from .taxonomy import LEVEL_ONE_TARGETS, LEVEL_TWO_TARGETS, IntentLabel, LevelVote
from .url_tools import DEFAULT_NAV_THRESHOLD, ParsedUrl, compact_query, parse_url, ratio_at_least


class Level(IntEnum):
    ONE = 1
    TWO = 2


@dataclass
class QueryContext:
    """Everything a labelling function may look at for one record.

    The URL is parsed lazily and at most once; ``url`` is ``None`` when the
    clicked URL cannot be parsed.
    """

    query: str
    raw_url: str
    lexicons: LexiconSet
    nav_threshold: float = DEFAULT_NAV_THRESHOLD
    tokens: List[str] = field(init=False)
    lex: Mapping[str, Lexicon] = field(init=False, repr=False)
    _url: object = field(default=False, init=False, repr=False)

    def __post_init__(self):
        self.tokens = self.query.split()
        self.lex = self.lexicons.lexicons

    @property
    def url(self) -> Optional[ParsedUrl]:
        if self._url is False:
            try:
                self._url = parse_url(self.raw_url, self.lex["tld_suffixes"])
            except UnparseableUrl:
                self._url = None
        return self._url

    @property
    def first_token(self) -> str:
        return self.tokens[0] if self.tokens else ""


@dataclass(frozen=True)
class LabelingFunction:
    id: str
    level: Level
    target: IntentLabel
    predicate: Callable[[QueryContext], bool] = field(compare=False, repr=False)
    uses_url: bool = False
    description: str = ""

    def __post_init__(self):
        allowed = LEVEL_ONE_TARGETS if self.level is Level.ONE else LEVEL_TWO_TARGETS
        if self.target not in allowed:
            raise ValueError(f"{self.id}: {self.target} is not a level-{int(self.level)} label")

    def __call__(self, ctx: QueryContext) -> LevelVote:
        return self.target if self.predicate(ctx) else None


@dataclass(frozen=True)
class VoteVector:
    record_id: str
    level: Level
    votes: Tuple[Tuple[str, LevelVote], ...]

    def labels(self) -> List[LevelVote]:
        return [v for _, v in self.votes]

    def voters(self) -> int:
        return sum(v is not None for _, v in self.votes)


class TokenMatch:
    """Predicate: the query contains an entry of the named lexicon."""

    def __init__(self, lexicon_name: str):
        self.lexicon_name = lexicon_name

    def __call__(self, ctx: QueryContext) -> bool:
        return ctx.lex[self.lexicon_name].match_tokens(ctx.tokens)

    def __repr__(self):
        return f"TokenMatch({self.lexicon_name!r})"


def _site_in(domain: str, sites: Lexicon) -> bool:
    # The domain itself or any parent domain with at least two labels.
    while "." in domain:
        if domain in sites:
            return True
        domain = domain.split(".", 1)[1]
    return False


def deinflect_ing(token: str, verbs: Lexicon) -> Optional[str]:
    """Map an ``-ing`` form back to an infinitive found in ``verbs``.

    Tries the bare stem (``doing``), the stem plus ``e`` (``making``), and
    the stem with a doubled final consonant collapsed (``running``).
    """
    if len(token) <= 3 or not token.endswith("ing"):
        return None
    stem = token[:-3]
    candidates = [stem, stem + "e"]
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
        candidates.append(stem[:-1])
    for cand in candidates:
        if cand in verbs:
            return cand
    return None


# -- level one: navigational ---------------------------------------------------

def nav_tld_suffix(ctx):
    return ctx.lex["tld_suffixes"].match_substring(ctx.query)


def nav_www_token(ctx):
    return any(tok == "www" or tok.startswith("www.") for tok in ctx.tokens)


def nav_levenshtein(ctx):
    url = ctx.url
    if url is None:
        return False
    q = compact_query(ctx.query)
    if not q and not url.domain_core:
        return False
    return ratio_at_least(q, url.domain_core, ctx.nav_threshold)


# -- level two: factual -------------------------------------------------------

def fact_question_starter(ctx):
    return ctx.lex["question_starters_factual"].match_prefix(ctx.tokens)


def fact_wh_start(ctx):
    return ctx.lex["question_words_factual"].match_prefix(ctx.tokens)


def fact_site_click(ctx):
    url = ctx.url
    return url is not None and _site_in(url.registrable_domain, ctx.lex["factual_sites"])


# -- level two: instrumental ----------------------------------------------------

def instr_howto(ctx):
    return ctx.lex["howto_terms"].match_tokens(ctx.tokens)


def instr_infinitive_start(ctx):
    return ctx.first_token in ctx.lex["verbs_infinitive"].entries


def instr_ing_start(ctx):
    return deinflect_ing(ctx.first_token, ctx.lex["verbs_infinitive"]) is not None


def instr_site_click(ctx):
    url = ctx.url
    return url is not None and _site_in(url.registrable_domain, ctx.lex["instructional_sites"])


NAV, TRANS = IntentLabel.NAVIGATIONAL, IntentLabel.TRANSACTIONAL
FACT, INSTR = IntentLabel.FACTUAL, IntentLabel.INSTRUMENTAL

_DEFAULT_REGISTRY: Tuple[LabelingFunction, ...] = (
    LabelingFunction("nav_tld_suffix", Level.ONE, NAV, nav_tld_suffix,
                     description="query contains a domain suffix such as .com"),
    LabelingFunction("nav_www_token", Level.ONE, NAV, nav_www_token,
                     description="query contains www as a token or token prefix"),
    LabelingFunction("nav_web_source", Level.ONE, NAV, TokenMatch("web_source_terms"),
                     description="query names a website (website, homepage, login)"),
    LabelingFunction("nav_levenshtein", Level.ONE, NAV, nav_levenshtein, uses_url=True,
                     description="query resembles the clicked domain (ratio >= threshold)"),
    LabelingFunction("trans_download", Level.ONE, TRANS, TokenMatch("download_terms"),
                     description="download or software terms"),
    LabelingFunction("trans_media", Level.ONE, TRANS, TokenMatch("media_terms"),
                     description="image, audio or video collection terms"),
    LabelingFunction("trans_interact", Level.ONE, TRANS,
                     TokenMatch("interact_entertainment_terms"),
                     description="interaction or entertainment terms (buy, chat, games)"),
    LabelingFunction("fact_question_word_contained", Level.TWO, FACT,
                     TokenMatch("question_words_factual"),
                     description="query contains a question word (what, when, where)"),
    LabelingFunction("fact_question_starter", Level.TWO, FACT, fact_question_starter,
                     description="query starts with a yes/no question word (can, does)"),
    LabelingFunction("fact_stat_terms", Level.TWO, FACT, TokenMatch("fact_stat_terms"),
                     description="facts, statistics or quantities"),
    LabelingFunction("fact_cost_terms", Level.TWO, FACT, TokenMatch("cost_price_terms"),
                     description="cost or price terms"),
    LabelingFunction("fact_number_terms", Level.TWO, FACT,
                     TokenMatch("number_replaceable_terms"),
                     description="words whose answer is a number (phone, zip)"),
    LabelingFunction("fact_definition_terms", Level.TWO, FACT, TokenMatch("definition_terms"),
                     description="words of definition (define, meaning)"),
    LabelingFunction("fact_site_click", Level.TWO, FACT, fact_site_click, uses_url=True,
                     description="clicked domain is a fact site (wikipedia.org, webmd.com)"),
    LabelingFunction("fact_wh_start", Level.TWO, FACT, fact_wh_start,
                     description="query starts with a wh-question word"),
    LabelingFunction("fact_unit_terms", Level.TWO, FACT, TokenMatch("unit_terms"),
                     description="measurement unit words (miles, calories, kg)"),
    LabelingFunction("instr_howto", Level.TWO, INSTR, instr_howto,
                     description="how to / how do / how does"),
    LabelingFunction("instr_infinitive_start", Level.TWO, INSTR, instr_infinitive_start,
                     description="first word is an infinitive verb"),
    LabelingFunction("instr_ing_start", Level.TWO, INSTR, instr_ing_start,
                     description="first word is the -ing form of a known verb"),
    LabelingFunction("instr_site_click", Level.TWO, INSTR, instr_site_click, uses_url=True,
                     description="clicked domain is a tutorial site (wikihow.com)"),
)

URL_LF_IDS = frozenset(lf.id for lf in _DEFAULT_REGISTRY if lf.uses_url)


def registry_default() -> Tuple[LabelingFunction, ...]:
    return _DEFAULT_REGISTRY


def lf_ids(registry: Iterable[LabelingFunction] = _DEFAULT_REGISTRY) -> List[str]:
    return [lf.id for lf in registry]


def for_level(registry: Sequence[LabelingFunction], level: Level) -> Tuple[LabelingFunction, ...]:
    return tuple(lf for lf in registry if lf.level == level)


def select(
    registry: Sequence[LabelingFunction],
    overrides: Optional[Dict[str, bool]] = None,
    mute_url_lfs: bool = False,
) -> Tuple[LabelingFunction, ...]:
    """Registry subset after per-function switches; unknown ids raise ``KeyError``."""
    overrides = dict(overrides or {})
    known = {lf.id for lf in registry}
    unknown = set(overrides) - known
    if unknown:
        raise KeyError(f"unknown labelling function(s): {', '.join(sorted(unknown))}")
    out = []
    for lf in registry:
        enabled = overrides.get(lf.id, True)
        if mute_url_lfs and lf.uses_url:
            enabled = False
        if enabled:
            out.append(lf)
    return tuple(out)


def vote_level(
    ctx: QueryContext,
    functions: Sequence[LabelingFunction],
    level: Level,
    record_id: str = "",
) -> VoteVector:
    """Evaluate every function of ``level`` in registry order."""
    return VoteVector(
        record_id,
        level,
        tuple([
            (lf.id, lf.target if lf.predicate(ctx) else None)
            for lf in functions
            if lf.level == level
        ]),
    )


def apply_level(record, level: Level, registry=None, lexicons=None, config=None) -> VoteVector:
    """Votes of one level for a single record.

    ``config`` may carry ``nav_threshold``, ``lf_overrides`` and
    ``mute_url_lfs``; missing attributes fall back to defaults.
    """
    from .lexicons import default_lexicons

    registry = registry_default() if registry is None else registry
    lexicons = default_lexicons() if lexicons is None else lexicons
    functions = select(
        registry,
        getattr(config, "lf_overrides", None),
        getattr(config, "mute_url_lfs", False),
    )
    ctx = QueryContext(
        record.query,
        record.url,
        lexicons,
        getattr(config, "nav_threshold", DEFAULT_NAV_THRESHOLD),
    )
    return vote_level(ctx, functions, Level(level), record.query_id)
