"""Word and site lists that parameterise the labelling functions.

A lexicon directory holds one ``<name>.txt`` file per lexicon, one entry per
line. Lines starting with ``#`` and blank lines are ignored; entries are
trimmed and lowercased.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import EmptyLexicon, MalformedEntry, MissingLexicon

PathLike = Union[str, os.PathLike]


class MatchMode(Enum):
    TOKEN_EXACT = "token_exact"
    SUBSTRING_ANYWHERE = "substring_anywhere"
    PREFIX_OF_QUERY = "prefix_of_query"


LEXICON_MODES: Dict[str, MatchMode] = {
    "verbs_infinitive": MatchMode.PREFIX_OF_QUERY,
    "tld_suffixes": MatchMode.SUBSTRING_ANYWHERE,
    "web_source_terms": MatchMode.TOKEN_EXACT,
    "download_terms": MatchMode.TOKEN_EXACT,
    "media_terms": MatchMode.TOKEN_EXACT,
    "interact_entertainment_terms": MatchMode.TOKEN_EXACT,
    "question_words_factual": MatchMode.TOKEN_EXACT,
    "question_starters_factual": MatchMode.PREFIX_OF_QUERY,
    "fact_stat_terms": MatchMode.TOKEN_EXACT,
    "cost_price_terms": MatchMode.TOKEN_EXACT,
    "number_replaceable_terms": MatchMode.TOKEN_EXACT,
    "definition_terms": MatchMode.TOKEN_EXACT,
    "howto_terms": MatchMode.PREFIX_OF_QUERY,
    "factual_sites": MatchMode.TOKEN_EXACT,
    "instructional_sites": MatchMode.TOKEN_EXACT,
}
REQUIRED_LEXICONS: Tuple[str, ...] = tuple(LEXICON_MODES)

# Loaded when present; an absent optional lexicon is simply empty.
OPTIONAL_LEXICONS: Dict[str, MatchMode] = {
    "unit_terms": MatchMode.TOKEN_EXACT,
}

SITE_LEXICONS = ("factual_sites", "instructional_sites")
MIN_VERBS = 850


@dataclass(frozen=True)
class Lexicon:
    name: str
    entries: FrozenSet[str]
    match_mode: MatchMode = MatchMode.TOKEN_EXACT
    # Derived lookup tables, built in __post_init__.
    _single: FrozenSet[str] = field(default=frozenset(), init=False, repr=False, compare=False)
    _multi: Tuple[str, ...] = field(default=(), init=False, repr=False, compare=False)
    _lengths_by_first: Mapping[str, Tuple[int, ...]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        entries = frozenset(self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_single", frozenset(e for e in entries if " " not in e))
        object.__setattr__(self, "_multi", tuple(sorted(e for e in entries if " " in e)))
        by_first: Dict[str, set] = {}
        for e in entries:
            by_first.setdefault(e[0], set()).add(len(e))
        object.__setattr__(
            self, "_lengths_by_first", {c: tuple(sorted(ls)) for c, ls in by_first.items()}
        )

    def __contains__(self, item) -> bool:
        return item in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))

    def matches(
        self,
        query_tokens: Sequence[str],
        query_raw: str,
        mode: Optional[MatchMode] = None,
    ) -> bool:
        """Match under the lexicon's own mode, or ``mode`` if given."""
        mode = mode or self.match_mode
        if mode is MatchMode.TOKEN_EXACT:
            return self.match_tokens(query_tokens)
        if mode is MatchMode.PREFIX_OF_QUERY:
            return self.match_prefix(query_tokens)
        return self.match_substring(query_raw)

    def match_tokens(self, tokens: Sequence[str]) -> bool:
        """An entry equals a token, or a contiguous run of tokens."""
        if not tokens:
            return False
        single = self._single
        for tok in tokens:
            if tok in single:
                return True
        if self._multi:
            padded = " " + " ".join(tokens) + " "
            for phrase in self._multi:
                if " " + phrase + " " in padded:
                    return True
        return False

    def match_prefix(self, tokens: Sequence[str]) -> bool:
        """An entry equals the first token(s)."""
        if not tokens:
            return False
        if tokens[0] in self._single:
            return True
        if self._multi:
            joined = " ".join(tokens) + " "
            for phrase in self._multi:
                if joined.startswith(phrase + " "):
                    return True
        return False

    def match_substring(self, raw: str) -> bool:
        # Only look at positions whose character can start an entry, then probe
        # each possible entry length there.
        lengths = self._lengths_by_first
        entries = self.entries
        for i, ch in enumerate(raw):
            ls = lengths.get(ch)
            if ls is None:
                continue
            for n in ls:
                if raw[i:i + n] in entries:
                    return True
        return False

    def longest_suffix(self, text: str) -> Optional[str]:
        """Longest entry that ``text`` ends with, leaving a non-empty remainder."""
        lengths = self._lengths_by_first
        for i in range(1, len(text)):
            if text[i] in lengths and text[i:] in self.entries:
                return text[i:]
        return None


def lexicon_matches(lexicon: Lexicon, query_tokens: Sequence[str], query_raw: str) -> bool:
    return lexicon.matches(query_tokens, query_raw)


@dataclass(frozen=True)
class LexiconSet:
    lexicons: Mapping[str, Lexicon]
    source: str = ""

    def __getitem__(self, name: str) -> Lexicon:
        try:
            return self.lexicons[name]
        except KeyError:
            raise MissingLexicon(name) from None

    def __getattr__(self, name):
        if name.startswith("_") or name in ("lexicons", "source"):
            raise AttributeError(name)
        try:
            return self.lexicons[name]
        except KeyError:
            raise AttributeError(name) from None

    def __eq__(self, other):
        if not isinstance(other, LexiconSet):
            return NotImplemented
        return dict(self.lexicons) == dict(other.lexicons)

    def __hash__(self):
        return hash(tuple(sorted((k, v.entries) for k, v in self.lexicons.items())))

    def names(self):
        return sorted(self.lexicons)


def _read_entries(path: Path, name: str) -> FrozenSet[str]:
    entries = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "\t" in text or "  " in text:
                raise MalformedEntry(str(path), line_no, text)
            text = text.lower()
            if name in SITE_LEXICONS and not _is_domain_name(text):
                raise MalformedEntry(str(path), line_no, text)
            entries.add(text)
    return frozenset(entries)


def _is_domain_name(text: str) -> bool:
    return (
        "." in text
        and "/" not in text
        and ":" not in text
        and " " not in text
        and not text.startswith(".")
        and not text.endswith(".")
    )


def bundled_lexicon_dir() -> Path:
    return Path(str(resources.files("orcas_intent") / "data" / "lexicons"))


def load_lexicon_set(directory: Optional[PathLike] = None) -> LexiconSet:
    """Load and validate every lexicon in ``directory`` (bundled set by default).

    Raises:
        MissingLexicon: a required ``<name>.txt`` file is absent.
        EmptyLexicon: a file has no entries after comment stripping, or the
            verb list is shorter than 850 entries.
        MalformedEntry: an entry contains a tab or a run of spaces, or a site
            lexicon holds something that is not a bare domain name.
    """
    directory = Path(directory) if directory is not None else bundled_lexicon_dir()
    loaded: Dict[str, Lexicon] = {}
    for name, mode in LEXICON_MODES.items():
        path = directory / f"{name}.txt"
        if not path.is_file():
            raise MissingLexicon(name)
        entries = _read_entries(path, name)
        if not entries:
            raise EmptyLexicon(name)
        loaded[name] = Lexicon(name, entries, mode)
    if len(loaded["verbs_infinitive"]) < MIN_VERBS:
        raise EmptyLexicon(
            f"verbs_infinitive ({len(loaded['verbs_infinitive'])} entries, need {MIN_VERBS})"
        )
    for name, mode in OPTIONAL_LEXICONS.items():
        path = directory / f"{name}.txt"
        entries = _read_entries(path, name) if path.is_file() else frozenset()
        loaded[name] = Lexicon(name, entries, mode)
    return LexiconSet(loaded, source=str(directory))


_default: Optional[LexiconSet] = None


def default_lexicons() -> LexiconSet:
    """The bundled lexicons, loaded once per process."""
    global _default
    if _default is None:
        _default = load_lexicon_set()
    return _default


def make_lexicon(name: str, entries: Iterable[str], mode: MatchMode = MatchMode.TOKEN_EXACT) -> Lexicon:
    """Build an in-memory lexicon with the same normalisation as the loader."""
    return Lexicon(name, frozenset(e.strip().lower() for e in entries if e.strip()), mode)
