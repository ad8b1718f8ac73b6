"""URL decomposition and the query/domain edit-distance similarity."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import BothEmpty, UnparseableUrl
from .lexicons import Lexicon, default_lexicons

DEFAULT_NAV_THRESHOLD = 0.55

_NON_WORD = re.compile(r"[\W_]+")
_HOST_OK = re.compile(r"^[^\s/?#@\\]+$")


@dataclass(frozen=True)
class ParsedUrl:
    raw: str
    host: str
    registrable_domain: str
    domain_core: str


def _extract_host(text: str) -> str:
    # Equivalent to urlsplit(...).hostname for the URLs seen in click logs,
    # without urlsplit's per-call overhead.
    start = text.find("://")
    start = start + 3 if start >= 0 else len(text) - len(text.lstrip("/"))
    end = len(text)
    for sep in "/?#":
        k = text.find(sep, start)
        if 0 <= k < end:
            end = k
    netloc = text[start:end]
    netloc = netloc.rpartition("@")[2]
    if netloc.startswith("["):
        return netloc[1:netloc.find("]")].lower() if "]" in netloc else ""
    return netloc.partition(":")[0].rstrip(".").lower()


def parse_url(raw: str, suffixes: Optional[Lexicon] = None) -> ParsedUrl:
    """Split ``raw`` into host, registrable domain and domain core.

    The scheme is optional. ``www.`` is removed once from the front of the
    host. The domain core drops the longest known suffix (``suffixes``,
    default: the bundled ``tld_suffixes`` lexicon), falling back to the last
    dot-separated label.

    >>> parse_url("https://www.armystudyguide.com/guide").domain_core
    'armystudyguide'
    """
    if suffixes is None:
        suffixes = default_lexicons()["tld_suffixes"]
    text = raw.strip() if raw else ""
    if not text:
        raise UnparseableUrl(raw)
    host = _extract_host(text)
    if not host or not _HOST_OK.match(host):
        raise UnparseableUrl(raw)

    registrable = host[4:] if host.startswith("www.") and len(host) > 4 else host
    if "." not in registrable:
        core = registrable
    else:
        suffix = suffixes.longest_suffix(registrable)
        if suffix is None:
            core = registrable[: registrable.rindex(".")]
        else:
            core = registrable[: -len(suffix)]
        if not core:
            core = registrable
    return ParsedUrl(raw=raw, host=host, registrable_domain=registrable, domain_core=core)


def levenshtein_distance(a: str, b: str, max_distance: Optional[int] = None) -> int:
    """Unit-cost insert/delete/substitute edit distance.

    Bit-parallel (Myers/Hyyro): one machine-word-style update per character
    of the longer string, with the shorter string packed into an integer
    bit vector. With ``max_distance`` set, obviously distant pairs return
    ``max_distance + 1`` without running the scan.
    """
    if a == b:
        return 0
    if len(a) > len(b):
        a, b = b, a
    m, n = len(a), len(b)
    if max_distance is not None and n - m > max_distance:
        return max_distance + 1
    if m == 0:
        return n

    peq = {}
    for i, ch in enumerate(a):
        peq[ch] = peq.get(ch, 0) | (1 << i)
    full = (1 << m) - 1
    top = 1 << (m - 1)
    pv, mv, score = full, 0, m
    for ch in b:
        eq = peq.get(ch, 0)
        xv = eq | mv
        xh = (((eq & pv) + pv) ^ pv) | eq
        ph = mv | (~(xh | pv) & full)
        mh = pv & xh
        if ph & top:
            score += 1
        elif mh & top:
            score -= 1
        ph = ((ph << 1) | 1) & full
        mh = (mh << 1) & full
        pv = mh | (~(xv | ph) & full)
        mv = ph & xv
    if max_distance is not None and score > max_distance:
        return max_distance + 1
    return score


def levenshtein_ratio(a: str, b: str) -> float:
    total = len(a) + len(b)
    if total == 0:
        raise BothEmpty()
    return (total - levenshtein_distance(a, b)) / total


def compact_query(query: str) -> str:
    """Drop whitespace and punctuation so the query reads like a host label."""
    return _NON_WORD.sub("", query)


def navigational_similarity(query: str, url: ParsedUrl) -> float:
    return levenshtein_ratio(compact_query(query), url.domain_core)


def ratio_at_least(a: str, b: str, threshold: float) -> bool:
    """``levenshtein_ratio(a, b) >= threshold`` , skipping the scan when lengths alone decide it."""
    total = len(a) + len(b)
    if total == 0:
        raise BothEmpty()
    # ratio >= t  <=>  Lev <= (1 - t) * total
    budget = int((1.0 - threshold) * total + 1e-9)
    if budget < 0:
        return False
    d = levenshtein_distance(a, b, max_distance=budget)
    return d <= budget and (total - d) / total >= threshold
