"""Deterministic synthetic click-log rows for tests and benchmarks.

Rows mimic the shape of the real corpus (short lowercase queries, mostly
https URLs, a long tail of domains) and deliberately exercise every
labelling function, including rows with unparseable URLs.
"""
from __future__ import annotations

import random
from typing import Iterator, Optional, TextIO

from .ingest import QueryRecord

_TOPICS = [
    "allergic rhinitis", "osmosis", "photosynthesis", "roman empire", "jazz history",
    "solar panels", "kidney stones", "tax return", "credit score", "sourdough bread",
    "python list", "excel formula", "iphone battery", "lawn mower", "heart rate",
    "vitamin d", "french revolution", "baby teeth", "mortgage rates", "chicken breast",
    "generation terms", "blood pressure", "windows 10", "dog breeds", "flu symptoms",
]
_TEMPLATES = [
    "{t}", "{t}", "{t}", "{t} symptoms", "what is {t}", "what's {t}", "how to {v} {t}",
    "how do i {v} {t}", "{v} {t}", "{g} {t}", "{t} definition", "define {t}",
    "{t} cost", "average {t} price", "{t} phone number", "when was {t}", "can {t} cause pain",
    "does {t} work", "{t} facts", "{t} statistics", "download {t}", "{t} video", "buy {t}",
    "{t} games", "{t} website", "{t} login", "{s}", "{s}.com", "www.{s}.com", "{s} login",
    "{t} in miles", "{t} calories", "{t} zip code", "meaning of {t}",
]
_VERBS = ["make", "fix", "cook", "install", "change", "export", "build", "clean", "reset", "grow"]
_GERUNDS = ["making", "fixing", "cooking", "installing", "running", "cleaning", "growing"]
_SITES = [
    "facebook", "youtube", "amazon", "armystudyguide", "bankofamerica", "homedepot",
    "walmart", "netflix", "paypal", "linkedin", "chase", "target", "ebay", "weather",
]
_DOMAINS = [
    "en.wikipedia.org", "www.webmd.com", "www.merriam-webster.com", "www.drugs.com",
    "www.mayoclinic.org", "www.wikihow.com", "support.office.com", "support.apple.com",
    "www.healthline.com", "www.investopedia.com", "www.quora.com", "www.reddit.com",
    "www.cdc.gov", "www.nih.gov", "www.bbc.co.uk", "www.nytimes.com", "www.irs.gov",
    "www.britannica.com", "answers.yahoo.com", "www.history.com",
]


def synthetic_records(n: int, seed: int = 0, malformed_every: Optional[int] = None) -> Iterator:
    """Yield ``n`` :class:`QueryRecord` items.

    With ``malformed_every=k``, every k-th item is instead a raw malformed
    line (a ``str``); callers writing files use it to test skip handling.
    """
    rng = random.Random(seed)
    for i in range(n):
        if malformed_every and (i + 1) % malformed_every == 0:
            yield f"{i}\tbroken row without enough columns\n"
            continue
        site = rng.choice(_SITES)
        query = rng.choice(_TEMPLATES).format(
            t=rng.choice(_TOPICS),
            v=rng.choice(_VERBS),
            g=rng.choice(_GERUNDS),
            s=site,
        )
        r = rng.random()
        if r < 0.25:
            url = f"https://www.{site}.com/"
        elif r < 0.95:
            slug = query.replace(" ", "-")
            url = f"https://{rng.choice(_DOMAINS)}/{slug}"
        elif r < 0.98:
            url = f"http://site{rng.randrange(100000)}.example.net/page{i}"
        else:
            url = "not a url"
        yield QueryRecord(str(rng.randrange(10**7)), query, f"D{rng.randrange(10**7)}", url)


def write_synthetic_tsv(fh: TextIO, n: int, seed: int = 0, malformed_every: Optional[int] = None) -> int:
    count = 0
    for item in synthetic_records(n, seed, malformed_every):
        if isinstance(item, str):
            fh.write(item)
        else:
            fh.write(f"{item.query_id}\t{item.query}\t{item.doc_id}\t{item.url}\n")
        count += 1
    return count
