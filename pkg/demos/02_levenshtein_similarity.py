"""
Query/domain similarity
=======================

The navigational URL rule compares the query, with spaces and punctuation
removed, against the clicked domain minus ``www.`` and its public suffix.
A ratio of 0.55 or more counts as a navigational vote.
"""

import numpy as np

from orcas_intent.url_tools import compact_query, levenshtein_distance, navigational_similarity, parse_url

for url in ["https://www.armystudyguide.com/guide", "https://support.office.com/en-us/x", "http://news.bbc.co.uk/"]:
    p = parse_url(url)
    print(f"{url:40} host={p.host:24} core={p.domain_core}")

print()
queries = ["army study guide", "army guide", "home depot", "bank of america", "allergic rhinitis"]
domains = ["https://www.armystudyguide.com/", "https://www.homedepot.com/", "https://www.bankofamerica.com/",
           "https://en.wikipedia.org/"]

# similarity matrix, queries x domains
sim = np.array([[navigational_similarity(q, parse_url(d)) for d in domains] for q in queries])
cores = [parse_url(d).domain_core for d in domains]
print(" " * 20 + "".join(f"{c:>16}" for c in cores))
for q, row in zip(queries, sim):
    print(f"{q:20}" + "".join(f"{v:>15.3f}{'*' if v >= 0.55 else ' '}" for v in row))

# the ratio is (|a| + |b| - Lev) / (|a| + |b|)
a, b = compact_query("army guide"), "armystudyguide"
d = levenshtein_distance(a, b)
print(f"\nLev({a!r}, {b!r}) = {d}; ratio = ({len(a)} + {len(b)} - {d}) / {len(a) + len(b)} = "
      f"{(len(a) + len(b) - d) / (len(a) + len(b)):.3f}")
