"""
Labelling a handful of queries
==============================

Walk a few query/URL pairs through both cascade levels and look at which
labelling functions fire. Run with ``python demos/01_labelling_functions.py``.
"""

from orcas_intent import QueryRecord, Labeler
from orcas_intent.taxonomy import label_name

labeler = Labeler()

pairs = [
    ("facebook.com", "https://www.facebook.com/"),
    ("army study guide", "https://www.armystudyguide.com/"),
    ("download zoom", "https://zoom.us/download"),
    ("what's the fastest animal in the world", "https://a-z-animals.com/"),
    ("how to tie a tie", "https://www.wikihow.com/Tie-a-Tie"),
    ("export itunes library", "https://support.apple.com/en-us/HT208627"),
    ("allergic rhinitis", "https://en.wikipedia.org/wiki/Allergic_rhinitis"),
    ("allergic rhinitis", "https://www.aaaai.org/conditions"),
]

for i, (query, url) in enumerate(pairs):
    lr = labeler.label(QueryRecord(str(i), query, f"D{i}", url))
    fired = [f"{lf}={label_name(v)}" for vv in (lr.votes_l1, lr.votes_l2) if vv for lf, v in vv.votes if v]
    print(f"{query!r:45} -> {lr.final_label.value:13} ({lr.top_level.value})")
    print(f"{'':48}fired: {', '.join(fired) or 'nothing'}")

# The second "allergic rhinitis" click goes to a site outside the fact list, so
# no rule fires at either level and the cascade assigns the abstain leaf.
# Level 2 only runs when level 1 declines; "facebook.com" never reaches it.
