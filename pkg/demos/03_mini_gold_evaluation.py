"""
Scoring against the bundled mini-gold set
=========================================

100 hand-labelled query/URL pairs ship with the package. Label them, print
the per-class tables for the full taxonomy and for the three top-level
classes, then repeat with the URL-dependent rules muted.
"""

from pathlib import Path

import numpy as np

import orcas_intent
from orcas_intent import Labeler, RunConfig, evaluate, evaluate_top_level, read_gold_tsv
from orcas_intent.taxonomy import LEAF_ORDER, TopLevelLabel

gold_path = Path(orcas_intent.__file__).parent / "data" / "mini_gold.tsv"
gold = read_gold_tsv(gold_path)
truth = [g.gold_label for g in gold]

pred = [Labeler().label(g.record).final_label for g in gold]
full = evaluate(pred, truth, LEAF_ORDER)
print(full.to_text("Full taxonomy"))
print()
print(evaluate_top_level(pred, truth).to_text("Top level"))

# rows are gold labels, columns predictions
print("\nconfusion matrix (gold x predicted):")
print("  " + " ".join(f"{c.value[:5]:>6}" for c in full.classes))
print(np.array2string(full.confusion, formatter={"int": lambda x: f"{x:6d}"}))

muted = [Labeler(RunConfig(mute_url_lfs=True)).label(g.record).final_label for g in gold]
nav = TopLevelLabel.NAVIGATIONAL
before = evaluate_top_level(pred, truth).per_class[nav].recall
after = evaluate_top_level(muted, truth).per_class[nav].recall
print(f"\nnavigational recall: {before:.3f} with URL rules, {after:.3f} without")
