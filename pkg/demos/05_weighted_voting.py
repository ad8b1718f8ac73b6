"""
Majority versus agreement-weighted voting
=========================================

Fit per-function weights from agreement with the majority decision, then
compare the two aggregators on the same synthetic sample.
"""

from collections import Counter

from orcas_intent import Labeler
from orcas_intent.aggregation import WeightedAggregator, log_odds
from orcas_intent.pipeline import fit_cascade_weights
from orcas_intent.synthetic import synthetic_records

records = list(synthetic_records(20_000, seed=12))
weights = fit_cascade_weights(records)
for lf_id, w in sorted(weights.items(), key=lambda kv: -kv[1]):
    print(f"{lf_id:30} w={w:.3f}  log-odds={log_odds(w):+.2f}")

majority = Labeler()
weighted = Labeler(aggregator=WeightedAggregator(weights))
a = Counter(majority.label(r).final_label.value for r in records)
b = Counter(weighted.label(r).final_label.value for r in records)
print(f"\n{'label':15}{'majority':>10}{'weighted':>10}")
for label in sorted(set(a) | set(b)):
    print(f"{label:15}{a[label]:>10}{b[label]:>10}")

# Functions that mostly fire alongside a more frequent competing rule end up
# near the 0.05 floor, so their votes count against their own label.
