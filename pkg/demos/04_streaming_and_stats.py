"""
Streaming a synthetic log
=========================

Generate a synthetic click log, label it in a streaming pass with a
couple of worker processes, then compute corpus statistics and the label
distribution.
"""

import io
import time

from orcas_intent import RunConfig, corpus_stats, label_distribution, label_stream
from orcas_intent.ingest import iter_orcas_lines
from orcas_intent.synthetic import write_synthetic_tsv

buf = io.StringIO()
write_synthetic_tsv(buf, 50_000, seed=3, malformed_every=5_000)
lines = buf.getvalue().splitlines(keepends=True)
print(f"{len(lines):,} lines generated")

labels = []
start = time.perf_counter()
summary = label_stream(iter_orcas_lines(lines), lambda lr: labels.append(lr.final_label), RunConfig(workers=2))
print(summary.as_text())
print(f"wall time {time.perf_counter() - start:.1f}s")

print()
print(corpus_stats(iter_orcas_lines(lines)).to_text())
print()
print(label_distribution(labels).to_text())

# approximate unique counts use HyperLogLog sketches instead of sets
print()
print(corpus_stats(iter_orcas_lines(lines), approximate=True).to_text())
