"""Command-line entry point: ``label``, ``eval``, ``stats`` and ``agreement``."""
from __future__ import annotations

import argparse
import itertools
import os
import sys
from typing import List, Optional

from . import ingest
from .aggregation import Method, WeightedAggregator, load_weights, save_weights
from .config import LEXICON_ENV_VAR, RunConfig, load_config
from .errors import IntentError, SinkFailure
from .evaluation import agreement, evaluate, evaluate_top_level, gold_and_pred
from .lfs import registry_default
from .pipeline import Labeler, fit_cascade_weights, label_stream
from .stats import CorpusStatsAccumulator, label_distribution
from .taxonomy import LEAF_ORDER

EXIT_OK, EXIT_IO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _lf_help() -> str:
    lines = ["labelling functions (toggle with --enable/--disable or lf.<id>.enabled in --config):"]
    for lf in registry_default():
        url = " [url]" if lf.uses_url else ""
        lines.append(f"  L{int(lf.level)} {lf.id:<30} -> {lf.target.value:<13}{url} {lf.description}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orcas-intent",
        description="Weak-supervision intent labelling for query/URL click logs.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_lf_help(),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "label",
        help="label a TSV click log",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_lf_help() + f"\n\nLexicon directory precedence: --lexicons, config file, ${LEXICON_ENV_VAR}, bundled.",
    )
    p.add_argument("-i", "--input", required=True, help="4-column TSV ('-' for stdin)")
    p.add_argument("-o", "--output", required=True, help="labelled TSV ('-' for stdout)")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--lexicons", help="lexicon directory overriding the bundled lists")
    p.add_argument("--nav-threshold", type=float, help="Levenshtein ratio threshold (default 0.55)")
    p.add_argument("--aggregator", choices=[m.value for m in Method])
    p.add_argument("--weights", help="fitted weights file for --aggregator weighted")
    p.add_argument("--fit-sample", type=int, default=100_000,
                   help="rows used to fit weights when --weights is not given")
    p.add_argument("--save-weights", help="write fitted weights here")
    p.add_argument("--mute-url-lfs", action="store_true", default=None,
                   help="disable labelling functions that look at the clicked URL")
    p.add_argument("--enable", action="append", default=[], metavar="LF_ID")
    p.add_argument("--disable", action="append", default=[], metavar="LF_ID")
    p.add_argument("--include-votes", action="store_true", default=None,
                   help="append a column of lf_id=vote pairs")
    p.add_argument("--workers", type=int, help="worker processes (1 = serial)")

    p = sub.add_parser("eval", help="score predictions against a gold file")
    p.add_argument("--pred", required=True, help="labelled TSV from 'label'")
    p.add_argument("--gold", required=True, help="5-column gold TSV")
    p.add_argument("--level", choices=["full", "top"], default="full")

    p = sub.add_parser("stats", help="corpus statistics and label distribution")
    p.add_argument("-i", "--input", required=True,
                   help="corpus TSV; labelled files also get a label distribution")
    p.add_argument("--approximate", action="store_true",
                   help="HyperLogLog unique counts for low-memory runs")

    p = sub.add_parser("agreement", help="Cohen's kappa between two gold-format files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    return parser


def _config_from_args(args) -> RunConfig:
    try:
        config = load_config(args.config) if args.config else RunConfig()
        overrides = {lf_id: True for lf_id in args.enable}
        overrides.update({lf_id: False for lf_id in args.disable})
        config = config.updated(
            lexicon_dir=args.lexicons,
            nav_threshold=args.nav_threshold,
            aggregator=Method(args.aggregator) if args.aggregator else None,
            mute_url_lfs=args.mute_url_lfs,
            include_votes=args.include_votes,
            workers=args.workers,
            weights_file=args.weights,
            lf_overrides=overrides or None,
        )
        known = {lf.id for lf in registry_default()}
        unknown = set(config.lf_overrides) - known
        if unknown:
            raise ValueError(f"unknown labelling function(s): {', '.join(sorted(unknown))}")
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    return config


def cmd_label(args) -> int:
    config = _config_from_args(args)
    aggregator = None
    if config.aggregator is Method.AGREEMENT_WEIGHTED and not config.weights_file:
        if args.input == "-":
            raise UsageError("fitting weights needs a file input; pass --weights for stdin")
        sample = list(itertools.islice(ingest.iter_records(args.input), args.fit_sample))
        weights = fit_cascade_weights(sample, config, min_records=min(1000, len(sample)))
        aggregator = WeightedAggregator(weights)
        if args.save_weights:
            save_weights(weights, args.save_weights)
    elif config.weights_file:
        aggregator = WeightedAggregator(load_weights(config.weights_file))
    labeler = Labeler(config, aggregator=aggregator)

    source = ingest.read_orcas_tsv(args.input)
    if args.output == "-":
        with ingest.open_text("-", "w") as out:
            summary = label_stream(source, out, config, labeler)
    else:
        partial = args.output + ".partial"
        with open(partial, "w", encoding="utf-8", newline="\n") as out:
            summary = label_stream(source, out, config, labeler)
        os.replace(partial, args.output)
    print(summary.as_text(), file=sys.stderr)
    print(summary.as_kv(), file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    gold_rows = ingest.read_gold_tsv(args.gold)
    pred_rows = list(ingest.read_labeled_tsv(args.pred))
    gold, pred, missing = gold_and_pred(gold_rows, pred_rows)
    if not gold:
        print("error: no prediction matches any gold record on (query_id, url)", file=sys.stderr)
        return EXIT_IO
    if missing:
        print(f"warning: {missing} gold records have no prediction", file=sys.stderr)
    if args.level == "top":
        report = evaluate_top_level(pred, gold)
        title = "Top-level categories"
    else:
        report = evaluate(pred, gold, [c for c in LEAF_ORDER])
        title = "Full intent taxonomy"
    print(report.to_text(title))
    print()
    print(report.to_kv())
    return EXIT_OK


def _column_count(path: str) -> int:
    with ingest.open_text(path) as fh:
        for line in fh:
            if line.strip():
                return len(line.rstrip("\n").split("\t"))
    return 0


def cmd_stats(args) -> int:
    if args.input == "-":
        raise UsageError("stats needs a file input")
    ncols = _column_count(args.input)
    acc = CorpusStatsAccumulator(approximate=args.approximate)
    labels = []
    if ncols >= 6:
        for row in ingest.read_labeled_tsv(args.input):
            acc.add(ingest.QueryRecord(row.query_id, row.query, row.doc_id, row.url))
            labels.append(row.final_label)
    else:
        for rec in ingest.iter_records(args.input):
            acc.add(rec)
    stats = acc.result()
    print(stats.to_text())
    if labels:
        dist = label_distribution(labels)
        print()
        print(dist.to_text())
    print()
    print(stats.to_kv())
    if labels:
        print(dist.to_kv())
    return EXIT_OK


def cmd_agreement(args) -> int:
    a = ingest.read_gold_tsv(args.file_a)
    b = ingest.read_gold_tsv(args.file_b)
    if len(a) != len(b):
        raise UsageError(f"files cover different numbers of records: {len(a)} vs {len(b)}")
    if not a:
        raise UsageError("gold files are empty")
    result = agreement([r.gold_label for r in a], [r.gold_label for r in b])
    print(f"Cohen's kappa: {result.kappa:.4f}  (observed agreement {result.observed:.4f}, n={result.n})")
    print(f"kappa={result.kappa:.6f}")
    print(f"observed_agreement={result.observed:.6f}")
    return EXIT_OK


COMMANDS = {"label": cmd_label, "eval": cmd_eval, "stats": cmd_stats, "agreement": cmd_agreement}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except SinkFailure as exc:
        print(f"error: {exc}; partial output left in place", file=sys.stderr)
        return EXIT_IO
    except (OSError, IntentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
