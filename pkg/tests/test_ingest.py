import io
from collections import Counter

import pytest

from orcas_intent.errors import MalformedRow, UnknownLabel
from orcas_intent.ingest import (
    Malformed,
    QueryRecord,
    format_labeled,
    read_gold_tsv,
    read_labeled_tsv,
    read_orcas_tsv,
    write_labeled_tsv,
)
from orcas_intent.pipeline import Labeler
from orcas_intent.taxonomy import IntentLabel


def test_read_record(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_text("q1\tfacebook.com\tD1\thttps://facebook.com\n")
    assert list(read_orcas_tsv(p)) == [QueryRecord("q1", "facebook.com", "D1", "https://facebook.com")]


def test_malformed_lines_are_reported_in_stream(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_text("q1\tok\tD1\thttp://a.com\nq2\tthree\tcols\n\nq3\t\tD3\thttp://b.com\nq4\tok\tD4\thttp://c.com\n")
    items = list(read_orcas_tsv(p))
    assert [type(i).__name__ for i in items] == ["QueryRecord", "Malformed", "Malformed", "Malformed", "QueryRecord"]
    assert [i.line_no for i in items if isinstance(i, Malformed)] == [2, 3, 4]


def test_query_is_lowercased_and_punctuation_kept(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_text("q1\tWhat's UP?\tD1\thttp://a.com\n")
    assert next(read_orcas_tsv(p)).query == "what's up?"


def test_stray_carriage_return_does_not_split_rows(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_bytes(b"q1\tfoo\rbar\tD1\thttp://a.com\r\n")
    rec = next(read_orcas_tsv(p))
    assert isinstance(rec, QueryRecord)
    assert rec.url == "http://a.com"


def test_n_lines_give_n_records(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_text("".join(f"q{i}\tquery\tD{i}\thttp://x.com/{i}\n" for i in range(250)))
    assert sum(1 for _ in read_orcas_tsv(p)) == 250


def test_write_suffixes():
    labeler = Labeler()
    nav = labeler.label(QueryRecord("1", "facebook.com", "D", "https://facebook.com"))
    fact = labeler.label(QueryRecord("2", "define osmosis", "D", "https://example.com"))
    assert format_labeled(nav).endswith("\tnavigational\tnavigational\n")
    assert format_labeled(fact).endswith("\tinformational\tfactual\n")
    with_votes = format_labeled(nav, include_votes=True).rstrip("\n").split("\t")
    assert len(with_votes) == 7
    assert "nav_tld_suffix=navigational" in with_votes[6].split(";")


def test_round_trip_preserves_ids_and_columns(tmp_path, mini_gold_path):
    src = tmp_path / "in.tsv"
    with open(mini_gold_path) as fh, open(src, "w") as out:
        for line in fh:
            out.write("\t".join(line.split("\t")[:4]) + "\n")
    labeler = Labeler()
    records = [r for r in read_orcas_tsv(src)]
    dst = tmp_path / "out.tsv"
    assert write_labeled_tsv(dst, (labeler.label(r) for r in records)) == len(records)
    back = list(read_labeled_tsv(dst))
    assert Counter(r.query_id for r in back) == Counter(r.query_id for r in records)
    for a, b in zip(records, back):
        assert (a.query_id, a.query, a.doc_id, a.url) == (b.query_id, b.query, b.doc_id, b.url)


def test_write_to_stream():
    buf = io.StringIO()
    labeler = Labeler()
    n = write_labeled_tsv(buf, [labeler.label(QueryRecord("1", "x", "D", "http://a.com"))])
    assert n == 1 and buf.getvalue().count("\n") == 1


def test_read_gold(tmp_path, mini_gold_path):
    assert len(read_gold_tsv(mini_gold_path)) == 100
    p = tmp_path / "g.tsv"
    p.write_text("q1\tfoo\tD1\thttp://a.com\tFactual\n")
    assert read_gold_tsv(p)[0].gold_label is IntentLabel.FACTUAL


def test_gold_unknown_label_is_fatal(tmp_path):
    p = tmp_path / "g.tsv"
    p.write_text("q1\tfoo\tD1\thttp://a.com\tfactual\nq2\tbar\tD2\thttp://b.com\texploratory\n")
    with pytest.raises(UnknownLabel) as err:
        read_gold_tsv(p)
    assert err.value.line_no == 2


def test_gold_wrong_columns(tmp_path):
    p = tmp_path / "g.tsv"
    p.write_text("q1\tfoo\tD1\thttp://a.com\n")
    with pytest.raises(MalformedRow):
        read_gold_tsv(p)
