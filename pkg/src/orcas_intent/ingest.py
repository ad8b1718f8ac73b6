"""Tab-separated corpus, gold and label files.

Corpus rows are headerless with four columns::

    query_id <TAB> query <TAB> doc_id <TAB> url

Gold rows add a fifth column with the label name. Labelled output adds
``top_level`` and ``final_label`` columns, plus an optional votes column of
``lf_id=vote`` pairs joined by ``;``. A path of ``-`` means stdin/stdout.
"""
from __future__ import annotations

import contextlib
import io
import os
import sys
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, List, Optional, TextIO, Union

from .errors import MalformedRow, UnknownLabel
from .taxonomy import IntentLabel, label_name

PathLike = Union[str, os.PathLike]


@dataclass(frozen=True)
class QueryRecord:
    query_id: str
    query: str
    doc_id: str
    url: str


@dataclass(frozen=True)
class GoldRecord:
    query_id: str
    query: str
    doc_id: str
    url: str
    gold_label: IntentLabel

    @property
    def record(self) -> QueryRecord:
        return QueryRecord(self.query_id, self.query, self.doc_id, self.url)


@dataclass(frozen=True)
class Malformed:
    """A corpus line that could not be turned into a record."""

    line_no: int
    line: str
    reason: str


@contextlib.contextmanager
def open_text(path: PathLike, mode: str = "r") -> Iterator[TextIO]:
    if str(path) == "-":
        stream = sys.stdin if "r" in mode else sys.stdout
        if hasattr(stream, "buffer"):
            stream = io.TextIOWrapper(stream.buffer, encoding="utf-8", newline="\n", write_through=True)
            try:
                yield stream
            finally:
                stream.detach()
        else:
            yield stream
        return
    with open(path, mode, encoding="utf-8", newline="\n") as fh:
        yield fh


def _split(line: str) -> List[str]:
    if line.endswith("\n"):
        line = line[:-1]
        if line.endswith("\r"):
            line = line[:-1]
    return line.split("\t")


def parse_record_line(line: str, line_no: int = 0) -> Union[QueryRecord, Malformed]:
    cols = _split(line)
    if len(cols) != 4:
        return Malformed(line_no, line, f"expected 4 columns, got {len(cols)}")
    qid, query, doc_id, url = cols
    if not (qid and query.strip() and doc_id and url):
        return Malformed(line_no, line, "empty field")
    return QueryRecord(qid, query.lower(), doc_id, url)


def iter_orcas_lines(lines: Iterable[str]) -> Iterator[Union[QueryRecord, Malformed]]:
    for line_no, line in enumerate(lines, 1):
        yield parse_record_line(line, line_no)


def read_orcas_tsv(path: PathLike) -> Iterator[Union[QueryRecord, Malformed]]:
    """Stream records in file order.

    Bad lines come through as :class:`Malformed` items rather than
    exceptions so a single reader can count and skip them.
    """
    with open_text(path) as fh:
        yield from iter_orcas_lines(fh)


def iter_records(path: PathLike) -> Iterator[QueryRecord]:
    """Well-formed records only."""
    for item in read_orcas_tsv(path):
        if isinstance(item, QueryRecord):
            yield item


def read_gold_tsv(path: PathLike) -> List[GoldRecord]:
    out = []
    with open_text(path) as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            cols = _split(line)
            if len(cols) != 5:
                raise MalformedRow(line_no, f"expected 5 columns, got {len(cols)}")
            qid, query, doc_id, url, label_text = cols
            try:
                label = IntentLabel.parse(label_text)
            except ValueError:
                raise UnknownLabel(line_no, label_text) from None
            out.append(GoldRecord(qid, query.lower(), doc_id, url, label))
    return out


def format_labeled(labeled, include_votes: bool = False) -> str:
    r = labeled.record
    cols = [r.query_id, r.query, r.doc_id, r.url, labeled.top_level.value, labeled.final_label.value]
    if include_votes:
        pairs = []
        for vv in (labeled.votes_l1, labeled.votes_l2):
            if vv is not None:
                pairs.extend(f"{lf_id}={label_name(v)}" for lf_id, v in vv.votes)
        cols.append(";".join(pairs))
    return "\t".join(cols) + "\n"


def write_labeled_tsv(sink: Union[PathLike, IO[str]], records, include_votes: bool = False) -> int:
    """Write labelled records; ``sink`` is a path or an open text stream."""
    if isinstance(sink, (str, os.PathLike)):
        with open_text(sink, "w") as fh:
            return write_labeled_tsv(fh, records, include_votes)
    n = 0
    for labeled in records:
        sink.write(format_labeled(labeled, include_votes))
        n += 1
    return n


@dataclass(frozen=True)
class PredictionRow:
    query_id: str
    query: str
    doc_id: str
    url: str
    final_label: IntentLabel
    votes: Optional[str] = None

    @property
    def top_level(self):
        return self.final_label.top_level


def read_labeled_tsv(path: PathLike) -> Iterator[PredictionRow]:
    """Read back labelled output (6 or 7 columns)."""
    with open_text(path) as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            cols = _split(line)
            if len(cols) not in (6, 7):
                raise MalformedRow(line_no, f"expected 6 or 7 columns, got {len(cols)}")
            try:
                label = IntentLabel.parse(cols[5])
            except ValueError:
                raise UnknownLabel(line_no, cols[5]) from None
            yield PredictionRow(cols[0], cols[1], cols[2], cols[3], label,
                                cols[6] if len(cols) == 7 else None)
