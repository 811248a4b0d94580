"""Deterministic artifact writers. Every CSV has a header row and a fixed,
documented column order; floats are serialized with six significant digits
(round-half-even, Python's default formatting), so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus, Vocabulary
from .diagnostics import (ConfidenceHistogram, ConfidenceStats, TopicReport,
                          confidence_histogram)
from .sampler import DocTopicRow
from .selection import SweepResult


def fmt_float(x: float) -> str:
    return format(float(x), ".6g")


def _write_rows(path, header: Sequence[str], rows, delimiter: str = ",") -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_assignments_csv(path, rows: Sequence[DocTopicRow]) -> None:
    """doc_id, prediction, confidence_topic_0..k-1."""
    k = rows[0].confidences.shape[0] if rows else 0
    header = ["doc_id", "prediction"] + [f"confidence_topic_{t}"
                                         for t in range(k)]
    _write_rows(path, header,
                ([row.doc_id, row.prediction]
                 + [fmt_float(c) for c in row.confidences] for row in rows))


def write_topics_json(path, reports: Sequence[TopicReport]) -> None:
    """Per-topic ranked top words with their word-probability weights."""
    payload = {"topics": [{"topic": rep.topic,
                           "top_words": [{"word": w, "weight": weight}
                                         for w, weight in rep.top_words]}
                          for rep in reports]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_diagnostics_csv(path, reports: Sequence[TopicReport]) -> None:
    """topic, coherence, avg_word_length, exclusivity, document_entropy, tokens."""
    _write_rows(path,
                ["topic", "coherence", "avg_word_length", "exclusivity",
                 "document_entropy", "tokens"],
                ([rep.topic, fmt_float(rep.coherence),
                  fmt_float(rep.avg_word_length), fmt_float(rep.exclusivity),
                  fmt_float(rep.document_entropy), rep.tokens]
                 for rep in reports))


def write_stats_csv(path, stats: ConfidenceStats) -> None:
    """topic, min, max, mean, std."""
    _write_rows(path, ["topic", "min", "max", "mean", "std"],
                ([t, fmt_float(stats.minima[t]), fmt_float(stats.maxima[t]),
                  fmt_float(stats.means[t]), fmt_float(stats.stds[t])]
                 for t in range(stats.k)))


def write_histogram_csv(path, rows: Sequence[DocTopicRow], k: int,
                        bin_width: float) -> None:
    """topic, bin_lo, bin_hi, predicted_topic, count: one histogram of the
    confidence column of every topic, counts grouped by predicted topic."""
    out = []
    for t in range(k):
        hist: ConfidenceHistogram = confidence_histogram(rows, t, bin_width, k)
        for b, (lo, hi) in enumerate(hist.bins):
            for pred in range(k):
                out.append([t, fmt_float(lo), fmt_float(hi), pred,
                            int(hist.counts[b, pred])])
    _write_rows(path, ["topic", "bin_lo", "bin_hi", "predicted_topic",
                       "count"], out)


def write_counts_csv(path, counts: np.ndarray) -> None:
    """topic, documents."""
    _write_rows(path, ["topic", "documents"],
                ([t, int(c)] for t, c in enumerate(counts)))


def write_sweep_csv(path, result: SweepResult) -> None:
    """k, avg_coherence, wall_time_ms, seed."""
    _write_rows(path, ["k", "avg_coherence", "wall_time_ms", "seed"],
                ([row.k, fmt_float(row.avg_coherence),
                  fmt_float(row.wall_time_ms), row.seed]
                 for row in result.rows))


def write_dropped_csv(path, dropped: Sequence[tuple[str, str]]) -> None:
    """doc_id, reason."""
    _write_rows(path, ["doc_id", "reason"], (list(item) for item in dropped))


def write_scores_tsv(path, scored: Sequence[tuple[str, str, float]]) -> None:
    """query, doc_id, score: one block per query, best documents first."""
    _write_rows(path, ["query", "doc_id", "score"],
                ([query, doc_id, fmt_float(score)]
                 for query, doc_id, score in scored),
                delimiter="\t")


CORPUS_FORMAT = "ldakit-corpus"
CORPUS_VERSION = 1


def write_corpus_json(path, corpus: Corpus) -> None:
    payload = {
        "format": CORPUS_FORMAT,
        "version": CORPUS_VERSION,
        "doc_ids": corpus.doc_ids,
        "documents": [toks.tolist() for _, toks in corpus.documents],
        "words": list(corpus.vocabulary.words),
        "dropped": [list(item) for item in corpus.dropped],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))


def read_corpus_json(path) -> Corpus:
    with open(Path(path), encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != CORPUS_FORMAT:
        raise ValueError(f"not a {CORPUS_FORMAT} file: {path}")
    vocab = Vocabulary()
    for word in payload["words"]:
        vocab.add(word)
    documents = [(doc_id, np.asarray(toks, dtype=np.int32))
                 for doc_id, toks in zip(payload["doc_ids"],
                                         payload["documents"])]
    return Corpus(documents=documents, vocabulary=vocab,
                  dropped=[tuple(item) for item in payload["dropped"]],
                  total_tokens=int(sum(len(t) for _, t in documents)))
