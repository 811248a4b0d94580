"""Topic-quality metrics (coherence, exclusivity, document entropy) and
document-confidence summaries (column statistics, histograms, per-topic
document counts).

Coherence uses document frequency as the probability estimator: P(w) is the
fraction of corpus documents containing w at least once, P(w_i, w_j) the
fraction containing both. A small epsilon keeps the log finite when a pair
never co-occurs; the per-pair scores are averaged, so values are negative
for any topic whose top words do not always co-occur.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .corpus import Corpus
from .sampler import DocTopicRow, TopicModel, phi_matrix

DEFAULT_EPSILON = 1e-12
DEFAULT_TOP_WORDS = 10


@dataclass
class TopicReport:
    """Per-topic diagnostics row."""

    topic: int
    top_words: list[tuple[str, float]]  # (word, phi weight), ranked
    coherence: float
    exclusivity: float
    document_entropy: float
    tokens: int
    avg_word_length: float


@dataclass
class ConfidenceStats:
    """Column statistics of the per-document confidence table."""

    minima: np.ndarray
    maxima: np.ndarray
    means: np.ndarray
    stds: np.ndarray  # population standard deviation (divisor n)

    @property
    def k(self) -> int:
        return self.minima.shape[0]


@dataclass
class ConfidenceHistogram:
    """Counts of documents per confidence bin, grouped by predicted topic.

    `bins[i]` is the (lo, hi) interval of bin i; intervals are half-open
    except the last, which is closed at 1.0. `counts[i, p]` is the number
    of documents predicted as topic p whose confidence falls in bin i.
    """

    topic: int
    bins: list[tuple[float, float]]
    counts: np.ndarray  # (num_bins, k) int64


def top_word_ids(model: TopicModel, t: int, n_top: int) -> list[int]:
    """Word ids ranked by n_wt descending, ties by word string ascending."""
    words = model.corpus.vocabulary.words
    counts = model.n_wt[:, t]
    order = sorted(range(len(words)), key=lambda w: (-int(counts[w]), words[w]))
    return order[:n_top]


def top_words(model: TopicModel, t: int,
              n_top: int = DEFAULT_TOP_WORDS) -> list[tuple[str, float]]:
    """Ranked top words of a topic with their word-probability weights."""
    beta, beta_v = model.hyper.beta, model.beta_v
    denom = beta_v + float(model.n_t[t])
    return [(model.corpus.vocabulary.word_of(w),
             (beta + float(model.n_wt[w, t])) / denom)
            for w in top_word_ids(model, t, n_top)]


def _doc_sets(corpus: Corpus, words: Sequence[str]) -> list[set[int]]:
    ids = [corpus.vocabulary.id_of(w) for w in words]
    sets: list[set[int]] = [set() for _ in words]
    for d, (_, toks) in enumerate(corpus.documents):
        present = set(toks.tolist())
        for j, wid in enumerate(ids):
            if wid is not None and wid in present:
                sets[j].add(d)
    return sets


def topic_coherence(ranked_words: Sequence[str], corpus: Corpus,
                    epsilon: float = DEFAULT_EPSILON) -> float:
    """Mean over ranked word pairs of log((P(w_i, w_j) + eps) / P(w_j)),
    where w_j is the higher-ranked word of each pair."""
    n = len(ranked_words)
    if n < 2:
        raise ValueError("coherence needs at least two ranked words")
    num_docs = corpus.num_docs
    if num_docs == 0:
        raise ValueError("coherence needs a non-empty corpus")
    sets = _doc_sets(corpus, ranked_words)
    total = 0.0
    for i in range(1, n):
        for j in range(i):
            p_j = len(sets[j]) / num_docs
            if p_j == 0.0:
                raise ValueError(
                    f"word {ranked_words[j]!r} occurs in no document")
            p_ij = len(sets[i] & sets[j]) / num_docs
            total += math.log((p_ij + epsilon) / p_j)
    return 2.0 / (n * (n - 1)) * total


def average_model_coherence(model: TopicModel, corpus: Corpus,
                            n_top: int = DEFAULT_TOP_WORDS,
                            epsilon: float = DEFAULT_EPSILON) -> float:
    """Arithmetic mean of the per-topic coherences."""
    scores = [topic_coherence([w for w, _ in top_words(model, t, n_top)],
                              corpus, epsilon)
              for t in range(model.k)]
    return float(np.mean(scores))


def exclusivity(model: TopicModel, t: int,
                n_top: int = DEFAULT_TOP_WORDS) -> float:
    """Mean over the topic's top words of the share of the word's
    probability mass that belongs to this topic."""
    phi = phi_matrix(model)
    ids = top_word_ids(model, t, n_top)
    return float(np.mean([phi[t, w] / phi[:, w].sum() for w in ids]))


def document_entropy(model: TopicModel, t: int) -> float:
    """Entropy (nats) of the distribution of topic-t tokens over documents."""
    total = int(model.n_t[t])
    if total == 0:
        warnings.warn(f"topic {t} has no tokens; entropy defined as 0",
                      RuntimeWarning)
        return 0.0
    counts = model.n_td[:, t].astype(np.float64)
    p = counts[counts > 0] / total
    return float(-(p * np.log(p)).sum())


def topic_report(model: TopicModel, corpus: Corpus, t: int,
                 n_top: int = DEFAULT_TOP_WORDS,
                 epsilon: float = DEFAULT_EPSILON) -> TopicReport:
    ranked = top_words(model, t, n_top)
    words = [w for w, _ in ranked]
    return TopicReport(
        topic=t,
        top_words=ranked,
        coherence=topic_coherence(words, corpus, epsilon),
        exclusivity=exclusivity(model, t, n_top),
        document_entropy=document_entropy(model, t),
        tokens=int(model.n_t[t]),
        avg_word_length=sum(len(w) for w in words) / len(words),
    )


def model_reports(model: TopicModel, corpus: Corpus,
                  n_top: int = DEFAULT_TOP_WORDS,
                  epsilon: float = DEFAULT_EPSILON) -> list[TopicReport]:
    return [topic_report(model, corpus, t, n_top, epsilon)
            for t in range(model.k)]


def confidence_stats(rows: Sequence[DocTopicRow]) -> ConfidenceStats:
    """Per-topic min/max/mean/population-std over the confidence columns."""
    if not rows:
        raise ValueError("confidence_stats needs at least one row")
    mat = np.stack([row.confidences for row in rows])
    return ConfidenceStats(minima=mat.min(axis=0), maxima=mat.max(axis=0),
                           means=mat.mean(axis=0), stds=mat.std(axis=0))


def confidence_histogram(rows: Sequence[DocTopicRow], topic: int,
                         bin_width: float,
                         k: Optional[int] = None) -> ConfidenceHistogram:
    """Histogram of one topic's confidence column, counts grouped by the
    predicted topic. Bins are [0,w), [w,2w), ...; the last bin closes at 1."""
    if not 0.0 < bin_width <= 1.0:
        raise ValueError("bin_width must be in (0, 1]")
    if k is None:
        if not rows:
            raise ValueError("k is required when rows is empty")
        k = rows[0].confidences.shape[0]
    num_bins = max(1, math.ceil(1.0 / bin_width - 1e-9))
    counts = np.zeros((num_bins, k), dtype=np.int64)
    for row in rows:
        conf = float(row.confidences[topic])
        idx = min(num_bins - 1, int(conf / bin_width + 1e-9))
        counts[idx, row.prediction] += 1
    bins = [(i * bin_width, min((i + 1) * bin_width, 1.0))
            for i in range(num_bins)]
    bins[-1] = (bins[-1][0], 1.0)
    return ConfidenceHistogram(topic=topic, bins=bins, counts=counts)


def topic_counts(rows: Sequence[DocTopicRow],
                 k: Optional[int] = None) -> np.ndarray:
    """Number of documents predicted for each topic."""
    if k is None:
        k = rows[0].confidences.shape[0] if rows else 0
    preds = np.array([row.prediction for row in rows], dtype=np.int64)
    return np.bincount(preds, minlength=k).astype(np.int64)
