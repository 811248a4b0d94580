"""Query-likelihood retrieval over a fitted topic model: a Dirichlet-smoothed
document language model mixed with the model's per-document word
distribution. Scores are accumulated in log space; any query term with zero
combined probability makes the document score -inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import Corpus
from .sampler import TopicModel, estimate_theta


@dataclass
class RetrievalConfig:
    mu: float = 1000.0   # Dirichlet prior mass pulling toward the collection
    lam: float = 0.7     # weight of the smoothed document model in the mix

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be >= 0")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must be in [0, 1]")


@dataclass
class CollectionModel:
    """Maximum-likelihood word statistics of the corpus: per-document term
    counts and lengths plus the collection-wide distribution."""

    corpus: Corpus
    doc_lengths: np.ndarray = field(init=False)
    doc_counts: list[dict[int, int]] = field(init=False)
    collection_probs: np.ndarray = field(init=False)

    def __post_init__(self):
        self.doc_lengths = self.corpus.lengths().astype(np.float64)
        self.doc_counts = []
        coll = np.zeros(self.corpus.num_words, dtype=np.int64)
        for _, toks in self.corpus.documents:
            ids, counts = np.unique(toks, return_counts=True)
            self.doc_counts.append(dict(zip(ids.tolist(), counts.tolist())))
            coll[ids] += counts
        total = self.corpus.total_tokens
        self.collection_probs = (coll / total if total
                                 else coll.astype(np.float64))


def build_collection_model(corpus: Corpus) -> CollectionModel:
    return CollectionModel(corpus)


def smoothed_doc_prob(coll: CollectionModel, word: str, d: int,
                      config: RetrievalConfig) -> float:
    """Dirichlet-smoothed document probability of a word; 0 for words absent
    from the whole collection."""
    wid = coll.corpus.vocabulary.id_of(word)
    if wid is None:
        return 0.0
    n_d = coll.doc_lengths[d]
    w_doc = n_d / (n_d + config.mu)
    p_doc = coll.doc_counts[d].get(wid, 0) / n_d
    return float(w_doc * p_doc + (1.0 - w_doc) * coll.collection_probs[wid])


def lda_word_prob(model: TopicModel, word: str, d: int) -> float:
    """Topic-model probability of a word in document d: the word's
    per-topic probabilities weighted by the document's topic mix."""
    wid = model.corpus.vocabulary.id_of(word)
    if wid is None:
        return 0.0
    beta = model.hyper.beta
    phi_w = (beta + model.n_wt[wid].astype(np.float64)) \
        / (model.beta_v + model.n_t.astype(np.float64))
    return float(phi_w @ estimate_theta(model, d))


def combined_word_prob(model: TopicModel, coll: CollectionModel, word: str,
                       d: int, config: RetrievalConfig) -> float:
    """Mixture of the smoothed document model and the topic model."""
    return float(config.lam * smoothed_doc_prob(coll, word, d, config)
                 + (1.0 - config.lam) * lda_word_prob(model, word, d))


def query_score(model: TopicModel, coll: CollectionModel,
                query: Sequence[str], d: int,
                config: RetrievalConfig) -> float:
    """Log-likelihood of the document model generating the query, bag of
    words with multiplicity. Empty query scores 0; a query term with zero
    combined probability yields -inf."""
    score = 0.0
    for term in query:
        p = combined_word_prob(model, coll, term, d, config)
        if p <= 0.0:
            return float("-inf")
        score += math.log(p)
    return score


def rank_documents(model: TopicModel, coll: CollectionModel,
                   query: Sequence[str],
                   config: RetrievalConfig) -> list[tuple[str, float]]:
    """(doc_id, score) for every document, best first; ties keep corpus
    order."""
    scored = [(doc_id, query_score(model, coll, query, d, config))
              for d, (doc_id, _) in enumerate(model.corpus.documents)]
    return sorted(scored, key=lambda pair: -pair[1])
