import numpy as np
import pytest

from ldakit.corpus import Corpus, Vocabulary
from ldakit.sampler import Hyperparameters, TopicModel


def corpus_from_token_lists(docs: list[list[str]]) -> Corpus:
    """Corpus built directly from word lists (no preprocessing)."""
    vocab = Vocabulary()
    documents = []
    total = 0
    for i, words in enumerate(docs):
        ids = np.array([vocab.add(w) for w in words], dtype=np.int32)
        documents.append((f"d{i}", ids))
        total += len(ids)
    return Corpus(documents=documents, vocabulary=vocab, total_tokens=total)


def make_count_model(n_td, n_wt, alpha, beta, n_t=None,
                     words=None) -> TopicModel:
    """Free-standing model with prescribed count matrices, for estimator and
    weight tests that do not touch z."""
    n_td = np.asarray(n_td, dtype=np.int32)
    n_wt = np.asarray(n_wt, dtype=np.int32)
    alpha = np.asarray(alpha, dtype=np.float64)
    k = alpha.shape[0]
    if n_t is None:
        n_t = n_wt.sum(axis=0).astype(np.int64)
    else:
        n_t = np.asarray(n_t, dtype=np.int64)
    num_words = n_wt.shape[0]
    vocab = Vocabulary()
    for w in range(num_words):
        vocab.add(words[w] if words else f"w{w}")
    documents = [(f"d{d}", np.zeros(0, dtype=np.int32))
                 for d in range(n_td.shape[0])]
    corpus = Corpus(documents=documents, vocabulary=vocab, total_tokens=0)
    hyper = Hyperparameters(alpha=alpha, beta=float(beta), k=k, iterations=1,
                            opt_interval=0)
    return TopicModel(corpus=corpus, hyper=hyper,
                      tokens=np.zeros(0, dtype=np.int32),
                      doc_offsets=np.zeros(n_td.shape[0] + 1, dtype=np.int64),
                      z=np.zeros(0, dtype=np.int32), n_td=n_td, n_wt=n_wt,
                      n_t=n_t)


def recount_from_z(model):
    """Independent plain-Python recount of all count matrices from z."""
    k = model.k
    n_td = [[0] * k for _ in range(model.num_docs)]
    n_wt = [[0] * k for _ in range(model.num_words)]
    n_t = [0] * k
    for d in range(model.num_docs):
        for i in range(int(model.doc_offsets[d]), int(model.doc_offsets[d + 1])):
            w = int(model.tokens[i])
            t = int(model.z[i])
            n_td[d][t] += 1
            n_wt[w][t] += 1
            n_t[t] += 1
    return n_td, n_wt, n_t


def counts_match(model) -> bool:
    n_td, n_wt, n_t = recount_from_z(model)
    return (model.n_td.tolist() == n_td and model.n_wt.tolist() == n_wt
            and model.n_t.tolist() == n_t)


class StreamRng:
    """Stands in for a Generator, replaying a fixed uniform array."""

    def __init__(self, uniforms):
        self.uniforms = np.asarray(uniforms, dtype=np.float64)

    def random(self, n):
        assert n == self.uniforms.shape[0]
        return self.uniforms


@pytest.fixture
def tiny_texts():
    return [
        ("t1", "Monkey pox cases are rising in the city"),
        ("t2", "New vaccine doses arrive for monkey pox"),
        ("t3", "The city reports new cases and more doses"),
    ]
