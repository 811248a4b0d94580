import math

import numpy as np
import pytest

from conftest import corpus_from_token_lists, make_count_model
from ldakit.retrieval import (RetrievalConfig, build_collection_model,
                              combined_word_prob, lda_word_prob, query_score,
                              rank_documents, smoothed_doc_prob)
from ldakit.sampler import Hyperparameters, init_model


def toy_collection():
    corpus = corpus_from_token_lists(
        [["aa", "aa", "bb", "bb", "bb", "bb", "bb", "bb", "bb", "bb"],
         ["cc"] * 30])
    return corpus, build_collection_model(corpus)


def toy_model(corpus, k=2, seed=0):
    hyper = Hyperparameters(alpha=np.full(k, 1.0), beta=0.5, k=k, seed=seed)
    return init_model(corpus, hyper)


class TestRetrievalConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RetrievalConfig(mu=-1.0)
        with pytest.raises(ValueError):
            RetrievalConfig(lam=1.5)


class TestCollectionModel:
    def test_distributions_normalized(self):
        corpus, coll = toy_collection()
        assert abs(coll.collection_probs.sum() - 1.0) <= 1e-12
        for d, counts in enumerate(coll.doc_counts):
            total = sum(counts.values())
            assert total == coll.doc_lengths[d]


class TestSmoothedDocProb:
    def test_mu_zero_is_pure_document_ml(self):
        corpus, coll = toy_collection()
        config = RetrievalConfig(mu=0.0, lam=1.0)
        assert smoothed_doc_prob(coll, "aa", 0, config) == 2 / 10

    def test_half_half_mixture(self):
        corpus, coll = toy_collection()
        # N_d=10, mu=10 -> equal mixture; P_ML(aa|doc0)=0.2, P(aa|coll)=0.05
        config = RetrievalConfig(mu=10.0, lam=1.0)
        assert smoothed_doc_prob(coll, "aa", 0, config) == \
            pytest.approx(0.125, abs=1e-15)

    def test_large_mu_approaches_collection(self):
        corpus, coll = toy_collection()
        config = RetrievalConfig(mu=1e12, lam=1.0)
        value = smoothed_doc_prob(coll, "aa", 1, config)  # absent from doc 1
        assert value == pytest.approx(coll.collection_probs[0], abs=1e-9)

    def test_unknown_word_is_zero(self):
        corpus, coll = toy_collection()
        assert smoothed_doc_prob(coll, "zz", 0, RetrievalConfig()) == 0.0


class TestLdaWordProb:
    def test_k1_equals_phi(self):
        corpus = corpus_from_token_lists([["aa", "bb", "aa"]])
        model = toy_model(corpus, k=1)
        beta, beta_v = model.hyper.beta, model.beta_v
        expected = (beta + model.n_wt[0, 0]) / (beta_v + model.n_t[0])
        assert lda_word_prob(model, "aa", 0) == pytest.approx(expected,
                                                              abs=1e-15)

    def test_hand_mixture(self):
        # phi(word0) = (0.7, 0.1) across topics, theta = (0.5, 0.5) -> 0.4
        model = make_count_model(n_td=[[3, 3]], n_wt=[[6, 0], [2, 8]],
                                 alpha=[1.0, 1.0], beta=1.0,
                                 words=["target", "other"])
        assert lda_word_prob(model, "target", 0) == pytest.approx(0.4,
                                                                  abs=1e-15)

    def test_sums_to_one_over_vocabulary(self):
        corpus = corpus_from_token_lists(
            [["aa", "bb", "cc", "aa"], ["bb", "dd", "dd"]])
        model = toy_model(corpus, k=3)
        for d in range(corpus.num_docs):
            total = sum(lda_word_prob(model, w, d)
                        for w in corpus.vocabulary.words)
            assert abs(total - 1.0) <= 1e-12


class TestCombinedWordProb:
    def test_lambda_one_reduces_to_smoothed(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=1.0)
        assert combined_word_prob(model, coll, "aa", 0, config) == \
            smoothed_doc_prob(coll, "aa", 0, config)

    def test_lambda_zero_reduces_to_lda(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=0.0)
        assert combined_word_prob(model, coll, "aa", 0, config) == \
            lda_word_prob(model, "aa", 0)

    def test_mixture_arithmetic(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=0.7)
        s = smoothed_doc_prob(coll, "aa", 0, config)
        l = lda_word_prob(model, "aa", 0)
        assert combined_word_prob(model, coll, "aa", 0, config) == \
            0.7 * s + (1.0 - 0.7) * l
        assert 0.7 * 0.125 + 0.3 * 0.4 == pytest.approx(0.2075, abs=1e-15)

    def test_output_in_unit_interval(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=25.0, lam=0.4)
        for word in corpus.vocabulary.words:
            for d in range(corpus.num_docs):
                assert 0.0 <= combined_word_prob(model, coll, word, d,
                                                 config) <= 1.0


class TestQueryScore:
    def test_empty_query_scores_zero(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        assert query_score(model, coll, [], 0, RetrievalConfig()) == 0.0

    def test_single_term(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=0.6)
        expected = math.log(combined_word_prob(model, coll, "aa", 0, config))
        assert query_score(model, coll, ["aa"], 0, config) == expected

    def test_two_terms_sum_of_logs(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=0.6)
        expected = (math.log(combined_word_prob(model, coll, "aa", 0, config))
                    + math.log(combined_word_prob(model, coll, "bb", 0,
                                                  config)))
        assert query_score(model, coll, ["aa", "bb"], 0, config) == \
            pytest.approx(expected, abs=0)

    def test_multiplicity_counts(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=10.0, lam=0.6)
        single = query_score(model, coll, ["aa"], 0, config)
        double = query_score(model, coll, ["aa", "aa"], 0, config)
        assert double == pytest.approx(2 * single, rel=1e-12)

    def test_unknown_term_scores_negative_infinity(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        assert query_score(model, coll, ["zz"], 0, RetrievalConfig()) == \
            float("-inf")

    def test_pure_document_ml_reduction(self):
        # lambda=1, mu=0: score is the plain document ML log-likelihood
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        config = RetrievalConfig(mu=0.0, lam=1.0)
        got = query_score(model, coll, ["aa", "bb", "aa"], 0, config)
        expected = 2 * math.log(2 / 10) + math.log(8 / 10)
        assert got == pytest.approx(expected, rel=1e-12)

    def test_term_reordering_keeps_best_document(self):
        corpus = corpus_from_token_lists(
            [["aa", "bb", "aa", "cc"], ["bb", "bb", "dd"],
             ["cc", "cc", "aa"], ["dd", "ee", "ee"]])
        coll = build_collection_model(corpus)
        model = toy_model(corpus, k=2, seed=3)
        config = RetrievalConfig(mu=5.0, lam=0.7)
        query = ["aa", "cc", "bb"]
        base = rank_documents(model, coll, query, config)[0][0]
        for perm in (["cc", "bb", "aa"], ["bb", "aa", "cc"],
                     ["aa", "bb", "cc"]):
            assert rank_documents(model, coll, perm, config)[0][0] == base


class TestRankDocuments:
    def test_sorted_descending(self):
        corpus, coll = toy_collection()
        model = toy_model(corpus)
        # pure language model: the doc that contains "aa" must win
        config = RetrievalConfig(mu=10.0, lam=1.0)
        ranked = rank_documents(model, coll, ["aa"], config)
        scores = [s for _, s in ranked]
        assert scores == sorted(scores, reverse=True)
        assert ranked[0][0] == "d0"
