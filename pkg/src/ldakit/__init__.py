"""Topic-modeling toolkit: preprocessing, collapsed Gibbs LDA with naive and
sparse bucket-decomposition engines, coherence-driven topic-count selection,
per-topic diagnostics, and query-likelihood retrieval scoring."""

from .corpus import (Corpus, RawDocument, Vocabulary, build_corpus,
                     clean_text, preprocess_text, remove_stopwords, stem,
                     tokenize)
from .diagnostics import (ConfidenceHistogram, ConfidenceStats, TopicReport,
                          average_model_coherence, confidence_histogram,
                          confidence_stats, document_entropy, exclusivity,
                          model_reports, topic_coherence, topic_counts,
                          topic_report, top_words)
from .retrieval import (CollectionModel, RetrievalConfig,
                        build_collection_model, combined_word_prob,
                        lda_word_prob, query_score, rank_documents,
                        smoothed_doc_prob)
from .sampler import (DocTopicRow, Hyperparameters, SparseSamplerState,
                      TopicModel, bucket_masses, estimate_phi, estimate_theta,
                      generate_corpus, gibbs_weight_naive, init_model,
                      init_sparse_state, load_checkpoint, optimize_alpha,
                      phi_matrix, sample_sparse, save_checkpoint,
                      sweep_naive, sweep_sparse, theta_matrix, train)
from .selection import SweepResult, SweepRow, coherence_sweep, select_k

__version__ = "0.1.0"
