"""Command-line front end.

Subcommands: preprocess, train, sweep, diagnose, score, generate. Every
flag can also be set through an environment variable named
LDAKIT_<COMMAND>_<FLAG> (e.g. LDAKIT_TRAIN_SEED=7). Exit codes: 0 success,
2 usage or missing input, 3 data error (no usable documents); data errors
print one JSON line to stderr.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import artifacts, corpus as corpus_mod, diagnostics, retrieval, sampler
from . import selection

CONTEXT_SETTINGS = {"auto_envvar_prefix": "LDAKIT"}


def _fail_data(message: str) -> None:
    click.echo(json.dumps({"error": message}), err=True)
    sys.exit(3)


def _load_stoplist(stopwords_path):
    if stopwords_path is None:
        return corpus_mod.DEFAULT_STOPWORDS
    return corpus_mod.read_stopword_file(stopwords_path)


def _ingest(input_path, fmt, id_col, text_col, stopwords_path, stemming):
    if fmt == "csv":
        raw, bad = corpus_mod.read_documents_csv(input_path, id_col, text_col)
    else:
        raw, bad = corpus_mod.read_documents_jsonl(input_path, id_col, text_col)
    if bad:
        click.echo(f"skipped {len(bad)} malformed input rows", err=True)
    built = corpus_mod.build_corpus(raw, _load_stoplist(stopwords_path),
                                    stemming=stemming)
    built.dropped[:0] = bad  # malformed rows come first in dropped.csv
    if built.num_docs == 0:
        _fail_data("no usable documents after preprocessing")
    return built


def _build_hyper(corpus, k, iterations, opt_interval, chains, seed, beta):
    if beta is None:
        beta = 50.0 / corpus.num_words
    return sampler.Hyperparameters(alpha=np.full(k, 50.0 / k), beta=beta,
                                   k=k, iterations=iterations,
                                   opt_interval=opt_interval, chains=chains,
                                   seed=seed)


def _write_model_artifacts(out_dir: Path, corpus, model, rows, top_n, epsilon,
                           bin_width):
    reports = diagnostics.model_reports(model, corpus, top_n, epsilon)
    stats = diagnostics.confidence_stats(rows)
    counts = diagnostics.topic_counts(rows, model.k)
    artifacts.write_assignments_csv(out_dir / "assignments.csv", rows)
    artifacts.write_topics_json(out_dir / "topics.json", reports)
    artifacts.write_diagnostics_csv(out_dir / "diagnostics.csv", reports)
    artifacts.write_stats_csv(out_dir / "stats.csv", stats)
    artifacts.write_histogram_csv(out_dir / "histogram.csv", rows, model.k,
                                  bin_width)
    artifacts.write_counts_csv(out_dir / "counts.csv", counts)
    artifacts.write_dropped_csv(out_dir / "dropped.csv", corpus.dropped)


input_options = [
    click.option("--input", "input_path", required=True,
                 type=click.Path(exists=True, dir_okay=False),
                 help="Input documents."),
    click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]),
                 default="csv", show_default=True),
    click.option("--id-col", default="id", show_default=True,
                 help="Id column (csv) or field (jsonl)."),
    click.option("--text-col", default="text", show_default=True,
                 help="Text column (csv) or field (jsonl)."),
    click.option("--stopwords", "stopwords_path",
                 type=click.Path(exists=True, dir_okay=False), default=None,
                 help="Stopword file (one word per line, '#' comments); "
                      "defaults to the embedded English list."),
    click.option("--no-stem", "stemming", flag_value=False, default=True,
                 help="Disable stemming."),
]

training_options = [
    click.option("--iterations", default=1000, show_default=True, type=int),
    click.option("--opt-interval", default=10, show_default=True, type=int,
                 help="Sweeps between alpha optimizations; 0 disables."),
    click.option("--chains", default=1, show_default=True, type=int),
    click.option("--engine", type=click.Choice(["naive", "sparse"]),
                 default="sparse", show_default=True),
    click.option("--seed", default=0, show_default=True, type=int),
    click.option("--beta", default=None, type=float,
                 help="Word-distribution smoothing; defaults to "
                      "50/vocabulary_size."),
]

diag_options = [
    click.option("--top-words", "top_n", default=10, show_default=True,
                 type=int),
    click.option("--epsilon", default=1e-12, show_default=True, type=float),
    click.option("--bin-width", default=0.1, show_default=True, type=float),
]

out_dir_option = click.option(
    "--out-dir", required=True,
    type=click.Path(file_okay=False, path_type=Path))


def _apply(options):
    def wrap(f):
        for option in reversed(options):
            f = option(f)
        return f
    return wrap


@click.group(context_settings=CONTEXT_SETTINGS)
def main():
    """Topic modeling: preprocessing, Gibbs-sampled LDA (naive and sparse
    engines), coherence-driven selection of the topic count, per-topic
    diagnostics, and query-likelihood scoring."""


@main.command()
@_apply(input_options)
@out_dir_option
def preprocess(input_path, fmt, id_col, text_col, stopwords_path, stemming,
               out_dir):
    """Clean, tokenize, filter and id-encode documents."""
    built = _ingest(input_path, fmt, id_col, text_col, stopwords_path,
                    stemming)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts.write_corpus_json(out_dir / "corpus.json", built)
    artifacts.write_dropped_csv(out_dir / "dropped.csv", built.dropped)
    click.echo(f"documents={built.num_docs} vocabulary={built.num_words} "
               f"tokens={built.total_tokens} dropped={len(built.dropped)}")


@main.command()
@_apply(input_options)
@_apply(training_options)
@_apply(diag_options)
@click.option("--k", required=True, type=int, help="Number of topics.")
@out_dir_option
def train(input_path, fmt, id_col, text_col, stopwords_path, stemming,
          iterations, opt_interval, chains, engine, seed, beta, top_n,
          epsilon, bin_width, k, out_dir):
    """Fit a topic model and write every analysis artifact."""
    built = _ingest(input_path, fmt, id_col, text_col, stopwords_path,
                    stemming)
    hyper = _build_hyper(built, k, iterations, opt_interval, chains, seed,
                         beta)
    model, rows = sampler.train(built, hyper, engine=engine)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_model_artifacts(out_dir, built, model, rows, top_n, epsilon,
                           bin_width)
    sampler.save_checkpoint(model, out_dir / "model.json")
    click.echo(f"trained k={k} on {built.num_docs} documents "
               f"({built.total_tokens} tokens), artifacts in {out_dir}")


@main.command()
@_apply(input_options)
@_apply(training_options)
@click.option("--top-words", "top_n", default=10, show_default=True, type=int)
@click.option("--epsilon", default=1e-12, show_default=True, type=float)
@click.option("--k-min", default=2, show_default=True, type=int)
@click.option("--k-max", default=50, show_default=True, type=int)
@click.option("--workers", default=1, show_default=True, type=int)
@out_dir_option
def sweep(input_path, fmt, id_col, text_col, stopwords_path, stemming,
          iterations, opt_interval, chains, engine, seed, beta, top_n,
          epsilon, k_min, k_max, workers, out_dir):
    """Train across a range of topic counts and report the best one."""
    built = _ingest(input_path, fmt, id_col, text_col, stopwords_path,
                    stemming)
    template = _build_hyper(built, 1, iterations, opt_interval, chains, seed,
                            beta)
    result = selection.coherence_sweep(built, k_min, k_max, template,
                                       engine=engine, n_top=top_n,
                                       epsilon=epsilon, workers=workers)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts.write_sweep_csv(out_dir / "sweep.csv", result)
    for k, message in result.failures:
        click.echo(f"k={k} failed: {message}", err=True)
    if not result.rows:
        _fail_data("every k in the sweep failed")
    click.echo(f"selected k = {selection.select_k(result)}")


@main.command()
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Checkpoint written by `train`.")
@_apply(diag_options)
@out_dir_option
def diagnose(model_path, top_n, epsilon, bin_width, out_dir):
    """Recompute diagnostics artifacts from a model checkpoint."""
    model = sampler.load_checkpoint(model_path)
    theta = sampler.theta_matrix(model)
    theta /= theta.sum(axis=1, keepdims=True)
    rows = [sampler.DocTopicRow(doc_id, theta[d], int(np.argmax(theta[d])))
            for d, (doc_id, _) in enumerate(model.corpus.documents)]
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_model_artifacts(out_dir, model.corpus, model, rows, top_n, epsilon,
                           bin_width)
    click.echo(f"diagnostics for k={model.k} written to {out_dir}")


@main.command()
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--queries", "queries_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="One query per line.")
@click.option("--mu", default=1000.0, show_default=True, type=float)
@click.option("--lambda", "lam", default=0.7, show_default=True, type=float)
@click.option("--stopwords", "stopwords_path",
              type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--no-stem", "stemming", flag_value=False, default=True)
@out_dir_option
def score(model_path, queries_path, mu, lam, stopwords_path, stemming,
          out_dir):
    """Score queries against every document of a checkpointed model."""
    model = sampler.load_checkpoint(model_path)
    coll = retrieval.build_collection_model(model.corpus)
    config = retrieval.RetrievalConfig(mu=mu, lam=lam)
    stoplist = _load_stoplist(stopwords_path)
    with open(queries_path, encoding="utf-8") as fh:
        queries = [line.strip() for line in fh if line.strip()]
    if not queries:
        _fail_data("query file contains no queries")
    scored: list[tuple[str, str, float]] = []
    for query in queries:
        terms = corpus_mod.preprocess_text(query, stoplist, stemming)
        unknown = [t for t in terms if t not in model.corpus.vocabulary]
        if unknown:
            click.echo(f"query {query!r}: terms not in collection: "
                       f"{sorted(set(unknown))}", err=True)
        ranking = retrieval.rank_documents(model, coll, terms, config)
        scored.extend((query, doc_id, s) for doc_id, s in ranking)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts.write_scores_tsv(out_dir / "scores.tsv", scored)
    click.echo(f"scored {len(queries)} queries against "
               f"{model.corpus.num_docs} documents")


@main.command()
@click.option("--k", default=3, show_default=True, type=int)
@click.option("--num-words", default=60, show_default=True, type=int)
@click.option("--num-docs", default=300, show_default=True, type=int)
@click.option("--doc-length", default=40, show_default=True, type=int)
@click.option("--gen-alpha", default=0.2, show_default=True, type=float,
              help="Dirichlet parameter for the planted topic mixes.")
@click.option("--gen-beta", default=0.05, show_default=True, type=float,
              help="Dirichlet parameter for the planted word distributions.")
@click.option("--seed", default=0, show_default=True, type=int)
@out_dir_option
def generate(k, num_words, num_docs, doc_length, gen_alpha, gen_beta, seed,
             out_dir):
    """Sample a synthetic corpus with known topics (writes corpus.csv and
    the planted distributions)."""
    built, theta, phi = sampler.generate_corpus(k, num_words, num_docs,
                                                doc_length, gen_alpha,
                                                gen_beta, seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    vocab = built.vocabulary
    with open(out_dir / "corpus.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("id,text\n")
        for doc_id, toks in built.documents:
            text = " ".join(vocab.word_of(int(w)) for w in toks)
            fh.write(f"{doc_id},{text}\n")
    truth = {"theta": theta.tolist(), "phi": phi.tolist(),
             "words": list(vocab.words), "seed": seed}
    with open(out_dir / "truth.json", "w", encoding="utf-8") as fh:
        json.dump(truth, fh, sort_keys=True, separators=(",", ":"))
    click.echo(f"generated {num_docs} documents x {doc_length} tokens, "
               f"k={k}, vocabulary={num_words}")


if __name__ == "__main__":
    main()
