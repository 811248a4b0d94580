"""Collapsed Gibbs samplers for LDA: a naive engine that recomputes the
full sampling mass at every token, and a sparse engine that decomposes the
mass into smoothing / document / word buckets and maintains them
incrementally.

Both engines draw exactly one uniform per token (a full sweep consumes
``rng.random(num_tokens)``) and map that uniform to a topic through an
inverse CDF whose terms are visited in one fixed order:

  1. smoothing terms  alpha[t]*beta/(beta*V + n_t[t])  for all topics,
     ascending topic index;
  2. document terms   n_td[d,t]*beta/(beta*V + n_t[t]) over topics with
     n_td[d,t] > 0, ascending topic index;
  3. word terms       (alpha[t]+n_td[d,t])/(beta*V + n_t[t]) * n_wt[w,t]
     over topics with n_wt[w,t] > 0 in descending count order, ties broken
     by ascending topic index.

Because the term order and the floating-point expressions are shared, the
two engines produce identical assignment sequences when fed the same
uniform stream; one is merely much cheaper per token. The implementations
here are the plain-Python reference; `ldakit._kernels` holds compiled
versions of the same loops used by `train` for throughput.
"""

from __future__ import annotations

import dataclasses
import json
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import psi

from .corpus import Corpus, Vocabulary


@dataclass
class Hyperparameters:
    """Sampler configuration; `alpha` may be asymmetric, `beta` is scalar."""

    alpha: np.ndarray
    beta: float
    k: int
    iterations: int = 1000
    opt_interval: int = 10
    chains: int = 1
    seed: int = 0

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=np.float64)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.alpha.shape != (self.k,):
            raise ValueError(f"alpha must have shape ({self.k},)")
        if not np.all(self.alpha > 0):
            raise ValueError("all alpha components must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.chains < 1:
            raise ValueError("chains must be >= 1")

    @classmethod
    def with_defaults(cls, k: int, num_words: int, **kwargs) -> "Hyperparameters":
        """Symmetric alpha of 50/k and beta of 50/num_words unless overridden."""
        kwargs.setdefault("alpha", np.full(k, 50.0 / k))
        kwargs.setdefault("beta", 50.0 / num_words)
        return cls(k=k, **kwargs)


@dataclass
class TopicModel:
    """Count matrices and per-token assignments of one Markov chain state."""

    corpus: Corpus
    hyper: Hyperparameters
    tokens: np.ndarray       # int32 (N,), corpus tokens flattened
    doc_offsets: np.ndarray  # int64 (D+1,)
    z: np.ndarray            # int32 (N,), aligned with tokens
    n_td: np.ndarray         # int32 (D, k)
    n_wt: np.ndarray         # int32 (V, k)
    n_t: np.ndarray          # int64 (k,)
    sweeps_done: int = 0

    @property
    def k(self) -> int:
        return self.hyper.k

    @property
    def num_docs(self) -> int:
        return self.n_td.shape[0]

    @property
    def num_words(self) -> int:
        return self.n_wt.shape[0]

    @property
    def num_tokens(self) -> int:
        return self.tokens.shape[0]

    @property
    def beta_v(self) -> float:
        return self.hyper.beta * self.num_words


@dataclass
class DocTopicRow:
    """Per-document topic confidences and the argmax prediction."""

    doc_id: str
    confidences: np.ndarray
    prediction: int


@dataclass
class SampleEvent:
    """Snapshot handed to sweep callbacks at each sampling point (current
    token decremented, new topic chosen, counts not yet re-incremented)."""

    doc: int
    pos: int
    word: int
    old_topic: int
    new_topic: int
    s: float
    r: float
    q: float
    u: float


OnSample = Optional[Callable[[SampleEvent], None]]


def _build_counts(tokens, doc_offsets, z, num_docs, num_words, k):
    n_td = np.zeros((num_docs, k), dtype=np.int32)
    n_wt = np.zeros((num_words, k), dtype=np.int32)
    doc_idx = np.repeat(np.arange(num_docs), np.diff(doc_offsets))
    np.add.at(n_td, (doc_idx, z), 1)
    np.add.at(n_wt, (tokens, z), 1)
    n_t = np.bincount(z, minlength=k).astype(np.int64)
    return n_td, n_wt, n_t


def init_model(corpus: Corpus, hyper: Hyperparameters,
               rng: Optional[np.random.Generator] = None) -> TopicModel:
    """Assign every token a uniformly random topic and build the counts."""
    if corpus.num_docs == 0 or corpus.total_tokens == 0:
        raise ValueError("cannot initialize a model on an empty corpus")
    if rng is None:
        rng = np.random.default_rng(hyper.seed)
    tokens, doc_offsets = corpus.flatten()
    z = rng.integers(0, hyper.k, size=tokens.shape[0]).astype(np.int32)
    n_td, n_wt, n_t = _build_counts(
        tokens, doc_offsets, z, corpus.num_docs, corpus.num_words, hyper.k)
    return TopicModel(corpus=corpus, hyper=hyper, tokens=tokens,
                      doc_offsets=doc_offsets, z=z, n_td=n_td, n_wt=n_wt,
                      n_t=n_t)


def gibbs_weight_naive(model: TopicModel, d: int, w: int, t: int) -> float:
    """Unnormalized full-conditional weight of assigning topic t to the
    current token (already decremented from the counts)."""
    alpha = model.hyper.alpha
    beta = model.hyper.beta
    return float((alpha[t] + model.n_td[d, t])
                 * (beta + model.n_wt[w, t])
                 / (model.beta_v + model.n_t[t]))


# ---------------------------------------------------------------------------
# Sparse engine state


class SparseSamplerState:
    """Cached bucket masses and per-word sparse topic counts.

    `word_topics[w]` lists ``[topic, count]`` pairs for exactly the topics
    with n_wt[w,t] > 0, kept in descending count order with ties broken by
    ascending topic index. `coeff[t]` holds (alpha[t]+n_td[d,t])/(beta*V+n_t[t])
    for the document currently being swept and the alpha-only form between
    documents. `s_mass`/`r_mass` are refreshed at each document entry and
    maintained incrementally inside it.
    """

    def __init__(self, model: TopicModel):
        self.word_topics: list[list[list[int]]] = []
        self.coeff = np.zeros(model.k, dtype=np.float64)
        self.s_mass = 0.0
        self.r_mass = 0.0
        self.doc: Optional[int] = None
        self.refresh(model)

    def refresh(self, model: TopicModel) -> None:
        """Rebuild every cache from the model counts (used after alpha
        changes and at construction)."""
        alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
        n_t = model.n_t
        self.word_topics = []
        for w in range(model.num_words):
            entries = [[t, int(c)] for t, c in enumerate(model.n_wt[w]) if c]
            entries.sort(key=lambda tc: -tc[1])  # stable: ties stay ascending
            self.word_topics.append(entries)
        s = 0.0
        for t in range(model.k):
            self.coeff[t] = alpha[t] / (beta_v + n_t[t])
            s += alpha[t] * beta / (beta_v + n_t[t])
        self.s_mass = s
        self.r_mass = 0.0
        self.doc = None

    def begin_document(self, model: TopicModel, d: int) -> None:
        alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
        n_t, ntd_row = model.n_t, model.n_td[d]
        s = 0.0
        for t in range(model.k):
            s += alpha[t] * beta / (beta_v + n_t[t])
        r = 0.0
        for t in range(model.k):
            c = ntd_row[t]
            if c:
                r += c * beta / (beta_v + n_t[t])
                self.coeff[t] = (alpha[t] + c) / (beta_v + n_t[t])
        self.s_mass = s
        self.r_mass = r
        self.doc = d

    def end_document(self, model: TopicModel, d: int) -> None:
        alpha, beta_v, n_t = model.hyper.alpha, model.beta_v, model.n_t
        ntd_row = model.n_td[d]
        for t in range(model.k):
            if ntd_row[t]:
                self.coeff[t] = alpha[t] / (beta_v + n_t[t])
        self.r_mass = 0.0
        self.doc = None

    def decrement(self, model: TopicModel, d: int, w: int, t: int) -> None:
        alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
        n_t = model.n_t
        c = int(model.n_td[d, t])
        nt = int(n_t[t])
        self.s_mass -= alpha[t] * beta / (beta_v + nt)
        self.r_mass -= c * beta / (beta_v + nt)
        c -= 1
        nt -= 1
        model.n_td[d, t] = c
        n_t[t] = nt
        model.n_wt[w, t] -= 1
        self._word_decrement(w, t)
        self.s_mass += alpha[t] * beta / (beta_v + nt)
        if c:
            self.r_mass += c * beta / (beta_v + nt)
        self.coeff[t] = (alpha[t] + c) / (beta_v + nt)

    def increment(self, model: TopicModel, d: int, w: int, t: int) -> None:
        alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
        n_t = model.n_t
        c = int(model.n_td[d, t])
        nt = int(n_t[t])
        self.s_mass -= alpha[t] * beta / (beta_v + nt)
        if c:
            self.r_mass -= c * beta / (beta_v + nt)
        c += 1
        nt += 1
        model.n_td[d, t] = c
        n_t[t] = nt
        model.n_wt[w, t] += 1
        self._word_increment(w, t)
        self.s_mass += alpha[t] * beta / (beta_v + nt)
        self.r_mass += c * beta / (beta_v + nt)
        self.coeff[t] = (alpha[t] + c) / (beta_v + nt)

    def q_mass(self, w: int) -> float:
        q = 0.0
        for t, c in self.word_topics[w]:
            q += self.coeff[t] * c
        return q

    def _word_decrement(self, w: int, t: int) -> None:
        entries = self.word_topics[w]
        i = next(i for i, e in enumerate(entries) if e[0] == t)
        entries[i][1] -= 1
        c = entries[i][1]
        if c == 0:
            entries.pop(i)
            return
        while i + 1 < len(entries):
            nt_, nc_ = entries[i + 1]
            if nc_ > c or (nc_ == c and nt_ < t):
                entries[i], entries[i + 1] = entries[i + 1], entries[i]
                i += 1
            else:
                break

    def _word_increment(self, w: int, t: int) -> None:
        entries = self.word_topics[w]
        i = next((i for i, e in enumerate(entries) if e[0] == t), None)
        if i is None:
            entries.append([t, 1])
            i = len(entries) - 1
        else:
            entries[i][1] += 1
        c = entries[i][1]
        while i > 0:
            pt, pc = entries[i - 1]
            if pc < c or (pc == c and pt > t):
                entries[i], entries[i - 1] = entries[i - 1], entries[i]
                i -= 1
            else:
                break


def init_sparse_state(model: TopicModel) -> SparseSamplerState:
    return SparseSamplerState(model)


# ---------------------------------------------------------------------------
# Inverse-CDF walks (shared term order; see module docstring)


def _walk_smoothing(model: TopicModel, u: float) -> int:
    alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
    n_t = model.n_t
    cum = 0.0
    t = 0
    for t in range(model.k):
        cum += alpha[t] * beta / (beta_v + n_t[t])
        if cum > u:
            return t
    return t


def _walk_document(model: TopicModel, d: int, resid: float) -> int:
    beta, beta_v, n_t = model.hyper.beta, model.beta_v, model.n_t
    ntd_row = model.n_td[d]
    cum = 0.0
    last = 0
    for t in range(model.k):
        c = ntd_row[t]
        if c:
            cum += c * beta / (beta_v + n_t[t])
            last = t
            if cum > resid:
                return t
    return last


def bucket_masses(model: TopicModel, state: SparseSamplerState,
                  d: int, w: int) -> tuple[float, float, float]:
    """Current (s, r, q) bucket masses; requires the state to be positioned
    on document d with the current token decremented."""
    if state.doc != d:
        raise ValueError(f"state is positioned on doc {state.doc}, not {d}")
    return state.s_mass, state.r_mass, state.q_mass(w)


def sample_sparse(model: TopicModel, state: SparseSamplerState,
                  d: int, w: int, u: float) -> int:
    """Map a uniform draw u in [0, s+r+q) to a topic via the bucket walks."""
    s, r, q = bucket_masses(model, state, d, w)
    total = s + r + q
    if not 0.0 <= u < total:
        raise ValueError(f"u={u} outside [0, {total})")
    if u < s:
        return _walk_smoothing(model, u)
    if u < s + r:
        return _walk_document(model, d, u - s)
    resid = u - s - r
    coeff = state.coeff
    cum = 0.0
    t = 0
    for t, c in state.word_topics[w]:
        cum += coeff[t] * c
        if cum > resid:
            return t
    return t  # cumulative never exceeded resid (FP drift); keep last topic


def sweep_sparse(model: TopicModel, state: SparseSamplerState,
                 rng: np.random.Generator, on_sample: OnSample = None) -> None:
    """One full Gibbs sweep with the bucket-decomposition engine."""
    uniforms = rng.random(model.num_tokens)
    tokens, z, offsets = model.tokens, model.z, model.doc_offsets
    for d in range(model.num_docs):
        state.begin_document(model, d)
        for i in range(offsets[d], offsets[d + 1]):
            w = int(tokens[i])
            told = int(z[i])
            state.decrement(model, d, w, told)
            q = state.q_mass(w)
            total = state.s_mass + state.r_mass + q
            u = uniforms[i] * total
            tnew = sample_sparse(model, state, d, w, u)
            if on_sample is not None:
                on_sample(SampleEvent(d, int(i), w, told, tnew,
                                      state.s_mass, state.r_mass, q, u))
            state.increment(model, d, w, tnew)
            z[i] = tnew
        state.end_document(model, d)
    model.sweeps_done += 1


def sweep_naive(model: TopicModel, rng: np.random.Generator,
                on_sample: OnSample = None) -> None:
    """One full Gibbs sweep recomputing every mass from the raw counts at
    every token. Same uniform stream and term order as the sparse engine."""
    uniforms = rng.random(model.num_tokens)
    alpha, beta, beta_v = model.hyper.alpha, model.hyper.beta, model.beta_v
    tokens, z, offsets = model.tokens, model.z, model.doc_offsets
    n_td, n_wt, n_t = model.n_td, model.n_wt, model.n_t
    k = model.k
    for d in range(model.num_docs):
        ntd_row = n_td[d]
        for i in range(offsets[d], offsets[d + 1]):
            w = int(tokens[i])
            told = int(z[i])
            ntd_row[told] -= 1
            n_wt[w, told] -= 1
            n_t[told] -= 1
            s = 0.0
            for t in range(k):
                s += alpha[t] * beta / (beta_v + n_t[t])
            r = 0.0
            for t in range(k):
                c = ntd_row[t]
                if c:
                    r += c * beta / (beta_v + n_t[t])
            entries = [(t, int(c)) for t, c in enumerate(n_wt[w]) if c]
            entries.sort(key=lambda tc: -tc[1])  # stable: ties stay ascending
            q = 0.0
            for t, c in entries:
                q += (alpha[t] + ntd_row[t]) / (beta_v + n_t[t]) * c
            total = s + r + q
            u = uniforms[i] * total
            if u < s:
                tnew = _walk_smoothing(model, u)
            elif u < s + r:
                tnew = _walk_document(model, d, u - s)
            else:
                resid = u - s - r
                cum = 0.0
                tnew = 0
                for t, c in entries:
                    cum += (alpha[t] + ntd_row[t]) / (beta_v + n_t[t]) * c
                    tnew = t
                    if cum > resid:
                        break
            if on_sample is not None:
                on_sample(SampleEvent(d, int(i), w, told, tnew, s, r, q, u))
            ntd_row[tnew] += 1
            n_wt[w, tnew] += 1
            n_t[tnew] += 1
            z[i] = tnew
    model.sweeps_done += 1


# ---------------------------------------------------------------------------
# Estimators and hyperparameter optimization


def estimate_theta(model: TopicModel, d: int) -> np.ndarray:
    """Posterior-mean topic distribution of document d."""
    alpha = model.hyper.alpha
    row = model.n_td[d].astype(np.float64)
    return (alpha + row) / (alpha.sum() + row.sum())


def theta_matrix(model: TopicModel) -> np.ndarray:
    alpha = model.hyper.alpha
    counts = model.n_td.astype(np.float64)
    return (alpha[None, :] + counts) / (alpha.sum() + counts.sum(axis=1))[:, None]


def estimate_phi(model: TopicModel, t: int) -> np.ndarray:
    """Posterior-mean word distribution of topic t."""
    beta = model.hyper.beta
    col = model.n_wt[:, t].astype(np.float64)
    return (beta + col) / (model.beta_v + float(model.n_t[t]))


def phi_matrix(model: TopicModel) -> np.ndarray:
    beta = model.hyper.beta
    counts = model.n_wt.T.astype(np.float64)  # (k, V)
    return (beta + counts) / (model.beta_v + model.n_t.astype(np.float64))[:, None]


def optimize_alpha(model: TopicModel) -> np.ndarray:
    """One fixed-point update of the asymmetric Dirichlet prior maximizing
    the likelihood of the document-topic counts; beta is left alone.

    Returns the new alpha without mutating the model. Falls back to the
    previous values (with a warning) when the update would produce a
    non-positive or non-finite component.
    """
    alpha = model.hyper.alpha
    n_td = model.n_td.astype(np.float64)
    lengths = n_td.sum(axis=1)
    num_docs = n_td.shape[0]
    a0 = alpha.sum()
    numer = psi(n_td + alpha[None, :]).sum(axis=0) - num_docs * psi(alpha)
    denom = psi(lengths + a0).sum() - num_docs * psi(a0)
    with np.errstate(divide="ignore", invalid="ignore"):
        updated = alpha * numer / denom
    if denom <= 0 or not np.all(np.isfinite(updated)) or np.any(updated <= 0):
        warnings.warn("alpha fixed-point update degenerate; keeping previous "
                      "values", RuntimeWarning)
        return alpha.copy()
    return updated


# ---------------------------------------------------------------------------
# Training orchestration


class PythonEngine:
    """Reference sweep runner; slow but transparent."""

    def __init__(self, model: TopicModel, engine: str):
        self.model = model
        self.engine = engine
        self.state = init_sparse_state(model) if engine == "sparse" else None

    def sweep(self, rng: np.random.Generator) -> None:
        if self.engine == "sparse":
            sweep_sparse(self.model, self.state, rng)
        else:
            sweep_naive(self.model, rng)

    def alpha_changed(self) -> None:
        if self.state is not None:
            self.state.refresh(self.model)


def _make_engine(model: TopicModel, engine: str, backend: str):
    if engine not in ("naive", "sparse"):
        raise ValueError(f"unknown engine {engine!r}")
    if backend == "auto":
        try:
            from . import _kernels  # noqa: F401
            backend = "numba"
        except ImportError:
            backend = "python"
    if backend == "numba":
        from ._kernels import KernelEngine
        return KernelEngine(model, engine)
    if backend == "python":
        return PythonEngine(model, engine)
    raise ValueError(f"unknown backend {backend!r}")


def chain_seed(base_seed: int, chain: int) -> int:
    """Deterministic per-chain seed derivation."""
    return base_seed + 1_000_003 * chain


def train(corpus: Corpus, hyper: Hyperparameters, engine: str = "sparse",
          backend: str = "auto") -> tuple[TopicModel, list[DocTopicRow]]:
    """Run the configured number of sweeps (optimizing alpha every
    `opt_interval` sweeps when enabled) and emit one confidence row per
    document.

    With chains > 1, independently seeded chains are run and their
    document-topic estimates averaged element-wise, then renormalized; the
    returned model is the first chain's final state.
    """
    theta_sum = np.zeros((corpus.num_docs, hyper.k))
    first_model: Optional[TopicModel] = None
    for chain in range(hyper.chains):
        seed = chain_seed(hyper.seed, chain)
        chain_hyper = dataclasses.replace(hyper, alpha=hyper.alpha.copy(),
                                          seed=seed)
        rng = np.random.default_rng(seed)
        model = init_model(corpus, chain_hyper, rng)
        runner = _make_engine(model, engine, backend)
        for i in range(1, hyper.iterations + 1):
            runner.sweep(rng)
            if hyper.opt_interval and i % hyper.opt_interval == 0:
                model.hyper.alpha = optimize_alpha(model)
                runner.alpha_changed()
        theta_sum += theta_matrix(model)
        if first_model is None:
            first_model = model
    theta = theta_sum / hyper.chains
    theta /= theta.sum(axis=1, keepdims=True)
    rows = [DocTopicRow(doc_id=doc_id, confidences=theta[d],
                        prediction=int(np.argmax(theta[d])))
            for d, (doc_id, _) in enumerate(corpus.documents)]
    if first_model is None:  # unreachable: chains >= 1
        raise RuntimeError("no chain was trained")
    return first_model, rows


# ---------------------------------------------------------------------------
# Synthetic corpus generation

_SYNTH_ALPHABET = "bcdfghjklmnpqrtvxz"  # consonants a stemmer leaves alone


def synthetic_word(wid: int) -> str:
    digits = []
    n = wid
    while True:
        digits.append(_SYNTH_ALPHABET[n % len(_SYNTH_ALPHABET)])
        n //= len(_SYNTH_ALPHABET)
        if n == 0:
            break
    while len(digits) < 2:
        digits.append(_SYNTH_ALPHABET[0])
    return "w" + "".join(reversed(digits))


def generate_corpus(k: int, num_words: int, num_docs: int, doc_length: int,
                    alpha, beta: float, seed: int
                    ) -> tuple[Corpus, np.ndarray, np.ndarray]:
    """Sample a corpus from the generative model: one word distribution per
    topic from Dirichlet(beta), one topic distribution per document from
    Dirichlet(alpha), then per token a topic and a word.

    Returns (corpus, theta, phi) with theta (D,k) and phi (k,V) the planted
    ground truth. The vocabulary covers all `num_words` synthetic word
    types, id-identical to the planted phi columns.
    """
    if min(k, num_words, num_docs, doc_length) < 1:
        raise ValueError("k, num_words, num_docs, doc_length must be >= 1")
    rng = np.random.default_rng(seed)
    alpha_vec = np.asarray(alpha, dtype=np.float64)
    if alpha_vec.ndim == 0:
        alpha_vec = np.full(k, float(alpha_vec))
    if alpha_vec.shape != (k,) or not np.all(alpha_vec > 0):
        raise ValueError("alpha must be a positive scalar or length-k vector")
    if not beta > 0:
        raise ValueError("beta must be positive")
    phi = rng.dirichlet(np.full(num_words, float(beta)), size=k)
    theta = rng.dirichlet(alpha_vec, size=num_docs)
    documents = []
    for d in range(num_docs):
        zs = rng.choice(k, size=doc_length, p=theta[d])
        ws = np.empty(doc_length, dtype=np.int32)
        for t in range(k):
            mask = zs == t
            n = int(mask.sum())
            if n:
                ws[mask] = rng.choice(num_words, size=n, p=phi[t])
        documents.append((f"doc{d:05d}", ws))
    vocab = Vocabulary()
    for wid in range(num_words):
        vocab.add(synthetic_word(wid))
    corpus = Corpus(documents=documents, vocabulary=vocab,
                    total_tokens=num_docs * doc_length)
    return corpus, theta, phi


# ---------------------------------------------------------------------------
# Checkpointing

CHECKPOINT_FORMAT = "ldakit-model"
CHECKPOINT_VERSION = 1


def save_checkpoint(model: TopicModel, path) -> None:
    """Structured-text dump of the chain state; round-trips bit-exactly."""
    hyper = model.hyper
    payload = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "hyper": {
            "alpha": hyper.alpha.tolist(),
            "beta": hyper.beta,
            "k": hyper.k,
            "iterations": hyper.iterations,
            "opt_interval": hyper.opt_interval,
            "chains": hyper.chains,
            "seed": hyper.seed,
        },
        "sweeps_done": model.sweeps_done,
        "corpus": {
            "doc_ids": model.corpus.doc_ids,
            "documents": [toks.tolist() for _, toks in model.corpus.documents],
            "words": list(model.corpus.vocabulary.words),
            "dropped": [list(item) for item in model.corpus.dropped],
        },
        "z": model.z.tolist(),
        "n_td": model.n_td.tolist(),
        "n_wt": model.n_wt.tolist(),
        "n_t": model.n_t.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))


def load_checkpoint(path) -> TopicModel:
    """Rebuild a TopicModel from `save_checkpoint` output, verifying the
    stored counts against a recount of z."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"not a {CHECKPOINT_FORMAT} checkpoint: {path}")
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {payload.get('version')}")
    vocab = Vocabulary()
    for word in payload["corpus"]["words"]:
        vocab.add(word)
    documents = [(doc_id, np.asarray(toks, dtype=np.int32))
                 for doc_id, toks in zip(payload["corpus"]["doc_ids"],
                                         payload["corpus"]["documents"])]
    corpus = Corpus(
        documents=documents, vocabulary=vocab,
        dropped=[tuple(item) for item in payload["corpus"]["dropped"]],
        total_tokens=int(sum(len(t) for _, t in documents)))
    hyper = Hyperparameters(**payload["hyper"])
    tokens, doc_offsets = corpus.flatten()
    z = np.asarray(payload["z"], dtype=np.int32)
    if z.shape != tokens.shape:
        raise ValueError("checkpoint z length does not match corpus tokens")
    n_td, n_wt, n_t = _build_counts(tokens, doc_offsets, z, corpus.num_docs,
                                    corpus.num_words, hyper.k)
    if (n_td.tolist() != payload["n_td"] or n_wt.tolist() != payload["n_wt"]
            or n_t.tolist() != payload["n_t"]):
        raise ValueError("checkpoint counts inconsistent with assignments")
    return TopicModel(corpus=corpus, hyper=hyper, tokens=tokens,
                      doc_offsets=doc_offsets, z=z, n_td=n_td, n_wt=n_wt,
                      n_t=n_t, sweeps_done=int(payload["sweeps_done"]))
