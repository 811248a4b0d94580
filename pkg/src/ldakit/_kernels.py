"""Compiled sweep kernels. Same algorithms, term order, and floating-point
expression shapes as the reference loops in `ldakit.sampler`, so a kernel
sweep and a reference sweep fed the same uniform stream produce identical
assignment sequences. Used by `train` for throughput.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _sweep_naive(tokens, doc_offsets, z, n_td, n_wt, n_t, alpha, beta, beta_v,
                 uniforms):
    num_docs = doc_offsets.shape[0] - 1
    k = alpha.shape[0]
    tbuf = np.empty(k, dtype=np.int32)
    cbuf = np.empty(k, dtype=np.int32)
    for d in range(num_docs):
        for i in range(doc_offsets[d], doc_offsets[d + 1]):
            w = tokens[i]
            told = z[i]
            n_td[d, told] -= 1
            n_wt[w, told] -= 1
            n_t[told] -= 1

            s = 0.0
            for t in range(k):
                s += alpha[t] * beta / (beta_v + n_t[t])
            r = 0.0
            for t in range(k):
                c = n_td[d, t]
                if c != 0:
                    r += c * beta / (beta_v + n_t[t])
            nnz = 0
            for t in range(k):
                c = n_wt[w, t]
                if c != 0:
                    tbuf[nnz] = t
                    cbuf[nnz] = c
                    nnz += 1
            # stable insertion sort, descending count (ties stay ascending t)
            for a in range(1, nnz):
                tt = tbuf[a]
                cc = cbuf[a]
                b = a - 1
                while b >= 0 and cbuf[b] < cc:
                    tbuf[b + 1] = tbuf[b]
                    cbuf[b + 1] = cbuf[b]
                    b -= 1
                tbuf[b + 1] = tt
                cbuf[b + 1] = cc
            q = 0.0
            for j in range(nnz):
                t = tbuf[j]
                q += (alpha[t] + n_td[d, t]) / (beta_v + n_t[t]) * cbuf[j]

            total = s + r + q
            u = uniforms[i] * total
            if u < s:
                cum = 0.0
                tnew = k - 1
                for t in range(k):
                    cum += alpha[t] * beta / (beta_v + n_t[t])
                    if cum > u:
                        tnew = t
                        break
            elif u < s + r:
                resid = u - s
                cum = 0.0
                tnew = 0
                for t in range(k):
                    c = n_td[d, t]
                    if c != 0:
                        cum += c * beta / (beta_v + n_t[t])
                        tnew = t
                        if cum > resid:
                            break
            else:
                resid = u - s - r
                cum = 0.0
                tnew = 0
                for j in range(nnz):
                    t = tbuf[j]
                    cum += (alpha[t] + n_td[d, t]) / (beta_v + n_t[t]) * cbuf[j]
                    tnew = t
                    if cum > resid:
                        break

            n_td[d, tnew] += 1
            n_wt[w, tnew] += 1
            n_t[tnew] += 1
            z[i] = tnew


@njit(cache=True)
def _sweep_sparse(tokens, doc_offsets, z, n_td, n_wt, n_t, alpha, beta, beta_v,
                  uniforms, wt_topics, wt_counts, wt_nnz, coeff, bucket_hits):
    num_docs = doc_offsets.shape[0] - 1
    k = alpha.shape[0]
    for d in range(num_docs):
        # document entry: fresh masses, full coefficients for active topics
        s_mass = 0.0
        for t in range(k):
            s_mass += alpha[t] * beta / (beta_v + n_t[t])
        r_mass = 0.0
        for t in range(k):
            c = n_td[d, t]
            if c != 0:
                r_mass += c * beta / (beta_v + n_t[t])
                coeff[t] = (alpha[t] + c) / (beta_v + n_t[t])
        for i in range(doc_offsets[d], doc_offsets[d + 1]):
            w = tokens[i]
            told = z[i]

            # remove current token, updating masses incrementally
            c = n_td[d, told]
            nt = n_t[told]
            s_mass -= alpha[told] * beta / (beta_v + nt)
            r_mass -= c * beta / (beta_v + nt)
            c -= 1
            nt -= 1
            n_td[d, told] = c
            n_t[told] = nt
            n_wt[w, told] -= 1
            _word_decrement(wt_topics, wt_counts, wt_nnz, w, told)
            s_mass += alpha[told] * beta / (beta_v + nt)
            if c != 0:
                r_mass += c * beta / (beta_v + nt)
            coeff[told] = (alpha[told] + c) / (beta_v + nt)

            q = 0.0
            for j in range(wt_nnz[w]):
                q += coeff[wt_topics[w, j]] * wt_counts[w, j]

            total = s_mass + r_mass + q
            u = uniforms[i] * total
            if u < s_mass:
                bucket_hits[0] += 1
                cum = 0.0
                tnew = k - 1
                for t in range(k):
                    cum += alpha[t] * beta / (beta_v + n_t[t])
                    if cum > u:
                        tnew = t
                        break
            elif u < s_mass + r_mass:
                bucket_hits[1] += 1
                resid = u - s_mass
                cum = 0.0
                tnew = 0
                for t in range(k):
                    c2 = n_td[d, t]
                    if c2 != 0:
                        cum += c2 * beta / (beta_v + n_t[t])
                        tnew = t
                        if cum > resid:
                            break
            else:
                bucket_hits[2] += 1
                resid = u - s_mass - r_mass
                cum = 0.0
                tnew = 0
                for j in range(wt_nnz[w]):
                    t = wt_topics[w, j]
                    cum += coeff[t] * wt_counts[w, j]
                    tnew = t
                    if cum > resid:
                        break

            # add it back under the new topic
            c = n_td[d, tnew]
            nt = n_t[tnew]
            s_mass -= alpha[tnew] * beta / (beta_v + nt)
            if c != 0:
                r_mass -= c * beta / (beta_v + nt)
            c += 1
            nt += 1
            n_td[d, tnew] = c
            n_t[tnew] = nt
            n_wt[w, tnew] += 1
            _word_increment(wt_topics, wt_counts, wt_nnz, w, tnew)
            s_mass += alpha[tnew] * beta / (beta_v + nt)
            r_mass += c * beta / (beta_v + nt)
            coeff[tnew] = (alpha[tnew] + c) / (beta_v + nt)
            z[i] = tnew
        # document exit: revert active coefficients to the alpha-only form
        for t in range(k):
            if n_td[d, t] != 0:
                coeff[t] = alpha[t] / (beta_v + n_t[t])


@njit(cache=True)
def _word_decrement(wt_topics, wt_counts, wt_nnz, w, t):
    nnz = wt_nnz[w]
    i = 0
    while wt_topics[w, i] != t:
        i += 1
    cnew = wt_counts[w, i] - 1
    if cnew == 0:
        for j in range(i, nnz - 1):
            wt_topics[w, j] = wt_topics[w, j + 1]
            wt_counts[w, j] = wt_counts[w, j + 1]
        wt_nnz[w] = nnz - 1
        return
    wt_counts[w, i] = cnew
    while i + 1 < nnz and (wt_counts[w, i + 1] > cnew
                           or (wt_counts[w, i + 1] == cnew
                               and wt_topics[w, i + 1] < t)):
        wt_topics[w, i] = wt_topics[w, i + 1]
        wt_counts[w, i] = wt_counts[w, i + 1]
        wt_topics[w, i + 1] = t
        wt_counts[w, i + 1] = cnew
        i += 1


@njit(cache=True)
def _word_increment(wt_topics, wt_counts, wt_nnz, w, t):
    nnz = wt_nnz[w]
    i = -1
    for j in range(nnz):
        if wt_topics[w, j] == t:
            i = j
            break
    if i < 0:
        wt_topics[w, nnz] = t
        wt_counts[w, nnz] = 0
        wt_nnz[w] = nnz + 1
        i = nnz
    cnew = wt_counts[w, i] + 1
    wt_counts[w, i] = cnew
    while i > 0 and (wt_counts[w, i - 1] < cnew
                     or (wt_counts[w, i - 1] == cnew
                         and wt_topics[w, i - 1] > t)):
        wt_topics[w, i] = wt_topics[w, i - 1]
        wt_counts[w, i] = wt_counts[w, i - 1]
        wt_topics[w, i - 1] = t
        wt_counts[w, i - 1] = cnew
        i -= 1


def build_word_topic_arrays(n_wt: np.ndarray):
    """Per-word packed lists of (topic, count), descending count with ties
    ascending by topic (matching SparseSamplerState.word_topics)."""
    num_words, k = n_wt.shape
    wt_topics = np.zeros((num_words, k), dtype=np.int32)
    wt_counts = np.zeros((num_words, k), dtype=np.int32)
    wt_nnz = np.zeros(num_words, dtype=np.int32)
    for w in range(num_words):
        nz = np.nonzero(n_wt[w])[0]
        order = np.argsort(-n_wt[w][nz], kind="stable")
        nnz = nz.shape[0]
        wt_topics[w, :nnz] = nz[order]
        wt_counts[w, :nnz] = n_wt[w][nz[order]]
        wt_nnz[w] = nnz
    return wt_topics, wt_counts, wt_nnz


class KernelEngine:
    """Sweep runner backed by the compiled kernels; drop-in replacement for
    `sampler.PythonEngine` inside `train`."""

    def __init__(self, model, engine: str):
        self.model = model
        self.engine = engine
        self.bucket_hits = np.zeros(3, dtype=np.int64)
        if engine == "sparse":
            self.wt_topics, self.wt_counts, self.wt_nnz = \
                build_word_topic_arrays(model.n_wt)
            self.coeff = np.zeros(model.k, dtype=np.float64)
            self._reset_coeff()
        elif engine != "naive":
            raise ValueError(f"unknown engine {engine!r}")

    def _reset_coeff(self) -> None:
        model = self.model
        alpha, beta_v, n_t = model.hyper.alpha, model.beta_v, model.n_t
        for t in range(model.k):
            self.coeff[t] = alpha[t] / (beta_v + n_t[t])

    def sweep(self, rng: np.random.Generator) -> None:
        model = self.model
        uniforms = rng.random(model.num_tokens)
        beta = float(model.hyper.beta)
        if self.engine == "sparse":
            _sweep_sparse(model.tokens, model.doc_offsets, model.z, model.n_td,
                          model.n_wt, model.n_t, model.hyper.alpha, beta,
                          model.beta_v, uniforms, self.wt_topics,
                          self.wt_counts, self.wt_nnz, self.coeff,
                          self.bucket_hits)
        else:
            _sweep_naive(model.tokens, model.doc_offsets, model.z, model.n_td,
                         model.n_wt, model.n_t, model.hyper.alpha, beta,
                         model.beta_v, uniforms)
        model.sweeps_done += 1

    def alpha_changed(self) -> None:
        if self.engine == "sparse":
            self._reset_coeff()
