"""Sweep over the number of topics and pick the count with the highest
average coherence. Each k trains an independent model with a symmetric
alpha of 50/k and a seed derived as base_seed + k, so extending the range
never perturbs existing rows.
"""

from __future__ import annotations

import dataclasses
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .diagnostics import average_model_coherence
from .sampler import Hyperparameters, train


@dataclass
class SweepRow:
    k: int
    avg_coherence: float
    wall_time_ms: float
    seed: int


@dataclass
class SweepResult:
    rows: list[SweepRow]
    failures: list[tuple[int, str]]


def sweep_hyper(template: Hyperparameters, k: int) -> Hyperparameters:
    """Per-k configuration: symmetric 50/k alpha, derived seed."""
    return dataclasses.replace(template, k=k, alpha=np.full(k, 50.0 / k),
                               seed=template.seed + k)


def _run_single_k(corpus: Corpus, template: Hyperparameters, k: int,
                  engine: str, backend: str, n_top: int,
                  epsilon: float) -> SweepRow:
    hyper = sweep_hyper(template, k)
    start = time.perf_counter()
    model, _ = train(corpus, hyper, engine=engine, backend=backend)
    coherence = average_model_coherence(model, corpus, n_top, epsilon)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return SweepRow(k=k, avg_coherence=coherence, wall_time_ms=elapsed_ms,
                    seed=hyper.seed)


def coherence_sweep(corpus: Corpus, k_min: int, k_max: int,
                    hyper_template: Hyperparameters, engine: str = "sparse",
                    backend: str = "auto", n_top: int = 10,
                    epsilon: float = 1e-12, workers: int = 1) -> SweepResult:
    """Train one model per k in [k_min, k_max] and record its average
    coherence. Per-k failures are recorded and the sweep continues.
    `workers` > 1 runs the independent k jobs in parallel processes."""
    if not 1 <= k_min <= k_max:
        raise ValueError("need 1 <= k_min <= k_max")
    ks = list(range(k_min, k_max + 1))
    rows: list[SweepRow] = []
    failures: list[tuple[int, str]] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {k: pool.submit(_run_single_k, corpus, hyper_template,
                                      k, engine, backend, n_top, epsilon)
                       for k in ks}
            for k in ks:
                try:
                    rows.append(futures[k].result())
                except Exception as exc:
                    failures.append((k, str(exc)))
    else:
        for k in ks:
            try:
                rows.append(_run_single_k(corpus, hyper_template, k, engine,
                                          backend, n_top, epsilon))
            except Exception as exc:
                failures.append((k, str(exc)))
    return SweepResult(rows=rows, failures=failures)


def select_k(sweep: SweepResult) -> int:
    """The k with the highest average coherence, smallest k on ties."""
    usable = [row for row in sweep.rows if not math.isnan(row.avg_coherence)]
    if not usable:
        raise ValueError("sweep has no usable rows")
    best = max(usable, key=lambda row: (row.avg_coherence, -row.k))
    return best.k
