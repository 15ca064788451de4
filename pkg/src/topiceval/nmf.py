"""Non-negative matrix factorization by multiplicative updates.

Minimizes the Frobenius error ||V - WH|| with the classic alternating
updates

    H <- H * (W'V) / (W'WH + delta)
    W <- W * (VH') / (WHH' + delta)

where ``delta`` only guards the divisions. Each half-update is
non-increasing in the objective, so the recorded trace is monotone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeInput

_DELTA = 1e-12


@dataclass
class NmfFactors:
    w: np.ndarray  # docs x k
    h: np.ndarray  # k x vocab
    objective_trace: list[float]  # Frobenius error, index 0 = before updates

    @property
    def reconstruction(self) -> np.ndarray:
        return self.w @ self.h


def nmf_fit(
    v,
    k: int,
    iters: int = 500,
    tol: float = 1e-6,
    seed: int = 42,
) -> NmfFactors:
    """Factor a non-negative matrix into ``k`` components.

    Runs until ``iters`` updates or until the relative objective change
    drops below ``tol``. Factors start from a seeded uniform(0, 1) draw,
    so results are reproducible.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2:
        raise ValueError("V must be a 2-D matrix")
    if np.any(v < 0):
        raise NegativeInput("V must be entrywise non-negative")
    m, n = v.shape
    if not (1 <= k <= min(m, n)):
        raise ValueError(f"need 1 <= k <= min(m, n) = {min(m, n)}, got {k}")
    if iters < 1:
        raise ValueError("iters must be >= 1")

    rng = np.random.default_rng(seed)
    w = rng.random((m, k))
    h = rng.random((k, n))

    def err() -> float:
        return float(np.linalg.norm(v - w @ h))

    trace = [err()]
    for _ in range(iters):
        h *= (w.T @ v) / (w.T @ w @ h + _DELTA)
        w *= (v @ h.T) / (w @ (h @ h.T) + _DELTA)
        trace.append(err())
        prev, cur = trace[-2], trace[-1]
        if prev == 0.0:
            break  # exact factorization already
        if tol > 0 and (prev - cur) / prev < tol:
            break
    return NmfFactors(w, h, trace)


def nmf_topic_set(factors: NmfFactors, top_n: int = 10):
    """Ranked topics from H rows; distributions are the normalized rows."""
    from .topics import TopicSet, TopicWordDist, topic_top_words

    topics, dists = [], []
    for row in factors.h:
        topics.append(topic_top_words(row, top_n))
        total = row.sum()
        if total > 0:
            dists.append(TopicWordDist(row / total))
        else:  # dead component: fall back to uniform
            dists.append(TopicWordDist(np.full(len(row), 1.0 / len(row))))
    return TopicSet(topics, dists)
