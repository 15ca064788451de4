"""Inter-topic dissimilarity measures over topic-word distributions.

All logarithms are base 2, which puts Jensen-Shannon divergence in
[0, 1]; Hellinger and cosine distance are bounded the same way. Bounded
results are clamped to their theoretical range to absorb float rounding
(disjoint supports must score exactly 1, identical inputs exactly 0).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InfiniteDivergence, TooFewTopics, TopicTooSmall, ZeroVector
from .topics import Topic, TopicSet, TopicWordDist

MEASURES = ("jsd", "hellinger", "cosine")


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def kl(p: TopicWordDist, q: TopicWordDist) -> float:
    """Kullback-Leibler divergence in bits; 0 * log 0 := 0.

    Raises :class:`InfiniteDivergence` when p puts mass where q has none;
    call through :func:`jsd` if the supports may differ.
    """
    pp, qq = p.probs, q.probs
    mask = pp > 0
    if np.any(qq[mask] == 0):
        raise InfiniteDivergence("p has support outside q's support")
    return float(np.sum(pp[mask] * np.log2(pp[mask] / qq[mask])))


def jsd(p: TopicWordDist, q: TopicWordDist) -> float:
    """Jensen-Shannon divergence (base 2), in [0, 1].

    Smoothed by the mixture M = (p + q) / 2, whose support covers both
    inputs, so no direct-KL support errors can occur.
    """
    pp, qq = p.probs, q.probs
    m = 0.5 * (pp + qq)

    def half(a: np.ndarray) -> float:
        mask = a > 0
        return float(np.sum(a[mask] * np.log2(a[mask] / m[mask])))

    return _clip01(0.5 * half(pp) + 0.5 * half(qq))


def hellinger(p: TopicWordDist, q: TopicWordDist) -> float:
    """Hellinger distance: l2 distance of the root vectors over sqrt(2)."""
    d = np.sqrt(p.probs) - np.sqrt(q.probs)
    return _clip01(float(np.linalg.norm(d)) / math.sqrt(2.0))


def cosine_distance(p: TopicWordDist, q: TopicWordDist) -> float:
    """One minus cosine similarity; in [0, 1] for non-negative vectors."""
    np_, nq = np.linalg.norm(p.probs), np.linalg.norm(q.probs)
    if np_ == 0.0 or nq == 0.0:
        raise ZeroVector("cosine distance needs non-zero vectors")
    sim = float(np.dot(p.probs, q.probs)) / float(np_ * nq)
    return _clip01(1.0 - min(1.0, sim))


_MEASURE_FN = {"jsd": jsd, "hellinger": hellinger, "cosine": cosine_distance}


class DivergenceReport:
    """Pairwise divergence matrix plus its strict-upper-triangle mean."""

    def __init__(self, measure: str, pairwise: np.ndarray, average: float) -> None:
        self.measure = measure
        self.pairwise = pairwise
        self.average = average


def avg_pairwise_divergence(
    dists: list[TopicWordDist], measure: str = "jsd"
) -> DivergenceReport:
    """Average D(phi_i || phi_j) over all unordered topic pairs."""
    if measure not in _MEASURE_FN:
        raise ValueError(f"unknown divergence measure {measure!r}")
    k = len(dists)
    if k < 2:
        raise TooFewTopics(f"pairwise divergence needs >= 2 topics, got {k}")
    fn = _MEASURE_FN[measure]
    mat = np.zeros((k, k), dtype=np.float64)
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            d = fn(dists[i], dists[j])
            mat[i, j] = mat[j, i] = d
            total += d
    return DivergenceReport(measure, mat, 2.0 * total / (k * (k - 1)))


def unique_word_diversity(topics: TopicSet | list[Topic], n: int = 10) -> float:
    """Fraction of distinct words across all K top-n lists, in (0, 1]."""
    topic_list = topics.topics if isinstance(topics, TopicSet) else topics
    if not topic_list:
        raise TooFewTopics("diversity needs at least one topic")
    seen: set[int] = set()
    for t in topic_list:
        if t.n < n:
            raise TopicTooSmall(f"topic has {t.n} words, need >= {n}")
        seen.update(t.words[:n])
    return len(seen) / (len(topic_list) * n)
