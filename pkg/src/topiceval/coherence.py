"""Topic coherence measures built from segmentation, co-occurrence
probabilities, a confirmation measure and mean aggregation.

Three instantiations are provided:

* ``umass``  - pairwise log conditional probability over document counts,
* ``c_npmi`` - mean normalized PMI over word pairs in sliding windows,
* ``c_v``    - mean cosine similarity between per-word NPMI vectors and
  their mean vector, over 110-token sliding windows.

NPMI edge conventions (the limits of the defining formula): a pair that
never co-occurs scores -1, a pair present in every virtual document
scores +1, and npmi(w, w) := 1 on vector diagonals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cooccurrence import CooccurrenceStats, count_document_stats, count_window_stats
from .errors import EmptyScores, TopicTooSmall, WordNotInCorpus, ZeroVector
from .preprocessing import BowCorpus
from .topics import Topic

MEASURES = ("umass", "c_npmi", "c_v")
DEFAULT_WINDOW = {"c_npmi": 70, "c_v": 110}


@dataclass(frozen=True)
class CoherenceConfig:
    measure: str = "c_v"
    window_size: int | None = None  # None: 110 for c_v, 70 for c_npmi
    window_step: int = 1
    epsilon: float = 1e-12  # umass smoothing
    top_n: int = 10
    cv_compare: str = "mean"  # "mean" or "wstar_sum"

    def __post_init__(self) -> None:
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.window_size is not None and self.window_size < 1:
            raise ValueError("window_size must be >= 1")

    @property
    def effective_window(self) -> int:
        if self.window_size is not None:
            return self.window_size
        return DEFAULT_WINDOW.get(self.measure, 110)


@dataclass(frozen=True)
class Segmentation:
    """Pairs (W', W*) of word-id sets to be confirmed against each other."""

    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]


def segment_one_set(topic: Topic) -> Segmentation:
    """One pair ({w_i}, T \\ {w_i}) per topic word."""
    if topic.n < 2:
        raise TopicTooSmall("one-set segmentation needs >= 2 words")
    full = frozenset(topic.words)
    return Segmentation(
        tuple((frozenset((w,)), full - {w}) for w in topic.words)
    )


def segment_pairwise(topic: Topic) -> Segmentation:
    """All C(N, 2) unordered pairs ({w_i}, {w_j}) with i < j by rank."""
    if topic.n < 2:
        raise TopicTooSmall("pairwise segmentation needs >= 2 words")
    words = topic.words
    pairs = []
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            pairs.append((frozenset((words[i],)), frozenset((words[j],))))
    return Segmentation(tuple(pairs))


def npmi(w_p: int, w_q: int, stats: CooccurrenceStats) -> float:
    """Normalized pointwise mutual information, in [-1, 1] for any counts.

    Computed as a sum of log-count differences so the +-1 endpoints are
    exact in floating point; the log base cancels.
    """
    j = stats.joint_count(w_p, w_q)
    if j == 0:
        return -1.0
    n = stats.n_virtual
    if j == n:
        return 1.0
    op = stats.occur_count(w_p)
    oq = stats.occur_count(w_q)
    den = math.log(n) - math.log(j)
    # grouped so the result is symmetric in (p, q) and hits +-1 exactly
    num = den + ((math.log(j) - math.log(op)) + (math.log(j) - math.log(oq)))
    return num / den


def umass_coherence(
    topic: Topic, stats: CooccurrenceStats, epsilon: float = 1e-12
) -> float:
    """Mean over ranked pairs i < j of ln((D(w_i, w_j) + eps) / D(w_j)).

    ``D`` counts whole documents, so document-mode statistics are required.
    The denominator is the later-ranked word's count; the result therefore
    depends on rank order, which is intended.
    """
    if stats.mode != "document":
        raise ValueError("umass coherence is defined over document counts")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    for w in topic.words:
        if stats.occur_count(w) == 0:
            raise WordNotInCorpus(f"word id {w} occurs in no document")
    words = topic.words
    total = 0.0
    m = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            d_ij = stats.joint_count(words[i], words[j])
            d_j = stats.occur_count(words[j])
            total += math.log((d_ij + epsilon) / d_j)
            m += 1
    return total / m


def c_npmi(topic: Topic, stats: CooccurrenceStats) -> float:
    """Arithmetic mean of NPMI over the pairwise segmentation."""
    seg = segment_pairwise(topic)
    scores = []
    for wset, wstar in seg.pairs:
        (p,) = wset
        (q,) = wstar
        scores.append(npmi(p, q, stats))
    return aggregate_mean(scores)


def npmi_vector(w_i: int, topic: Topic, stats: CooccurrenceStats) -> list[float]:
    """NPMI of ``w_i`` against every topic word; the self component is 1."""
    return [1.0 if w_j == w_i else npmi(w_i, w_j, stats) for w_j in topic.words]


def c_v(
    topic: Topic, stats: CooccurrenceStats, compare: str = "mean"
) -> float:
    """Mean cosine similarity between each word's NPMI vector and a
    reference vector.

    ``compare="mean"`` uses the mean of all N vectors as the reference
    (the primary form); ``compare="wstar_sum"`` compares each vector
    against the sum over the complementary one-set segment instead.
    """
    seg = segment_one_set(topic)  # fixes the W' iteration order
    vectors = {w: npmi_vector(w, topic, stats) for w in topic.words}
    n = topic.n
    if compare == "mean":
        ref_for = {
            w: [sum(vectors[u][k] for u in topic.words) / n for k in range(n)]
            for w in topic.words
        }
    elif compare == "wstar_sum":
        ref_for = {}
        for wset, wstar in seg.pairs:
            (w,) = wset
            ref_for[w] = [
                sum(vectors[u][k] for u in wstar) for k in range(n)
            ]
    else:
        raise ValueError(f"unknown comparison mode {compare!r}")
    sims = []
    for wset, _ in seg.pairs:
        (w,) = wset
        sims.append(_cosine(vectors[w], ref_for[w]))
    return aggregate_mean(sims)


def _cosine(u: list[float], v: list[float]) -> float:
    nu2 = sum(x * x for x in u)
    nv2 = sum(x * x for x in v)
    if nu2 == 0.0 or nv2 == 0.0:
        raise ZeroVector("cannot take cosine of a zero NPMI vector")
    dot = sum(x * y for x, y in zip(u, v))
    # single sqrt keeps cos(u, u) exactly 1 for equal vectors
    return max(-1.0, min(1.0, dot / math.sqrt(nu2 * nv2)))


def aggregate_mean(scores: list[float]) -> float:
    """Arithmetic mean; rejects empty score lists."""
    if not scores:
        raise EmptyScores("cannot aggregate zero confirmation scores")
    return sum(scores) / len(scores)


def score_topics(
    topics: list[Topic],
    config: CoherenceConfig,
    *,
    bow: BowCorpus | None = None,
    sequences: list[list[int]] | None = None,
) -> list[float]:
    """Score every topic under one measure, sharing one statistics pass.

    ``umass`` needs ``bow`` (document counts); ``c_npmi`` and ``c_v`` need
    ordered token-id ``sequences`` for window counting.
    """
    words = set()
    for t in topics:
        words.update(t.words)
    if config.measure == "umass":
        if bow is None:
            raise ValueError("umass scoring needs a bag-of-words corpus")
        stats = count_document_stats(bow, words)
        return [umass_coherence(t, stats, config.epsilon) for t in topics]
    if sequences is None:
        raise ValueError(f"{config.measure} scoring needs token sequences")
    stats = count_window_stats(
        sequences, words, config.effective_window, config.window_step
    )
    if config.measure == "c_npmi":
        return [c_npmi(t, stats) for t in topics]
    return [c_v(t, stats, config.cv_compare) for t in topics]
