"""Class-based TF-IDF topic extraction over cluster assignments.

Each non-noise cluster's documents are concatenated into one class
document; a term's weight in cluster ``c`` is

    W(t, c) = tf(t, c) * ln(1 + A / f(t))

with ``tf(t, c)`` the term count inside the class document, ``f(t)`` the
term's total count over all clusters and ``A`` the average token count
per cluster. Noise documents contribute nothing.
"""

from __future__ import annotations

import numpy as np

from .clustering import ClusterAssignment
from .errors import MisalignedInputs, NoClusters
from .preprocessing import BowCorpus
from .topics import Topic, TopicSet, TopicWordDist, topic_top_words


class CtfidfModel:
    """Per-cluster term counts and weights; ``cluster_ids`` orders the rows."""

    def __init__(self, tf: np.ndarray, cluster_ids: list[int]) -> None:
        self.tf = tf  # clusters x vocab, raw counts
        self.cluster_ids = cluster_ids
        totals = tf.sum(axis=1)
        self.avg_tokens = float(totals.mean())
        self.term_totals = tf.sum(axis=0)
        with np.errstate(divide="ignore"):
            idf = np.log1p(self.avg_tokens / self.term_totals)
        idf[self.term_totals == 0] = 0.0
        self.weights = tf * idf


def ctfidf_weights(corpus: BowCorpus, assignment: ClusterAssignment) -> CtfidfModel:
    """Aggregate counts per cluster and weight them; empty clusters drop out."""
    labels = np.asarray(assignment.labels)
    if len(labels) != len(corpus.docs):
        raise MisalignedInputs(
            f"{len(labels)} labels for {len(corpus.docs)} documents"
        )
    v = len(corpus.vocab)
    tf = np.zeros((assignment.k, v), dtype=np.float64)
    for doc, label in zip(corpus.docs, labels):
        if label < 0:
            continue
        for tid, cnt in doc:
            tf[label, tid] += cnt
    keep = [c for c in range(assignment.k) if tf[c].sum() > 0]
    if not keep:
        raise NoClusters("no cluster contains any tokens")
    return CtfidfModel(tf[keep], keep)


def ctfidf(corpus: BowCorpus, assignment: ClusterAssignment, top_n: int = 10) -> TopicSet:
    """Extract one ranked topic per non-empty cluster.

    Ranking ties break toward the lower token id. The attached
    distributions are the cluster weight rows normalized to sum 1.
    """
    model = ctfidf_weights(corpus, assignment)
    topics: list[Topic] = []
    dists: list[TopicWordDist] = []
    for row in model.weights:
        topics.append(topic_top_words(row, top_n))
        dists.append(TopicWordDist(row / row.sum()))
    return TopicSet(topics, dists)
