"""Topic containers shared by the models and the metric modules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TopicTooSmall


@dataclass(frozen=True)
class Topic:
    """Ranked top-N word ids for one topic (rank = descending weight)."""

    words: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.words) < 2:
            raise TopicTooSmall(f"topics need >= 2 words, got {len(self.words)}")
        if len(set(self.words)) != len(self.words):
            raise ValueError("topic words must be distinct")

    @property
    def n(self) -> int:
        return len(self.words)


class TopicWordDist:
    """A probability vector over vocabulary ids (one topic's word distribution)."""

    __slots__ = ("probs",)

    def __init__(self, probs) -> None:
        p = np.asarray(probs, dtype=np.float64)
        if p.ndim != 1:
            raise ValueError("expected a 1-D probability vector")
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(float(p.sum()) - 1.0) > 1e-9:
            raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
        self.probs = p

    def __len__(self) -> int:
        return len(self.probs)


@dataclass
class TopicSet:
    """K topics, each a ranked word list, optionally with full distributions."""

    topics: list[Topic]
    dists: list[TopicWordDist] | None = None

    def __len__(self) -> int:
        return len(self.topics)


def topic_top_words(weights, n: int) -> Topic:
    """Pick the ``n`` highest-weight word ids from a dense weight vector.

    Ties break toward the lower token id so rankings are deterministic.
    """
    w = np.asarray(weights, dtype=np.float64)
    if n > len(w):
        raise ValueError(f"asked for top {n} of only {len(w)} words")
    # sort by (-weight, id): stable argsort on ids already in ascending order
    order = np.argsort(-w, kind="stable")
    return Topic(tuple(int(i) for i in order[:n]))
