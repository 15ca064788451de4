"""Occurrence and joint-occurrence counts over virtual documents.

A virtual document is either a whole document or one fixed-size sliding
window. Counts are boolean per virtual document (multiplicity inside a
window is ignored) and stored as exact integers; probabilities are
computed lazily so that parallel shard merges stay bit-exact.

Window counting does not materialize windows: for each relevant word we
derive the contiguous range of window indices covering each position and
merge those ranges, so occurrence counts are interval unions and joint
counts are interval intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyWordSet, UnknownWord
from .preprocessing import BowCorpus

Pair = tuple[int, int]  # unordered, stored as (min_id, max_id)


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass
class CooccurrenceStats:
    """Counts of virtual documents containing each word / word pair.

    Invariants: ``joint(i, j) <= min(occur(i), occur(j)) <= n_virtual`` and
    joint counts are symmetric (keys are normalized (min, max) pairs).
    """

    mode: str  # "document" or "window"
    n_virtual: int
    word_set: frozenset[int]
    occur: dict[int, int] = field(default_factory=dict)
    joint: dict[Pair, int] = field(default_factory=dict)
    window_size: int | None = None
    window_step: int | None = None

    def occur_count(self, w: int) -> int:
        self._check(w)
        return self.occur.get(w, 0)

    def joint_count(self, wi: int, wj: int) -> int:
        self._check(wi)
        self._check(wj)
        return self.joint.get(_pair(wi, wj), 0)

    def _check(self, w: int) -> None:
        if w not in self.word_set:
            raise UnknownWord(f"word id {w} not covered by these statistics")


def prob(stats: CooccurrenceStats, w: int) -> float:
    """P(w) = fraction of virtual documents containing ``w``."""
    return stats.occur_count(w) / stats.n_virtual


def joint_prob(stats: CooccurrenceStats, wi: int, wj: int) -> float:
    """P(wi, wj) = fraction of virtual documents containing both words."""
    return stats.joint_count(wi, wj) / stats.n_virtual


def count_document_stats(corpus: BowCorpus, words: set[int]) -> CooccurrenceStats:
    """Count whole-document occurrences for ``words``.

    Each document counts at most once per word and per pair, regardless of
    how often the word occurs inside it.
    """
    if not words:
        raise EmptyWordSet("co-occurrence statistics need at least one word")
    stats = CooccurrenceStats(
        mode="document", n_virtual=len(corpus.docs), word_set=frozenset(words)
    )
    occur, joint = stats.occur, stats.joint
    for doc in corpus.docs:
        present = sorted(tid for tid, _ in doc if tid in words)
        for i, a in enumerate(present):
            occur[a] = occur.get(a, 0) + 1
            for b in present[i + 1:]:
                key = (a, b)
                joint[key] = joint.get(key, 0) + 1
    return stats


def n_windows(doc_len: int, size: int, step: int) -> int:
    """Number of sliding windows a document contributes.

    Exactly the full-size windows at the given stride; a document shorter
    than ``size`` contributes one window covering the whole document.
    """
    if doc_len < size:
        return 1
    return (doc_len - size) // step + 1


def count_window_stats(
    docs: list[list[int]], words: set[int], size: int, step: int = 1
) -> CooccurrenceStats:
    """Count sliding-window occurrences for ``words`` over token-id sequences.

    Windows never span documents and truncated tail windows are not
    emitted, except that a document shorter than ``size`` contributes the
    whole document as its single window.
    """
    if size < 1 or step < 1:
        raise ValueError(f"window size and step must be >= 1, got {size}/{step}")
    stats = CooccurrenceStats(
        mode="window",
        n_virtual=0,
        word_set=frozenset(words),
        window_size=size,
        window_step=step,
    )
    occur, joint = stats.occur, stats.joint
    total = 0
    for doc in docs:
        nw = n_windows(len(doc), size, step)
        total += nw
        # window ranges per relevant word: token at position p sits in
        # window w iff w*step <= p <= w*step + size - 1
        ranges: dict[int, list[list[int]]] = {}
        if len(doc) < size:
            for tid in set(doc):
                if tid in words:
                    ranges[tid] = [[0, 0]]
        else:
            for p, tid in enumerate(doc):
                if tid not in words:
                    continue
                lo = max(0, -(-(p - size + 1) // step))  # ceil division
                hi = min(nw - 1, p // step)
                if lo > hi:
                    continue
                ivs = ranges.setdefault(tid, [])
                if ivs and lo <= ivs[-1][1] + 1:
                    if hi > ivs[-1][1]:
                        ivs[-1][1] = hi
                else:
                    ivs.append([lo, hi])
        present = sorted(ranges)
        for i, a in enumerate(present):
            ia = ranges[a]
            occur[a] = occur.get(a, 0) + sum(hi - lo + 1 for lo, hi in ia)
            for b in present[i + 1:]:
                overlap = _intersection_size(ia, ranges[b])
                if overlap:
                    key = (a, b)
                    joint[key] = joint.get(key, 0) + overlap
    stats.n_virtual = total
    return stats


def _intersection_size(a: list[list[int]], b: list[list[int]]) -> int:
    """Total length of the intersection of two sorted disjoint range lists."""
    i = j = out = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out += hi - lo + 1
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return out


def dump_stats_csv(stats: CooccurrenceStats) -> list[tuple]:
    """Debug rows: (word_i, word_j, joint, occur_i, occur_j, n_virtual)."""
    rows = []
    for a in sorted(stats.word_set):
        for b in sorted(stats.word_set):
            if a < b:
                rows.append(
                    (a, b, stats.joint_count(a, b), stats.occur_count(a),
                     stats.occur_count(b), stats.n_virtual)
                )
    return rows
