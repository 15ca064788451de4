"""Latent Dirichlet Allocation trained by collapsed Gibbs sampling.

Theta and phi are integrated out; each sweep resamples every token's
topic assignment from the count-based conditional

    p(z = k)  propto  (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)

with the current token excluded from all counts. Sampling consumes one
block of uniforms per sweep drawn from a seeded PCG64 generator, so a
fixed seed gives bit-identical chains regardless of host or thread
count. No burn-in or thinning: the final sweep's counts are the
estimate, and the number of sweeps is the knob.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus
from .preprocessing import BowCorpus
from .topics import TopicWordDist


@dataclass(frozen=True)
class LdaConfig:
    k: int
    alpha: float | None = None  # None: symmetric 50/K
    beta: float = 0.01
    sweeps: int = 200
    seed: int = 42

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")

    @property
    def effective_alpha(self) -> float:
        return 50.0 / self.k if self.alpha is None else self.alpha


@dataclass
class LdaState:
    """Assignments and sufficient statistics after Gibbs sweeps."""

    z: list[np.ndarray]  # per-doc token topic assignments
    n_dk: np.ndarray  # docs x topics
    n_kw: np.ndarray  # topics x vocab
    n_k: np.ndarray  # topic totals
    config: LdaConfig
    vocab_size: int
    doc_tokens: list[np.ndarray] = field(repr=False, default_factory=list)


def _expand_docs(corpus: BowCorpus) -> list[np.ndarray]:
    """Expand bags into token-instance arrays (ids ascending within a doc)."""
    docs = []
    for bow in corpus.docs:
        ids = np.repeat(
            np.array([t for t, _ in bow], dtype=np.int64),
            np.array([c for _, c in bow], dtype=np.int64),
        ) if bow else np.empty(0, dtype=np.int64)
        docs.append(ids)
    return docs


def lda_fit(corpus: BowCorpus, cfg: LdaConfig) -> LdaState:
    """Run ``cfg.sweeps`` full collapsed Gibbs sweeps over the corpus."""
    if not corpus.docs:
        raise EmptyCorpus("LDA needs a non-empty corpus")
    docs = _expand_docs(corpus)
    if any(len(d) == 0 for d in docs):
        raise EmptyCorpus("LDA needs every document to contain >= 1 token")
    v = len(corpus.vocab)
    k = cfg.k
    alpha = cfg.effective_alpha
    beta = cfg.beta
    vbeta = v * beta
    rng = np.random.default_rng(cfg.seed)

    n_dk = np.zeros((len(docs), k), dtype=np.int64)
    n_kw = np.zeros((k, v), dtype=np.int64)
    n_k = np.zeros(k, dtype=np.int64)
    z: list[np.ndarray] = []
    for d, ids in enumerate(docs):
        zd = rng.integers(0, k, size=len(ids), dtype=np.int64)
        z.append(zd)
        np.add.at(n_dk[d], zd, 1)
        np.add.at(n_kw, (zd, ids), 1)
        np.add.at(n_k, zd, 1)

    if k == 1:  # single topic: every conditional is a point mass
        return LdaState(z, n_dk, n_kw, n_k, cfg, v, docs)

    total_tokens = int(sum(len(d) for d in docs))
    # plain-python lists in the inner loop: much faster than ndarray indexing
    n_k_l = n_k.tolist()
    n_dk_l = n_dk.tolist()
    n_kw_cols = [n_kw[:, w].tolist() for w in range(v)]
    docs_l = [ids.tolist() for ids in docs]
    z_l = [zd.tolist() for zd in z]
    probs = [0.0] * k
    krange = range(k)

    for _ in range(cfg.sweeps):
        u = rng.random(total_tokens).tolist()
        ui = 0
        for d, ids in enumerate(docs_l):
            row = n_dk_l[d]
            zd = z_l[d]
            for i, w in enumerate(ids):
                old = zd[i]
                col = n_kw_cols[w]
                row[old] -= 1
                col[old] -= 1
                n_k_l[old] -= 1
                total = 0.0
                for kk in krange:
                    total += (row[kk] + alpha) * (col[kk] + beta) / (n_k_l[kk] + vbeta)
                    probs[kk] = total
                target = u[ui] * total
                ui += 1
                new = 0
                while probs[new] < target:
                    new += 1
                zd[i] = new
                row[new] += 1
                col[new] += 1
                n_k_l[new] += 1

    z = [np.array(zd, dtype=np.int64) for zd in z_l]
    n_dk = np.array(n_dk_l, dtype=np.int64)
    n_kw = np.column_stack([np.array(c, dtype=np.int64) for c in n_kw_cols])
    n_k = np.array(n_k_l, dtype=np.int64)
    return LdaState(z, n_dk, n_kw, n_k, cfg, v, docs)


def lda_phi(state: LdaState, beta: float | None = None) -> list[TopicWordDist]:
    """Posterior-mean topic-word distributions: (n_kw + beta) / (n_k + V*beta)."""
    b = state.config.beta if beta is None else beta
    v = state.vocab_size
    rows = (state.n_kw + b) / (state.n_k[:, None] + v * b)
    return [TopicWordDist(r) for r in rows]


def lda_theta(state: LdaState, alpha: float | None = None) -> np.ndarray:
    """Posterior-mean document-topic mixtures: (n_dk + alpha) / (len_d + K*alpha)."""
    a = state.config.effective_alpha if alpha is None else alpha
    k = state.config.k
    lens = state.n_dk.sum(axis=1, keepdims=True)
    return (state.n_dk + a) / (lens + k * a)


def lda_topic_set(state: LdaState, top_n: int = 10) -> "TopicSet":
    """Ranked topics plus full phi distributions for the metric modules."""
    from .topics import TopicSet, topic_top_words

    dists = lda_phi(state)
    topics = [topic_top_words(d.probs, top_n) for d in dists]
    return TopicSet(topics, dists)


def check_count_invariants(state: LdaState) -> None:
    """Exact integer conservation checks; raises AssertionError on violation."""
    for d, ids in enumerate(state.doc_tokens):
        assert state.n_dk[d].sum() == len(ids)
    assert (state.n_kw.sum(axis=1) == state.n_k).all()
    assert (state.n_dk >= 0).all() and (state.n_kw >= 0).all()
    total = sum(len(d) for d in state.doc_tokens)
    assert state.n_k.sum() == total
