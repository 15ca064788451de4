"""Embedding -> reduction -> clustering -> c-TF-IDF topic pipeline."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .clustering import ClusterAssignment, hdbscan, kmeans
from .ctfidf import ctfidf
from .embeddings import EmbeddingMatrix
from .errors import MisalignedInputs
from .pca import reduce_pca
from .preprocessing import BowCorpus
from .topics import TopicSet

CLUSTERERS = ("hdbscan", "kmeans")


@dataclass(frozen=True)
class PipelineConfig:
    reduce_dim: int = 5
    clusterer: str = "hdbscan"
    min_cluster_size: int = 10  # hdbscan
    min_samples: int | None = None  # hdbscan; None tracks min_cluster_size
    n_clusters: int = 10  # kmeans
    top_n: int = 10
    seed: int = 42
    max_iters: int = 300  # kmeans

    def __post_init__(self) -> None:
        if self.clusterer not in CLUSTERERS:
            raise ValueError(f"unknown clusterer {self.clusterer!r}")
        if self.reduce_dim < 1:
            raise ValueError("reduce_dim must be >= 1")


@dataclass
class PipelineResult:
    topics: TopicSet
    assignment: ClusterAssignment
    metadata: dict


def run_pipeline(
    corpus: BowCorpus, embeddings: EmbeddingMatrix, config: PipelineConfig
) -> PipelineResult:
    """Reduce, cluster and extract topics from precomputed embeddings.

    The corpus and embedding rows must describe the same documents in the
    same order; when both sides carry ids the alignment is checked id by
    id. Noise documents are excluded from topic extraction.
    """
    if len(corpus.docs) != embeddings.n_docs:
        raise MisalignedInputs(
            f"{len(corpus.docs)} corpus documents vs {embeddings.n_docs} embedding rows"
        )
    if corpus.doc_ids is not None and corpus.doc_ids != embeddings.doc_ids:
        raise MisalignedInputs("corpus and embedding doc ids disagree")

    reduced = reduce_pca(embeddings, min(config.reduce_dim, embeddings.dim))
    if config.clusterer == "kmeans":
        assignment = kmeans(reduced, config.n_clusters, config.seed, config.max_iters)
    else:
        assignment = hdbscan(reduced, config.min_cluster_size, config.min_samples)
    topics = ctfidf(corpus, assignment, config.top_n)
    metadata = {
        "config": asdict(config),
        "seed": config.seed,
        "k": assignment.k,
        "n_topics": len(topics),
        "noise_fraction": assignment.noise_fraction,
        "reduced_dim": reduced.dim,
    }
    return PipelineResult(topics, assignment, metadata)
