import numpy as np
import pytest

from topiceval.embeddings import EmbeddingMatrix
from topiceval.errors import MisalignedInputs
from topiceval.pipeline import PipelineConfig, run_pipeline
from topiceval.preprocessing import build_vocabulary, corpus_to_bow


def synthetic_inputs(n_cats=4, docs_per=25, seed=0):
    """Tiny aligned corpus + embeddings with planted category structure."""
    rng = np.random.default_rng(seed)
    cat_words = [[f"c{c}w{i}" for i in range(12)] for c in range(n_cats)]
    docs, cats = [], []
    for d in range(n_cats * docs_per):
        c = d % n_cats
        cats.append(c)
        docs.append([cat_words[c][rng.integers(12)] for _ in range(20)])
    vocab = build_vocabulary(docs)
    ids = [f"d{d}" for d in range(len(docs))]
    corpus = corpus_to_bow(docs, vocab, ids)
    centers = rng.standard_normal((n_cats, 24)) * 6
    data = np.vstack([centers[c] + rng.standard_normal(24) * 0.4 for c in cats])
    emb = EmbeddingMatrix(data.astype(np.float64), list(ids))
    return corpus, emb, np.array(cats)


def test_kmeans_backend_exact_k():
    corpus, emb, _ = synthetic_inputs()
    cfg = PipelineConfig(clusterer="kmeans", n_clusters=5, reduce_dim=3, seed=1)
    res = run_pipeline(corpus, emb, cfg)
    assert res.assignment.k == 5
    assert len(res.topics) == 5
    assert res.metadata["k"] == 5


def test_hdbscan_backend_recovers_categories():
    corpus, emb, cats = synthetic_inputs()
    cfg = PipelineConfig(clusterer="hdbscan", min_cluster_size=10, reduce_dim=3)
    res = run_pipeline(corpus, emb, cfg)
    assert res.assignment.k == 4
    # every topic's words should come from a single planted category
    vocab = corpus.vocab
    for topic in res.topics.topics:
        prefixes = {vocab.token_of[w][:2] for w in topic.words}
        assert len(prefixes) == 1


def test_deterministic_given_seed():
    corpus, emb, _ = synthetic_inputs(seed=3)
    cfg = PipelineConfig(clusterer="kmeans", n_clusters=4, seed=77, reduce_dim=4)
    a = run_pipeline(corpus, emb, cfg)
    b = run_pipeline(corpus, emb, cfg)
    assert (a.assignment.labels == b.assignment.labels).all()
    assert [t.words for t in a.topics.topics] == [t.words for t in b.topics.topics]


def test_hdbscan_backend_deterministic():
    corpus, emb, _ = synthetic_inputs(seed=6)
    cfg = PipelineConfig(clusterer="hdbscan", min_cluster_size=10, reduce_dim=3)
    a = run_pipeline(corpus, emb, cfg)
    b = run_pipeline(corpus, emb, cfg)
    assert (a.assignment.labels == b.assignment.labels).all()
    assert [t.words for t in a.topics.topics] == [t.words for t in b.topics.topics]
    assert a.metadata == b.metadata


def test_topic_words_exist_in_vocabulary():
    corpus, emb, _ = synthetic_inputs(seed=4)
    res = run_pipeline(corpus, emb, PipelineConfig(clusterer="kmeans", n_clusters=3))
    v = len(corpus.vocab)
    for topic in res.topics.topics:
        assert all(0 <= w < v for w in topic.words)


def test_metadata_contents():
    corpus, emb, _ = synthetic_inputs(seed=5)
    cfg = PipelineConfig(clusterer="hdbscan", min_cluster_size=12, reduce_dim=3, seed=9)
    res = run_pipeline(corpus, emb, cfg)
    md = res.metadata
    assert md["seed"] == 9
    assert md["reduced_dim"] == 3
    assert 0.0 <= md["noise_fraction"] <= 1.0
    assert md["config"]["min_cluster_size"] == 12


def test_length_mismatch_rejected():
    corpus, emb, _ = synthetic_inputs()
    short = EmbeddingMatrix(emb.data[:-1], emb.doc_ids[:-1])
    with pytest.raises(MisalignedInputs):
        run_pipeline(corpus, short, PipelineConfig())


def test_id_mismatch_rejected():
    corpus, emb, _ = synthetic_inputs()
    renamed = EmbeddingMatrix(emb.data, [f"x{i}" for i in range(emb.n_docs)])
    with pytest.raises(MisalignedInputs):
        run_pipeline(corpus, renamed, PipelineConfig())


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        PipelineConfig(clusterer="umap")
    with pytest.raises(ValueError):
        PipelineConfig(reduce_dim=0)
