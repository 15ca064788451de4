import math

import numpy as np
import pytest

from topiceval.clustering import ClusterAssignment
from topiceval.ctfidf import ctfidf, ctfidf_weights
from topiceval.errors import MisalignedInputs, NoClusters
from topiceval.preprocessing import build_vocabulary, corpus_to_bow


def cluster_corpus():
    # c1 = {apple:3, pear:1}, c2 = {car:2, road:2}
    docs = [["apple", "apple"], ["apple", "pear"], ["car", "road"], ["road", "car"]]
    vocab = build_vocabulary(docs)
    corpus = corpus_to_bow(docs, vocab)
    labels = ClusterAssignment(np.array([0, 0, 1, 1]), k=2)
    return corpus, vocab, labels


def test_derived_weight_value():
    corpus, vocab, labels = cluster_corpus()
    model = ctfidf_weights(corpus, labels)
    assert model.avg_tokens == 4.0
    w_apple = model.weights[0, vocab.id_of["apple"]]
    assert w_apple == pytest.approx(3 * math.log(1 + 4 / 3), abs=1e-4)
    assert w_apple == pytest.approx(2.5419, abs=1e-4)


def test_concentrated_term_outranks_spread_term():
    # "focus" appears 4x in one cluster; "spread" 1x in each of 4 clusters
    docs = [["focus"] * 4 + ["spread"], ["spread", "pad"], ["spread", "pad"], ["spread", "pad"]]
    vocab = build_vocabulary(docs)
    corpus = corpus_to_bow(docs, vocab)
    labels = ClusterAssignment(np.arange(4), k=4)
    model = ctfidf_weights(corpus, labels)
    w = model.weights
    f, s = vocab.id_of["focus"], vocab.id_of["spread"]
    assert w[0, f] > w[0, s]


def test_uniform_scaling_preserves_ranking():
    rng = np.random.default_rng(0)
    docs = []
    for _ in range(12):
        docs.append([f"w{rng.integers(30):02d}" for _ in range(rng.integers(5, 40))])
    vocab = build_vocabulary(docs)
    labels = ClusterAssignment(np.array([i % 3 for i in range(12)]), k=3)

    corpus1 = corpus_to_bow(docs, vocab)
    corpus5 = corpus_to_bow([d * 5 for d in docs], vocab)
    t1 = ctfidf(corpus1, labels, top_n=5)
    t5 = ctfidf(corpus5, labels, top_n=5)
    assert [t.words for t in t1.topics] == [t.words for t in t5.topics]


def test_noise_docs_excluded():
    docs = [["alpha", "beta"], ["alpha"], ["gamma", "gamma"]]
    vocab = build_vocabulary(docs)
    corpus = corpus_to_bow(docs, vocab)
    labels = ClusterAssignment(np.array([0, 0, -1]), k=1)
    model = ctfidf_weights(corpus, labels)
    assert model.tf.shape[0] == 1
    assert model.tf[0, vocab.id_of["gamma"]] == 0


def test_topics_reference_vocabulary_and_dists_normalized():
    corpus, vocab, labels = cluster_corpus()
    ts = ctfidf(corpus, labels, top_n=2)
    assert len(ts) == 2
    for topic in ts.topics:
        for w in topic.words:
            assert 0 <= w < len(vocab)
    for dist in ts.dists:
        assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_tie_breaks_toward_lower_id():
    docs = [["zz", "aa"], ["bb", "cc"]]
    vocab = build_vocabulary(docs)
    corpus = corpus_to_bow(docs, vocab)
    labels = ClusterAssignment(np.array([0, 1]), k=2)
    ts = ctfidf(corpus, labels, top_n=2)
    for topic in ts.topics:
        assert list(topic.words) == sorted(topic.words)


def test_all_noise_rejected():
    corpus, _, _ = cluster_corpus()
    labels = ClusterAssignment(np.array([-1, -1, -1, -1]), k=0)
    with pytest.raises(NoClusters):
        ctfidf(corpus, labels)


def test_misaligned_rejected():
    corpus, _, _ = cluster_corpus()
    labels = ClusterAssignment(np.array([0, 0]), k=1)
    with pytest.raises(MisalignedInputs):
        ctfidf(corpus, labels)
