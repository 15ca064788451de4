"""Topic modeling baselines and topic-quality metrics.

Library layout:

* :mod:`topiceval.preprocessing` - tokenization, vocabulary, bag-of-words, TF-IDF
* :mod:`topiceval.cooccurrence`  - document / sliding-window co-occurrence counts
* :mod:`topiceval.coherence`     - umass, c_npmi and c_v topic coherence
* :mod:`topiceval.divergence`    - JSD, Hellinger, cosine, top-word diversity
* :mod:`topiceval.lda`           - collapsed Gibbs LDA
* :mod:`topiceval.nmf`           - multiplicative-update NMF
* :mod:`topiceval.embeddings`    - EMB1 container I/O
* :mod:`topiceval.pca`           - principal-component reduction
* :mod:`topiceval.clustering`    - k-means and HDBSCAN
* :mod:`topiceval.ctfidf`        - class-based TF-IDF topic extraction
* :mod:`topiceval.pipeline`      - embeddings -> topics pipeline
* :mod:`topiceval.cli`           - the ``topiceval`` benchmark command
"""

__version__ = "0.1.0"

from .coherence import CoherenceConfig, c_npmi, c_v, npmi, umass_coherence
from .cooccurrence import CooccurrenceStats, count_document_stats, count_window_stats
from .divergence import (
    avg_pairwise_divergence,
    cosine_distance,
    hellinger,
    jsd,
    kl,
    unique_word_diversity,
)
from .embeddings import EmbeddingMatrix, load_embeddings, write_embeddings
from .lda import LdaConfig, lda_fit, lda_phi, lda_theta, lda_topic_set
from .nmf import NmfFactors, nmf_fit, nmf_topic_set
from .pipeline import PipelineConfig, run_pipeline
from .preprocessing import (
    BowCorpus,
    TokenizerConfig,
    Vocabulary,
    build_vocabulary,
    doc2bow,
    tfidf,
    tokenize,
)
from .topics import Topic, TopicSet, TopicWordDist, topic_top_words

__all__ = [
    "BowCorpus",
    "CoherenceConfig",
    "CooccurrenceStats",
    "EmbeddingMatrix",
    "LdaConfig",
    "NmfFactors",
    "PipelineConfig",
    "Topic",
    "TopicSet",
    "TopicWordDist",
    "TokenizerConfig",
    "Vocabulary",
    "avg_pairwise_divergence",
    "build_vocabulary",
    "c_npmi",
    "c_v",
    "cosine_distance",
    "count_document_stats",
    "count_window_stats",
    "doc2bow",
    "hellinger",
    "jsd",
    "kl",
    "lda_fit",
    "lda_phi",
    "lda_theta",
    "lda_topic_set",
    "load_embeddings",
    "nmf_fit",
    "nmf_topic_set",
    "npmi",
    "run_pipeline",
    "tfidf",
    "tokenize",
    "topic_top_words",
    "umass_coherence",
    "unique_word_diversity",
    "write_embeddings",
]
