"""Text normalization, vocabulary construction, bag-of-words and TF-IDF.

Tokenization is deliberately lightweight: NFC-normalize, lowercase,
split on non-alphanumeric runs, filter by length/character class and a
stopword list. All knobs live in :class:`TokenizerConfig` so runs are
reproducible; the shipped stopword list is pinned in
``data/stopwords_en.txt``.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
import scipy.sparse as sp

from .errors import EmptyCorpus

_WORD_RUN = re.compile(r"[^\W_]+", re.UNICODE)  # alphanumeric runs, no underscore

SparseDoc = list[tuple[int, int]]  # (token_id, count), ids ascending


def load_default_stopwords() -> frozenset[str]:
    """Return the pinned English stopword list shipped with the package."""
    text = resources.files("topiceval").joinpath("data/stopwords_en.txt").read_text("utf-8")
    words = [ln.strip() for ln in text.splitlines()]
    return frozenset(w for w in words if w and not w.startswith("#"))


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    strip_punctuation: bool = True
    min_token_len: int = 2
    max_token_len: int = 15
    alphabetic_only: bool = True
    stopwords: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not (1 <= self.min_token_len <= self.max_token_len):
            raise ValueError(
                f"need 1 <= min_token_len <= max_token_len, got "
                f"[{self.min_token_len}, {self.max_token_len}]"
            )


def tokenize(raw: str, cfg: TokenizerConfig = TokenizerConfig()) -> list[str]:
    """Split ``raw`` into normalized tokens, preserving order.

    With ``strip_punctuation`` the text is split on every non-alphanumeric
    run (hyphens split words); otherwise it is split on whitespace only.
    Stopword comparison happens after lowercasing. Degenerate input yields
    an empty list, never an error.
    """
    if not raw:
        return []
    text = unicodedata.normalize("NFC", raw)
    if cfg.lowercase:
        text = text.lower()
    if cfg.strip_punctuation:
        parts = _WORD_RUN.findall(text)
    else:
        parts = text.split()
    out = []
    for tok in parts:
        if not (cfg.min_token_len <= len(tok) <= cfg.max_token_len):
            continue
        if cfg.alphabetic_only and not tok.isalpha():
            continue
        if tok in cfg.stopwords:
            continue
        out.append(tok)
    return out


@dataclass
class Vocabulary:
    """Bidirectional token<->id map with per-token document frequencies.

    Ids are contiguous ``0..V-1``, assigned in sorted token order so the
    mapping is independent of document order and worker scheduling.
    """

    id_of: dict[str, int]
    token_of: list[str]
    doc_freq: list[int]
    n_docs: int

    def __len__(self) -> int:
        return len(self.token_of)


def build_vocabulary(docs: list[list[str]]) -> Vocabulary:
    """Assign one id per distinct token and count document frequencies.

    ``doc_freq`` counts documents containing a token, not occurrences.
    Raises :class:`EmptyCorpus` when ``docs`` is empty.
    """
    if not docs:
        raise EmptyCorpus("cannot build a vocabulary from zero documents")
    df: dict[str, int] = {}
    for tokens in docs:
        for tok in set(tokens):
            df[tok] = df.get(tok, 0) + 1
    token_of = sorted(df)
    id_of = {tok: i for i, tok in enumerate(token_of)}
    return Vocabulary(
        id_of=id_of,
        token_of=token_of,
        doc_freq=[df[tok] for tok in token_of],
        n_docs=len(docs),
    )


@dataclass
class BowCorpus:
    """Sparse per-document (token_id, count) records over one vocabulary."""

    docs: list[SparseDoc]
    vocab: Vocabulary
    doc_ids: list[str] | None = None

    def __len__(self) -> int:
        return len(self.docs)


def doc2bow(tokens: list[str], vocab: Vocabulary) -> SparseDoc:
    """Count token occurrences against ``vocab``; unknown tokens are dropped."""
    counts: dict[int, int] = {}
    get = vocab.id_of.get
    for tok in tokens:
        tid = get(tok)
        if tid is not None:
            counts[tid] = counts.get(tid, 0) + 1
    return sorted(counts.items())


def corpus_to_bow(docs: list[list[str]], vocab: Vocabulary,
                  doc_ids: list[str] | None = None) -> BowCorpus:
    return BowCorpus([doc2bow(toks, vocab) for toks in docs], vocab, doc_ids)


def tfidf(corpus: BowCorpus) -> sp.csr_matrix:
    """Weight counts by inverse document frequency.

    weight(d, t) = count(d, t) * ln(n_docs / doc_freq(t)). A token present
    in every document therefore gets weight exactly 0; rows may be all-zero.
    """
    if not corpus.docs:
        raise EmptyCorpus("cannot compute tf-idf of an empty corpus")
    vocab = corpus.vocab
    idf = np.log(vocab.n_docs / np.asarray(vocab.doc_freq, dtype=np.float64))
    rows, cols, vals = [], [], []
    for d, doc in enumerate(corpus.docs):
        for tid, cnt in doc:
            rows.append(d)
            cols.append(tid)
            vals.append(cnt * idf[tid])
    return sp.csr_matrix(
        (vals, (rows, cols)), shape=(len(corpus.docs), len(vocab)), dtype=np.float64
    )
