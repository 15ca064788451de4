"""Principal-component reduction for embedding matrices."""

from __future__ import annotations

import warnings

import numpy as np

from .embeddings import EmbeddingMatrix
from .errors import DegenerateCovariance


def reduce_pca(emb: EmbeddingMatrix, d: int) -> EmbeddingMatrix:
    """Project mean-centered rows onto the top-``d`` principal directions.

    Components are ordered by descending eigenvalue and sign-fixed so each
    component's largest-magnitude loading is positive, which makes the
    projection reproducible across LAPACK builds. If the data rank is
    below ``d`` a :class:`DegenerateCovariance` warning is issued and the
    projection keeps only the informative directions.
    """
    if d < 1:
        raise ValueError("target dimension must be >= 1")
    if d > emb.dim:
        raise ValueError(f"target dimension {d} exceeds input dimension {emb.dim}")
    x = np.asarray(emb.data, dtype=np.float64)
    centered = x - x.mean(axis=0)
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    tol = s[0] * max(centered.shape) * np.finfo(np.float64).eps if s.size else 0.0
    rank = int((s > tol).sum())
    if rank < d:
        warnings.warn(
            f"data rank {rank} is below the requested dimension {d}; "
            f"projecting onto {rank} directions",
            DegenerateCovariance,
        )
        d = max(rank, 1)
    components = vt[:d]
    flip = np.sign(components[np.arange(d), np.abs(components).argmax(axis=1)])
    flip[flip == 0] = 1.0
    components = components * flip[:, None]
    return EmbeddingMatrix(centered @ components.T, list(emb.doc_ids))
