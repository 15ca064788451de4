"""Clustering backends for the embedding pipeline.

``kmeans`` is Lloyd iteration from a k-means++ seeding and never emits
noise. ``hdbscan`` is a density-based hierarchy: core distances feed a
mutual-reachability graph, whose minimum spanning tree gives a
single-linkage dendrogram; condensing at ``min_cluster_size`` and
extracting the excess-of-mass (stability) optimum yields the flat
clusters, with everything else labeled -1.

Both backends are deterministic: ties break toward the lower index and
the only randomness comes from a caller-provided seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingMatrix
from .errors import TooFewPoints


@dataclass
class ClusterAssignment:
    """Per-document integer labels; -1 marks noise, clusters are 0..k-1."""

    labels: np.ndarray
    k: int

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.size:
            present = set(int(x) for x in np.unique(labels))
            if not present <= set(range(-1, self.k)):
                raise ValueError(f"labels outside [-1, {self.k})")
            if set(range(self.k)) - present:
                raise ValueError("every non-noise cluster must be non-empty")

    @property
    def noise_fraction(self) -> float:
        labels = np.asarray(self.labels)
        return float((labels == -1).mean()) if labels.size else 0.0


def _as_points(x) -> np.ndarray:
    if isinstance(x, EmbeddingMatrix):
        x = x.data
    return np.asarray(x, dtype=np.float64)


def _pairwise_sq(x: np.ndarray) -> np.ndarray:
    sq = (x * x).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return d2


# --------------------------------------------------------------------------
# k-means
# --------------------------------------------------------------------------


def kmeans(x, k: int, seed: int = 42, max_iters: int = 300) -> ClusterAssignment:
    """Cluster into exactly ``k`` groups (no noise labels)."""
    labels, _, _ = _kmeans_full(x, k, seed, max_iters)
    return ClusterAssignment(labels, k)


def _kmeans_full(x, k: int, seed: int, max_iters: int):
    pts = _as_points(x)
    n = pts.shape[0]
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < k:
        raise TooFewPoints(f"{n} points cannot form {k} clusters")
    rng = np.random.default_rng(seed)

    centers = np.empty((k, pts.shape[1]))
    centers[0] = pts[int(rng.integers(n))]
    d2 = ((pts - centers[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            idx = int(rng.integers(n))  # all points coincide with a center
        centers[i] = pts[idx]
        d2 = np.minimum(d2, ((pts - centers[i]) ** 2).sum(axis=1))

    labels = np.full(n, -1, dtype=np.int64)
    inertia_trace: list[float] = []
    for _ in range(max_iters):
        dist = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = dist.argmin(axis=1)
        # re-seat empty clusters on the point worst served by its center
        for c in range(k):
            if not (new_labels == c).any():
                worst = int(dist[np.arange(n), new_labels].argmax())
                new_labels[worst] = c
                centers[c] = pts[worst]
        inertia_trace.append(float(((pts - centers[new_labels]) ** 2).sum()))
        if (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(k):
            centers[c] = pts[labels == c].mean(axis=0)
    return labels, centers, inertia_trace


# --------------------------------------------------------------------------
# HDBSCAN
# --------------------------------------------------------------------------


def hdbscan(
    x, min_cluster_size: int = 10, min_samples: int | None = None
) -> ClusterAssignment:
    """Density-based clustering; the number of clusters is data-determined."""
    pts = _as_points(x)
    n = pts.shape[0]
    if min_cluster_size < 2:
        raise ValueError("min_cluster_size must be >= 2")
    if min_samples is None:
        min_samples = min_cluster_size
    if min_samples < 1:
        raise ValueError("min_samples must be >= 1")
    if n < min_cluster_size:
        raise TooFewPoints(f"{n} points, need >= min_cluster_size ({min_cluster_size})")

    dist = np.sqrt(_pairwise_sq(pts))
    k = min(min_samples, n)
    core = np.partition(dist, k - 1, axis=1)[:, k - 1]  # self counts as neighbor 1
    mreach = np.maximum(dist, np.maximum(core[:, None], core[None, :]))
    edges = _prim_mst(mreach)

    if max(w for *_, w in edges) == 0.0:
        # every point is mutually reachable at distance 0 (identical points)
        return ClusterAssignment(np.zeros(n, dtype=np.int64), 1)

    merges = _single_linkage(edges, n)
    tree = _condense(merges, n, min_cluster_size)
    selected = _excess_of_mass(tree)
    labels = _label_points(tree, selected, n)
    return ClusterAssignment(labels, int(labels.max()) + 1 if selected else 0)


def _prim_mst(weights: np.ndarray) -> list[tuple[int, int, float]]:
    """Dense-graph Prim; returns n-1 (parent, child, weight) edges."""
    n = weights.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    best = weights[0].copy()
    parent = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    edges = []
    masked = best.copy()
    for _ in range(n - 1):
        masked[:] = best
        masked[in_tree] = np.inf
        j = int(masked.argmin())
        edges.append((int(parent[j]), j, float(best[j])))
        in_tree[j] = True
        improved = weights[j] < best
        parent[improved] = j
        np.minimum(best, weights[j], out=best)
    return edges


def _single_linkage(edges: list[tuple[int, int, float]], n: int):
    """Union-find pass over weight-sorted edges -> scipy-style merge list.

    Merge i creates node ``n + i`` = (left_id, right_id, distance, size).
    A component's union-find root is always its newest tree node, so
    ``find`` directly yields subtree ids.
    """
    order = sorted(range(len(edges)), key=lambda i: (edges[i][2], i))
    uf_parent = list(range(2 * n - 1))
    sizes = [1] * n + [0] * (n - 1)

    def find(a: int) -> int:
        while uf_parent[a] != a:
            uf_parent[a] = uf_parent[uf_parent[a]]
            a = uf_parent[a]
        return a

    merges = []
    for i, ei in enumerate(order):
        a, b, w = edges[ei]
        na, nb = find(a), find(b)
        new = n + i
        merges.append((na, nb, w, sizes[na] + sizes[nb]))
        sizes[new] = sizes[na] + sizes[nb]
        uf_parent[na] = uf_parent[nb] = new
    return merges


class _CondensedTree:
    """Clusters (id 0 = root) with birth lambdas, child links and point leaves."""

    def __init__(self) -> None:
        self.birth: list[float] = []
        self.parent: list[int | None] = []
        self.children: list[list[int]] = []
        self.size: list[int] = []
        self.leaves: list[tuple[int, int, float]] = []  # (cluster, point, lambda)

    def add_cluster(self, parent: int | None, birth: float, size: int) -> int:
        cid = len(self.birth)
        self.birth.append(birth)
        self.parent.append(parent)
        self.children.append([])
        self.size.append(size)
        if parent is not None:
            self.children[parent].append(cid)
        return cid


def _condense(merges, n: int, min_cluster_size: int) -> _CondensedTree:
    """Collapse the dendrogram: splits below ``min_cluster_size`` shed points."""

    def node_size(node: int) -> int:
        return 1 if node < n else merges[node - n][3]

    def node_points(node: int) -> list[int]:
        out, stack = [], [node]
        while stack:
            cur = stack.pop()
            if cur < n:
                out.append(cur)
            else:
                left, right, _, _ = merges[cur - n]
                stack.extend((left, right))
        return out

    # cap infinite lambdas (zero merge distances) at a large finite value
    pos = [w for _, _, w, _ in merges if w > 0]
    lam_cap = (1.0 / min(pos)) * 1e3 if pos else 1.0

    def lam_of(dist: float) -> float:
        return 1.0 / dist if dist > 0 else lam_cap

    tree = _CondensedTree()
    root = tree.add_cluster(None, 0.0, n)
    stack = [(len(merges) - 1 + n, root)]
    while stack:
        node, cid = stack.pop()
        while True:
            left, right, dist, _ = merges[node - n]
            lam = lam_of(dist)
            sl, sr = node_size(left), node_size(right)
            big_l, big_r = sl >= min_cluster_size, sr >= min_cluster_size
            if big_l and big_r:
                # both sides survive: a true split into two child clusters
                for child in (left, right):
                    ccid = tree.add_cluster(cid, lam, node_size(child))
                    stack.append((child, ccid))
                break
            if big_l or big_r:
                keep, shed = (left, right) if big_l else (right, left)
                for p in node_points(shed):
                    tree.leaves.append((cid, p, lam))
                node = keep
                continue
            for p in node_points(node):
                tree.leaves.append((cid, p, lam))
            break
    return tree


def _excess_of_mass(tree: _CondensedTree) -> set[int]:
    """Pick the stability-optimal antichain of clusters (root not selectable)."""
    n_clusters = len(tree.birth)
    stability = [0.0] * n_clusters
    for cid, _, lam in tree.leaves:
        stability[cid] += lam - tree.birth[cid]
    for cid in range(1, n_clusters):
        parent = tree.parent[cid]
        stability[parent] += tree.size[cid] * (tree.birth[cid] - tree.birth[parent])

    selected: set[int] = set()
    subtree_score = [0.0] * n_clusters
    for cid in range(n_clusters - 1, 0, -1):  # children first; skip root
        kids = tree.children[cid]
        kid_sum = sum(subtree_score[c] for c in kids)
        if not kids or stability[cid] >= kid_sum:
            subtree_score[cid] = stability[cid]
            selected.add(cid)
            _deselect_descendants(tree, cid, selected)
        else:
            subtree_score[cid] = kid_sum
    return selected


def _deselect_descendants(tree: _CondensedTree, cid: int, selected: set[int]) -> None:
    stack = list(tree.children[cid])
    while stack:
        cur = stack.pop()
        selected.discard(cur)
        stack.extend(tree.children[cur])


def _label_points(tree: _CondensedTree, selected: set[int], n: int) -> np.ndarray:
    label_of = {cid: i for i, cid in enumerate(sorted(selected))}
    labels = np.full(n, -1, dtype=np.int64)
    for cid, point, _ in tree.leaves:
        cur: int | None = cid
        while cur is not None and cur not in selected:
            cur = tree.parent[cur]
        if cur is not None:
            labels[point] = label_of[cur]
    return labels
