import numpy as np
import pytest

from topiceval.clustering import (
    ClusterAssignment,
    _kmeans_full,
    _prim_mst,
    hdbscan,
    kmeans,
)
from topiceval.errors import TooFewPoints


def two_blobs(n_per=60, noise=0, seed=0, sep=10.0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n_per, 3)) * 0.4
    b = rng.standard_normal((n_per, 3)) * 0.4 + sep
    parts = [a, b]
    if noise:
        parts.append(rng.uniform(-3 * sep, 4 * sep, size=(noise, 3)))
    return np.vstack(parts)


def agree_up_to_relabel(labels, truth):
    """Exact partition match ignoring label names (noise must match as -1)."""
    mapping = {}
    for l, t in zip(labels, truth):
        if l == -1 or t == -1:
            if (l == -1) != (t == -1):
                return False
            continue
        if mapping.setdefault(l, t) != t:
            return False
    return len(set(mapping.values())) == len(mapping)


class TestClusterAssignment:
    def test_validates_labels(self):
        with pytest.raises(ValueError):
            ClusterAssignment(np.array([0, 3]), k=2)
        with pytest.raises(ValueError):
            ClusterAssignment(np.array([0, 0]), k=2)  # cluster 1 empty

    def test_noise_fraction(self):
        a = ClusterAssignment(np.array([0, -1, 0, -1]), k=1)
        assert a.noise_fraction == 0.5


class TestKmeans:
    def test_two_blobs_exact(self):
        x = two_blobs()
        truth = np.array([0] * 60 + [1] * 60)
        got = kmeans(x, 2, seed=9)
        assert agree_up_to_relabel(got.labels, truth)

    def test_k1_all_zero(self):
        x = two_blobs()
        got = kmeans(x, 1, seed=1)
        assert (got.labels == 0).all()

    def test_inertia_non_increasing(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((200, 4))
        _, _, trace = _kmeans_full(x, 6, seed=3, max_iters=50)
        t = np.array(trace)
        assert (t[1:] <= t[:-1] + 1e-9).all()

    def test_deterministic(self):
        x = two_blobs(seed=4)
        a = kmeans(x, 4, seed=11)
        b = kmeans(x, 4, seed=11)
        assert (a.labels == b.labels).all()

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            kmeans(np.zeros((2, 2)), 3)

    def test_no_noise_labels(self):
        x = two_blobs(seed=5)
        got = kmeans(x, 5, seed=5)
        assert (got.labels >= 0).all()
        assert len(np.unique(got.labels)) == 5


class TestPrim:
    def test_matches_scipy_total_weight(self):
        from scipy.sparse.csgraph import minimum_spanning_tree

        rng = np.random.default_rng(6)
        pts = rng.standard_normal((40, 3))
        d = np.sqrt(((pts[:, None] - pts[None, :]) ** 2).sum(-1))
        ours = sum(w for *_, w in _prim_mst(d))
        ref = minimum_spanning_tree(d).sum()
        assert ours == pytest.approx(float(ref), rel=1e-12)


class TestHdbscan:
    def test_blobs_with_outliers(self):
        x = two_blobs(n_per=60, noise=8, seed=7, sep=25.0)
        got = hdbscan(x, min_cluster_size=10)
        assert got.k == 2
        truth = np.array([0] * 60 + [1] * 60 + [-1] * 8)
        assert agree_up_to_relabel(got.labels, truth)

    def test_identical_points_single_cluster(self):
        x = np.ones((30, 4))
        got = hdbscan(x, min_cluster_size=5)
        assert got.k == 1
        assert (got.labels == 0).all()

    def test_min_cluster_size_respected(self):
        rng = np.random.default_rng(8)
        x = np.vstack([
            rng.standard_normal((40, 2)) * 0.3,
            rng.standard_normal((40, 2)) * 0.3 + 8,
            rng.standard_normal((40, 2)) * 0.3 + np.array([8, -8]),
        ])
        got = hdbscan(x, min_cluster_size=12)
        for c in range(got.k):
            assert (got.labels == c).sum() >= 12

    def test_permutation_invariant_up_to_relabel(self):
        x = two_blobs(n_per=40, noise=6, seed=9, sep=20.0)
        base = hdbscan(x, min_cluster_size=8)
        rng = np.random.default_rng(10)
        perm = rng.permutation(len(x))
        permuted = hdbscan(x[perm], min_cluster_size=8)
        assert agree_up_to_relabel(permuted.labels, base.labels[perm])

    def test_three_well_separated_blobs(self):
        rng = np.random.default_rng(11)
        centers = np.array([[0, 0], [30, 0], [0, 30]], dtype=float)
        x = np.vstack([rng.standard_normal((50, 2)) + c for c in centers])
        got = hdbscan(x, min_cluster_size=10)
        assert got.k == 3
        assert got.noise_fraction < 0.1

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            hdbscan(np.zeros((4, 2)), min_cluster_size=5)

    def test_min_samples_default_tracks_mcs(self):
        x = two_blobs(n_per=30, seed=12, sep=15.0)
        a = hdbscan(x, min_cluster_size=10)
        b = hdbscan(x, min_cluster_size=10, min_samples=10)
        assert (a.labels == b.labels).all()

    @pytest.mark.parametrize(
        "builder,mcs",
        [
            ("blobs_noise", 10),
            ("dense_sparse", 12),
            ("many_blobs", 10),
        ],
    )
    def test_agrees_with_sklearn_oracle(self, builder, mcs):
        """Independent oracle: scikit-learn's HDBSCAN on the same data.

        Boundary points may differ (core-distance neighbor conventions
        vary by one), so the check allows a small disagreement margin.
        """
        skc = pytest.importorskip("sklearn.cluster")
        rng = np.random.default_rng(0)
        if builder == "blobs_noise":
            x = np.vstack(
                [rng.standard_normal((80, 3)) * 0.5 + c
                 for c in [(0, 0, 0), (8, 0, 0), (0, 8, 0)]]
                + [rng.uniform(-10, 18, (20, 3))]
            )
        elif builder == "dense_sparse":
            x = np.vstack([
                rng.standard_normal((150, 2)) * 0.3,
                rng.standard_normal((50, 2)) * 1.5 + (10, 0),
                rng.uniform(-5, 15, (15, 2)),
            ])
        else:
            centers = rng.standard_normal((20, 5)) * 3
            x = np.vstack(
                [centers[i] + rng.standard_normal((60, 5)) * 0.4 for i in range(20)]
            )
        ours = hdbscan(x, min_cluster_size=mcs)
        ref = skc.HDBSCAN(min_cluster_size=mcs).fit(x).labels_
        assert ours.k == ref.max() + 1
        assert ((ours.labels == -1) == (ref == -1)).mean() >= 0.98
        # greedy majority relabeling, then near-total agreement
        remap = {}
        for c in range(ours.k):
            mask = ours.labels == c
            vals, counts = np.unique(ref[mask], return_counts=True)
            remap[c] = vals[counts.argmax()]
        relabeled = np.array(
            [remap[l] if l >= 0 else -1 for l in ours.labels]
        )
        assert (relabeled == ref).mean() >= 0.98
