import itertools
import math

import numpy as np
import pytest

from topiceval.divergence import (
    avg_pairwise_divergence,
    cosine_distance,
    hellinger,
    jsd,
    kl,
    unique_word_diversity,
)
from topiceval.errors import InfiniteDivergence, TooFewTopics, TopicTooSmall
from topiceval.topics import Topic, TopicSet, TopicWordDist

from oracles import naive_jsd


def dist(*probs):
    return TopicWordDist(np.array(probs, dtype=np.float64))


def random_dists(rng, n, dim):
    out = []
    for _ in range(n):
        p = rng.random(dim)
        out.append(TopicWordDist(p / p.sum()))
    return out


class TestDistValidation:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            dist(1.2, -0.2)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            dist(0.5, 0.4)


class TestKl:
    def test_self_zero(self):
        p = dist(0.3, 0.7)
        assert kl(p, p) == 0.0

    def test_point_mass_vs_uniform(self):
        assert kl(dist(1.0, 0.0), dist(0.5, 0.5)) == pytest.approx(1.0, abs=1e-12)

    def test_support_violation(self):
        with pytest.raises(InfiniteDivergence):
            kl(dist(0.5, 0.5), dist(1.0, 0.0))

    def test_nonnegative_random(self):
        rng = np.random.default_rng(1)
        for p, q in zip(random_dists(rng, 50, 8), random_dists(rng, 50, 8)):
            assert kl(p, q) >= 0.0


class TestJsd:
    def test_self_zero(self):
        p = dist(0.2, 0.5, 0.3)
        assert jsd(p, p) == 0.0

    def test_disjoint_is_one(self):
        assert jsd(dist(1.0, 0.0), dist(0.0, 1.0)) == 1.0

    def test_derived_value(self):
        assert jsd(dist(0.5, 0.5, 0.0), dist(0.0, 0.5, 0.5)) == pytest.approx(0.5, abs=1e-12)

    def test_symmetric_and_bounded(self):
        rng = np.random.default_rng(2)
        ps = random_dists(rng, 300, 12)
        qs = random_dists(rng, 300, 12)
        for p, q in zip(ps, qs):
            a, b = jsd(p, q), jsd(q, p)
            assert a == pytest.approx(b, abs=1e-12)
            assert 0.0 <= a <= 1.0

    def test_matches_oracle(self):
        rng = np.random.default_rng(3)
        for p, q in zip(random_dists(rng, 40, 6), random_dists(rng, 40, 6)):
            assert jsd(p, q) == pytest.approx(naive_jsd(p.probs, q.probs), abs=1e-12)


class TestHellinger:
    def test_identical_zero(self):
        p = dist(0.4, 0.6)
        assert hellinger(p, p) == 0.0

    def test_disjoint_one(self):
        assert hellinger(dist(0.0, 1.0), dist(1.0, 0.0)) == pytest.approx(1.0, abs=1e-12)

    def test_derived_value(self):
        # frozen from a 50-digit decimal evaluation of (1/sqrt(2))*||sqrt(p)-sqrt(q)||
        assert hellinger(dist(0.5, 0.5), dist(0.9, 0.1)) == pytest.approx(
            0.3249196962329063, abs=1e-12
        )

    def test_triangle_inequality(self):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            p, q, r = random_dists(rng, 3, 7)
            assert hellinger(p, r) <= hellinger(p, q) + hellinger(q, r) + 1e-12


class TestCosine:
    def test_identical_zero(self):
        p = dist(0.25, 0.25, 0.5)
        assert cosine_distance(p, p) == 0.0

    def test_disjoint_one(self):
        assert cosine_distance(dist(1.0, 0.0), dist(0.0, 1.0)) == 1.0

    def test_derived_value(self):
        got = cosine_distance(dist(1.0, 0.0), dist(0.5, 0.5))
        assert got == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-12)

    def test_bounded(self):
        rng = np.random.default_rng(5)
        for p, q in zip(random_dists(rng, 200, 9), random_dists(rng, 200, 9)):
            assert 0.0 <= cosine_distance(p, q) <= 1.0


class TestAverages:
    def test_two_topics_equals_single_pair(self):
        p, q = dist(0.5, 0.5, 0.0), dist(0.0, 0.5, 0.5)
        rep = avg_pairwise_divergence([p, q], "jsd")
        assert rep.average == jsd(p, q)

    def test_identical_topics_zero(self):
        p = dist(0.3, 0.3, 0.4)
        for m in ("jsd", "hellinger", "cosine"):
            assert avg_pairwise_divergence([p, p, p], m).average == pytest.approx(
                0.0, abs=1e-12
            )

    def test_three_pair_mean(self):
        p, q, r = dist(0.5, 0.5, 0.0), dist(0.0, 0.5, 0.5), dist(0.5, 0.0, 0.5)
        rep = avg_pairwise_divergence([p, q, r], "jsd")
        want = (jsd(p, q) + jsd(p, r) + jsd(q, r)) / 3
        assert rep.average == pytest.approx(want, abs=1e-12)

    def test_matrix_shape_and_symmetry(self):
        rng = np.random.default_rng(6)
        dists = random_dists(rng, 5, 10)
        for m in ("jsd", "hellinger", "cosine"):
            rep = avg_pairwise_divergence(dists, m)
            assert rep.pairwise.shape == (5, 5)
            assert np.allclose(rep.pairwise, rep.pairwise.T)
            assert np.all(np.diag(rep.pairwise) == 0.0)
            upper = rep.pairwise[np.triu_indices(5, k=1)]
            assert rep.average == pytest.approx(upper.mean(), abs=1e-12)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(7)
        dists = random_dists(rng, 4, 8)
        base = avg_pairwise_divergence(dists, "hellinger").average
        for perm in itertools.permutations(range(4)):
            got = avg_pairwise_divergence([dists[i] for i in perm], "hellinger").average
            assert got == pytest.approx(base, abs=1e-12)

    def test_too_few(self):
        with pytest.raises(TooFewTopics):
            avg_pairwise_divergence([dist(1.0)], "jsd")


class TestUniqueDiversity:
    def test_disjoint_lists(self):
        ts = TopicSet([Topic((0, 1)), Topic((2, 3))])
        assert unique_word_diversity(ts, n=2) == 1.0

    def test_identical_topics(self):
        ts = TopicSet([Topic((0, 1))] * 4)
        assert unique_word_diversity(ts, n=2) == 0.25

    def test_partial_overlap(self):
        ts = TopicSet([Topic((0, 1)), Topic((1, 2))])
        assert unique_word_diversity(ts, n=2) == 0.75

    def test_too_small_topic(self):
        with pytest.raises(TopicTooSmall):
            unique_word_diversity([Topic((0, 1))], n=3)
