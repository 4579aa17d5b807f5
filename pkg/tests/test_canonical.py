"""Deformed-exponential distributions and the unique affine log form."""

import math

import numpy as np
import pytest

from qdeform import (
    DomainViolation,
    build_distribution,
    canonical_form,
    q_exp,
    q_log,
    split_representation,
    verify_uniqueness,
)


class TestBuildDistribution:
    def test_two_point_hand_case(self):
        # exp_2(-x) = 1/(1+x): frequencies (1, 1/2), probabilities (2/3, 1/3)
        dist = build_distribution(2.0, [0.0, 1.0], 0.0)
        assert dist.frequencies == pytest.approx((1.0, 0.5), rel=1e-15)
        assert dist.total == pytest.approx(1.5, rel=1e-15)
        assert dist.probabilities == pytest.approx((2.0 / 3.0, 1.0 / 3.0),
                                                   rel=1e-15)

    def test_classical_shift_cancels(self):
        xs = [0.0, 0.7, 2.1]
        a = build_distribution(1.0, xs, 0.0).probabilities
        b = build_distribution(1.0, xs, 5.0).probabilities
        assert a == pytest.approx(b, rel=1e-13)

    def test_single_point(self):
        dist = build_distribution(1.5, [4.2], -1.0)
        assert dist.probabilities == (1.0,)

    def test_domain_error_names_point(self):
        # q=1.5: bracket 1 - 0.5*(-x + c) fails for -x + c >= 2
        with pytest.raises(DomainViolation) as err:
            build_distribution(1.5, [0.0, -3.0], 0.0)
        assert err.value.index == 1

    def test_frequencies_always_positive(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            q = float(rng.uniform(0.3, 2.5))
            xs = rng.uniform(-0.8, 0.8, size=5)
            try:
                dist = build_distribution(q, xs, float(rng.uniform(-0.5, 1.0)))
            except DomainViolation:
                continue
            assert all(f > 0.0 for f in dist.frequencies)


class TestSplitRepresentation:
    def test_zero_split_reproduces_base(self):
        p_a, p_b = split_representation(2.0, [0.0, 1.0], 0.0, 0.0)
        assert p_a == pytest.approx((2.0 / 3.0, 1.0 / 3.0), rel=1e-14)
        assert p_b == pytest.approx((2.0 / 3.0, 1.0 / 3.0), rel=1e-14)

    def test_different_splits_same_probabilities(self):
        xs = [0.0, 1.0, 2.0]
        first = split_representation(1.5, xs, 0.3, 0.7)
        second = split_representation(1.5, xs, 0.9, 0.1)
        ref = build_distribution(1.5, xs, 1.0).probabilities
        for p in (*first, *second):
            assert p == pytest.approx(ref, rel=1e-12)

    def test_classical_split(self):
        xs = [0.0, 0.5, 1.5]
        ref = build_distribution(1.0, xs, 1.0).probabilities
        for p in split_representation(1.0, xs, 0.25, 0.75):
            assert p == pytest.approx(ref, rel=1e-13)


class TestCanonicalForm:
    def test_two_point_hand_case(self):
        # n = 3/2: slope -3/2, intercept -(log_0(3/2)) = -1/2, and the
        # affine form reproduces log_2 of both probabilities exactly
        dist = build_distribution(2.0, [0.0, 1.0], 0.0)
        form = canonical_form(dist)
        assert form.slope == pytest.approx(-1.5, abs=1e-14)
        assert form.intercept == pytest.approx(-0.5, abs=1e-14)
        assert q_log(2.0, dist.probabilities[0]) == pytest.approx(-0.5, abs=1e-14)
        assert q_log(2.0, dist.probabilities[1]) == pytest.approx(-2.0, abs=1e-14)

    def test_classical_softmax_form(self):
        xs = [0.0, 1.0, 3.0]
        dist = build_distribution(1.0, xs, 0.8)
        form = canonical_form(dist)
        assert form.slope == -1.0
        assert form.intercept == pytest.approx(0.8 - math.log(dist.total),
                                               rel=1e-13)

    def test_affine_form_matches_direct_qlog(self):
        # the printed closed form must agree with log_q(p_i) computed
        # directly, not just reproduce p_i through exp_q
        rng = np.random.default_rng(41)
        for q in (0.5, 1.3, 1.5, 2.0):
            # keep -x + 0.5 inside every index's domain (needs < 1 at q = 2)
            xs = rng.uniform(-0.45, 0.8, size=6)
            dist = build_distribution(q, xs, 0.5)
            form = canonical_form(dist)
            for x, p in zip(dist.xs, dist.probabilities):
                assert form.slope * x + form.intercept == pytest.approx(
                    q_log(q, p), abs=1e-12)

    def test_reconstruction(self):
        rng = np.random.default_rng(43)
        for q in (0.5, 1.0, 1.5, 2.0):
            xs = rng.uniform(-0.55, 0.9, size=8)
            dist = build_distribution(q, xs, 0.4)
            form = canonical_form(dist)
            for x, p in zip(dist.xs, dist.probabilities):
                assert form.reconstruct(x) == pytest.approx(p, rel=1e-10)

    def test_split_invariant(self):
        xs = [0.0, 1.0, 2.0]
        form = canonical_form(build_distribution(1.5, xs, 1.0))
        # any split of the same total shift yields the same affine form
        # because it depends only on (q, total frequency, total shift)
        again = canonical_form(build_distribution(1.5, xs, 1.0))
        assert (form.slope, form.intercept) == (again.slope, again.intercept)


class TestVerifyUniqueness:
    def test_deformed_case(self):
        rng = np.random.default_rng(47)
        xs = rng.uniform(-0.9, 1.1, size=10)
        report = verify_uniqueness(1.5, xs, 1.0, n_splits=100, seed=7)
        assert report.rejected == 0
        assert report.max_probability_deviation < 1e-12
        assert report.distinct_parameterizations == 100
        assert report.canonical_bit_stable

    def test_classical_collapse(self):
        rng = np.random.default_rng(53)
        xs = rng.uniform(-1.0, 1.0, size=6)
        report = verify_uniqueness(1.0, xs, 1.0, n_splits=50, seed=3)
        assert report.distinct_parameterizations == 1
        assert report.max_probability_deviation < 1e-12

    def test_single_split(self):
        report = verify_uniqueness(1.5, [0.0, 1.0], 1.0, n_splits=1, seed=1)
        assert report.n_splits == 1
        assert report.distinct_parameterizations == 1
        assert report.canonical_bit_stable

    def test_deterministic_given_seed(self):
        xs = [0.0, 0.5, 1.0]
        a = verify_uniqueness(1.5, xs, 1.0, n_splits=20, seed=11)
        b = verify_uniqueness(1.5, xs, 1.0, n_splits=20, seed=11)
        assert a == b
