"""Finite-alphabet entropy-gap bounds: examples, dominance, the exact program."""

import math

import numpy as np
import pytest
from scipy.special import xlogy

from entrobound import (
    ApplicabilityError,
    ConstraintError,
    DomainError,
    FiniteDistribution,
    NearUniformSpec,
    bounded_ratio_condition,
    disjoint_support_feasible,
    disjoint_support_gap_argmax,
    disjoint_support_gap_max,
    disjoint_support_gap_upper,
    distance_pair,
    entropy,
    entropy_gap_report,
    envelope_gap_bound,
    feasible_point_value,
    local_gap_bound,
    mutual_information_bound,
    near_uniform_entropy_lower_bound,
    near_uniform_pmf,
    small_ratio_gap_bound,
    binary_entropy,
    tv_gap_bound,
    tv_local_gap_bound,
    tv_local_gap_bound_refined,
)
from entrobound.reference import alternating_pmf, tight_tv_pair

from conftest import random_capped_disjoint_pair, random_pmf


class TestTvGapBound:
    def test_zero_distance(self):
        assert tv_gap_bound(0.0, 5) == 0.0

    def test_tightness_pair(self):
        p_x, p_y = tight_tv_pair(3, 0.4)
        gap = abs(entropy(p_x) - entropy(p_y))
        bound = tv_gap_bound(0.4, 3)
        assert bound == pytest.approx(0.67301166700925644 + 0.4 * math.log(2), abs=1e-12)
        assert gap == pytest.approx(bound, abs=1e-12)

    def test_ceiling_branch(self):
        assert tv_gap_bound(0.9, 3) == pytest.approx(math.log(3.0), abs=1e-15)

    def test_monotone_below_threshold(self):
        for m in (2, 3, 8, 64):
            grid = np.linspace(0.0, 1.0 - 1.0 / m, 200)
            vals = [tv_gap_bound(float(x), m) for x in grid]
            assert np.all(np.diff(vals) >= -1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            tv_gap_bound(0.5, 1)
        with pytest.raises(DomainError):
            tv_gap_bound(1.5, 4)


class TestTvLocalGapBound:
    def test_zero_distance(self):
        assert tv_local_gap_bound(0.0, 0.0, 7) == 0.0

    def test_ratio_one_collapses_to_tv_bound(self, rng):
        for _ in range(50):
            m = int(rng.integers(2, 40))
            d_tv = float(rng.uniform(0.01, 1.0 - 1.0 / m))
            assert tv_local_gap_bound(d_tv, d_tv, m) == pytest.approx(
                tv_gap_bound(d_tv, m), abs=1e-14
            )

    def test_alternating_pmf_value(self):
        # ratio 2/M makes the log argument one: bound = h(beta/2) = 0.562 nats
        alt = alternating_pmf(8, 0.5)
        uni = FiniteDistribution.uniform(range(8))
        pair = distance_pair(alt, uni)
        assert tv_local_gap_bound(pair.d_tv, pair.d_loc, 8) == pytest.approx(
            0.56233514461880835, abs=1e-12
        )

    def test_half_ratio_value(self):
        assert tv_local_gap_bound(0.2, 0.1, 4) == pytest.approx(
            0.50040242353818788, abs=1e-15
        )

    def test_ratio_domain(self):
        with pytest.raises(DomainError):
            tv_local_gap_bound(0.4, 0.02, 4)  # ratio 0.05 < 2/M
        with pytest.raises(DomainError):
            tv_local_gap_bound(0.4, 0.5, 4)  # d_loc > d_tv


class TestRatioCondition:
    def test_identical(self):
        d = FiniteDistribution("ab", [0.3, 0.7])
        assert bounded_ratio_condition(d, d)

    def test_alternating_within_half(self):
        for beta in (0.0, 0.25, 0.5):
            assert bounded_ratio_condition(
                alternating_pmf(8, beta), FiniteDistribution.uniform(range(8))
            )
        assert not bounded_ratio_condition(
            alternating_pmf(8, 0.6), FiniteDistribution.uniform(range(8))
        )

    def test_ratio_three_fails(self):
        p = FiniteDistribution("ab", [0.9, 0.1])
        q = FiniteDistribution("ab", [0.3, 0.7])
        assert not bounded_ratio_condition(p, q)

    def test_one_sided_zero_rejected(self):
        p = FiniteDistribution("abc", [0.5, 0.5, 0.0])
        q = FiniteDistribution("abc", [0.5, 0.4, 0.1])
        assert not bounded_ratio_condition(p, q)


class TestRefinedBound:
    def test_alternating_values(self):
        alt = alternating_pmf(8, 0.5)
        uni = FiniteDistribution.uniform(range(8))
        pair = distance_pair(alt, uni)
        refined = tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, 8)
        assert refined == pytest.approx(
            0.56233514461880835 - 0.5 * math.log(2.0), abs=1e-12
        )
        gap = entropy(uni) - entropy(alt)
        assert gap == pytest.approx(math.log(2.0) - binary_entropy(0.25), abs=1e-12)
        assert gap <= refined

    def test_vanishes_with_beta(self):
        for m_exp in (3, 6):
            m = 2**m_exp
            for beta in (1e-3, 1e-5):
                alt = alternating_pmf(m, beta)
                uni = FiniteDistribution.uniform(range(m))
                pair = distance_pair(alt, uni)
                refined = tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, m)
                assert 0.0 <= refined < 6.0 * beta


class TestDisjointSupportProgram:
    def test_ratio_one(self):
        for m in (2, 5, 9):
            assert disjoint_support_gap_max(1.0, m) == pytest.approx(
                math.log(m - 1), abs=1e-15
            )
            assert disjoint_support_gap_upper(1.0, m) == pytest.approx(
                math.log(m - 1), abs=1e-15
            )

    def test_ratio_floor_even(self):
        for m in (2, 4, 10, 64):
            assert disjoint_support_gap_max(2.0 / m, m) == pytest.approx(0.0, abs=1e-12)

    def test_fractional_point_value(self):
        assert disjoint_support_gap_max(0.4, 5) == pytest.approx(
            -0.36177298742619882, abs=1e-14
        )
        assert disjoint_support_gap_upper(0.4, 5) == 0.0

    def test_upper_equality_iff_integer_inverse(self):
        m = 8
        for k in (2, 3, 4):
            r = 1.0 / k
            assert disjoint_support_gap_max(r, m) == pytest.approx(
                disjoint_support_gap_upper(r, m), abs=1e-12
            )
            for eps in (-1e-3, 1e-3):
                r2 = 1.0 / k + eps
                if r2 < 2.0 / m:
                    continue
                assert disjoint_support_gap_max(r2, m) < disjoint_support_gap_upper(r2, m) - 1e-9

    def test_argmax_attains_closed_form(self):
        for m in (4, 6, 8):
            for ratio in np.linspace(2.0 / m, 1.0, 17):
                ratio = float(ratio)
                if not disjoint_support_feasible(ratio, m):
                    continue
                s, t = disjoint_support_gap_argmax(ratio, m)
                assert feasible_point_value(s, t, ratio) == pytest.approx(
                    disjoint_support_gap_max(ratio, m), abs=1e-12
                )

    def test_infeasible_sliver_detected(self):
        assert not disjoint_support_feasible(0.4, 5)
        s, t = disjoint_support_gap_argmax(0.4, 5)
        with pytest.raises(ConstraintError, match="cap constraint"):
            feasible_point_value(s, t, 0.4)

    def test_random_points_never_beat_closed_form(self, rng):
        for m in (3, 5, 8):
            for ratio in (0.55, 0.8, 1.0):
                if ratio < 2.0 / m or not disjoint_support_feasible(ratio, m):
                    continue
                s, t = random_capped_disjoint_pair(rng, m, ratio, 500)
                obj = -np.sum(xlogy(s, s), axis=1) + np.sum(xlogy(t, t), axis=1)
                assert np.max(obj) <= disjoint_support_gap_max(ratio, m) + 1e-12

    def test_feasible_point_value_names_violations(self):
        with pytest.raises(ConstraintError, match="non-negativity"):
            feasible_point_value([-0.1, 1.1, 0.0], [0.0, 0.0, 1.0], 1.0)
        with pytest.raises(ConstraintError, match="disjoint-support"):
            feasible_point_value([0.5, 0.5, 0.0], [0.5, 0.0, 0.5], 1.0)
        with pytest.raises(ConstraintError, match="sums to"):
            feasible_point_value([0.4, 0.4, 0.0], [0.0, 0.0, 1.0], 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            disjoint_support_gap_max(0.1, 4)
        with pytest.raises(DomainError):
            disjoint_support_gap_max(1.2, 4)


class TestEnvelopeGapBound:
    def test_zero_envelope(self):
        assert envelope_gap_bound(0.0, 0.5, 10) == 0.0

    def test_ratio_one_reduces_to_tv_bound(self):
        assert envelope_gap_bound(0.3, 1.0, 7) == pytest.approx(
            tv_gap_bound(0.3, 7), abs=1e-14
        )

    def test_point_value(self):
        want = 0.1 * math.log(19.0) + 0.32508297339144824
        assert envelope_gap_bound(0.1, 0.2, 100) == pytest.approx(want, abs=1e-14)

    def test_threshold_enforced(self):
        # 1 - 1/(M eps_ratio) = 0.5 here, so 0.6 is out of range
        with pytest.raises(ApplicabilityError):
            envelope_gap_bound(0.6, 0.2, 10)

    def test_domain(self):
        with pytest.raises(DomainError):
            envelope_gap_bound(0.1, 1.5, 10)


class TestSmallRatioGapBound:
    def test_n_one_is_tv_bound(self):
        assert small_ratio_gap_bound(0.3, 9, 1) == pytest.approx(
            tv_gap_bound(0.3, 9), abs=1e-15
        )

    def test_balanced_case(self):
        assert small_ratio_gap_bound(0.25, 8, 4) == pytest.approx(
            0.56233514461880835, abs=1e-15
        )

    def test_matches_two_distance_bound_at_exact_ratio(self, rng):
        for _ in range(50):
            m = int(rng.integers(4, 30))
            n = int(rng.integers(1, m // 2 + 1))
            d_tv = float(rng.uniform(0.05, 0.9))
            d_loc = d_tv / n
            assert small_ratio_gap_bound(d_tv, m, n) == pytest.approx(
                tv_local_gap_bound(d_tv, d_loc, m), abs=1e-12
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            small_ratio_gap_bound(0.2, 8, 5)
        with pytest.raises(DomainError):
            small_ratio_gap_bound(0.2, 8, 0)


class TestLocalGapBound:
    def test_zero(self):
        assert local_gap_bound(0.0, 4) == 0.0

    def test_near_point_mass_dominates_exact_gap(self):
        p = FiniteDistribution("ab", [0.9, 0.1])
        q = FiniteDistribution("ab", [1.0, 0.0])
        bound = local_gap_bound(0.1, 2)
        assert bound == pytest.approx(-2 * 0.1 * math.log(0.1), abs=1e-15)
        assert abs(entropy(p) - entropy(q)) == pytest.approx(
            0.32508297339144824, abs=1e-12
        )
        assert abs(entropy(p) - entropy(q)) <= bound

    def test_boundary_value(self):
        assert local_gap_bound(math.exp(-1.0), 3) == pytest.approx(
            3.0 / math.e, abs=1e-12
        )

    def test_beyond_one_over_e(self):
        with pytest.raises(ApplicabilityError):
            local_gap_bound(0.4, 3)

    def test_dominates_gap_on_filtered_random_pairs(self, rng):
        checked = 0
        while checked < 200:
            m = int(rng.integers(2, 17))
            p, q = random_pmf(rng, m), random_pmf(rng, m, sparse=True)
            pair = distance_pair(p, q)
            if pair.d_loc > math.exp(-1.0):
                continue
            checked += 1
            gap = abs(entropy(p) - entropy(q))
            assert gap <= local_gap_bound(pair.d_loc, m) + 1e-12


class TestEntropyGapReport:
    def test_identical(self):
        d = FiniteDistribution("abc", [0.2, 0.3, 0.5])
        rep = entropy_gap_report(d, d)
        assert rep.exact_gap == 0.0
        assert rep.tv_bound == 0.0 and rep.tv_local_bound == 0.0
        assert rep.ratio is None and rep.ratio_condition_holds

    def test_tightness_case(self):
        p_x, p_y = tight_tv_pair(3, 0.4)
        rep = entropy_gap_report(p_x, p_y)
        assert rep.exact_gap == pytest.approx(rep.tv_bound, abs=1e-12)
        assert rep.tv_local_bound == pytest.approx(rep.tv_bound, abs=1e-12)

    def test_alternating_headline_numbers(self):
        rep = entropy_gap_report(alternating_pmf(8, 0.5), FiniteDistribution.uniform(range(8)))
        assert rep.exact_gap == pytest.approx(0.131, abs=1e-3)
        assert rep.tv_local_bound == pytest.approx(0.562, abs=1e-3)
        assert rep.tv_local_refined == pytest.approx(0.216, abs=1e-3)
        assert rep.ratio_condition_holds

    def test_dominance_on_random_pairs(self, rng):
        for _ in range(500):
            m = int(rng.integers(2, 65))
            p, q = random_pmf(rng, m), random_pmf(rng, m, sparse=bool(rng.integers(2)))
            rep = entropy_gap_report(p, q)
            assert rep.exact_gap <= rep.tv_local_bound + 1e-12
            assert rep.tv_local_bound <= rep.tv_bound + 1e-12
            if rep.ratio_condition_holds:
                assert rep.exact_gap <= rep.tv_local_refined + 1e-12


def random_near_uniform_spec(rng, m):
    signs = np.ones(m, dtype=int)
    signs[rng.permutation(m)[: m // 2]] = -1
    devs = rng.uniform(0.0, 0.95, size=m)
    plus = signs > 0
    # scale the heavier side down so the signed deviations cancel and the
    # per-symbol caps stay intact
    s_plus, s_minus = devs[plus].sum(), devs[~plus].sum()
    if s_plus > s_minus:
        devs[plus] *= 0.0 if s_plus == 0 else s_minus / s_plus
    else:
        devs[~plus] *= 0.0 if s_minus == 0 else s_plus / s_minus
    return NearUniformSpec(signs=tuple(signs), devs=tuple(devs))


class TestNearUniform:
    def test_zero_devs_is_uniform(self):
        spec = NearUniformSpec(signs=(1, -1, 1, -1), devs=(0.0,) * 4)
        assert np.allclose(near_uniform_pmf(spec).probs, 0.25)
        assert near_uniform_entropy_lower_bound(spec) == pytest.approx(math.log(4.0))

    def test_alternating_case(self):
        m, beta = 8, 0.5
        spec = NearUniformSpec(
            signs=tuple((-1) ** i for i in range(1, m + 1)), devs=(beta,) * m
        )
        d = near_uniform_pmf(spec)
        assert np.allclose(d.probs, alternating_pmf(m, beta).probs)
        assert spec.peak_ratio == pytest.approx(1.0)
        assert near_uniform_entropy_lower_bound(spec) == pytest.approx(
            math.log(m) - binary_entropy(beta / 2.0), abs=1e-14
        )

    def test_mixed_spec_constraint_arithmetic(self):
        spec = NearUniformSpec(signs=(1, -1, 1, -1), devs=(0.2, 0.4, 0.2, 0.0))
        d = near_uniform_pmf(spec)
        assert np.allclose(d.probs, np.array([1.2, 0.6, 1.2, 1.0]) / 4.0)

    def test_constraint_errors(self):
        with pytest.raises(ConstraintError, match="cancel"):
            NearUniformSpec(signs=(1, 1, -1, -1), devs=(0.5, 0.2, 0.1, 0.1))
        with pytest.raises(ConstraintError, match="even"):
            NearUniformSpec(signs=(1, -1, 1), devs=(0.1, 0.1, 0.0))
        with pytest.raises(ConstraintError, match="sign"):
            NearUniformSpec(signs=(1, 0, 1, -1), devs=(0.0,) * 4)

    def test_lower_bound_holds_on_random_specs(self, rng):
        for _ in range(200):
            m = 2 * int(rng.integers(1, 17))
            spec = random_near_uniform_spec(rng, m)
            bound = near_uniform_entropy_lower_bound(spec)
            assert bound <= entropy(near_uniform_pmf(spec)) + 1e-10


class TestMutualInformationBound:
    @staticmethod
    def _joint_from_matrix(mat):
        mx, my = mat.shape
        symbols = [(i, j) for i in range(mx) for j in range(my)]
        return FiniteDistribution(symbols, mat.reshape(-1))

    @staticmethod
    def _exact_mi(mat):
        px = mat.sum(axis=1, keepdims=True)
        py = mat.sum(axis=0, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(mat > 0, mat * np.log(mat / (px * py)), 0.0)
        return float(terms.sum())

    def test_independent_joint(self):
        # dyadic marginals make the product exact in binary: bound is 0.0
        mat = np.outer([0.25, 0.75], [0.5, 0.5])
        assert mutual_information_bound(self._joint_from_matrix(mat), (2, 2)) == 0.0
        # non-dyadic products differ by one ulp; the bound stays at dust scale
        mat = np.outer([0.3, 0.7], [0.6, 0.4])
        assert mutual_information_bound(self._joint_from_matrix(mat), (2, 2)) < 1e-14

    def test_correlated_uniform(self):
        mat = np.array([[0.5, 0.0], [0.0, 0.5]])
        bound = mutual_information_bound(self._joint_from_matrix(mat), (2, 2))
        assert bound >= math.log(2.0) - 1e-12

    def test_dominates_exact_mi_on_random_joints(self, rng):
        for _ in range(100):
            mat = rng.gamma(1.0, size=(3, 3))
            mat /= mat.sum()
            joint = self._joint_from_matrix(mat)
            assert mutual_information_bound(joint, (3, 3)) >= self._exact_mi(mat) - 1e-10

    def test_malformed_grid(self):
        bad = FiniteDistribution([(0, 0), (0, 1), (1, 0), (2, 2)], [0.25] * 4)
        with pytest.raises(DomainError):
            mutual_information_bound(bad, (2, 2))
