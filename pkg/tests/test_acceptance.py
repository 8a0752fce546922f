"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Every tolerance is pinned here; nothing is deferred to calibration.
"""

import math

import numpy as np
import pytest
from scipy.special import xlogy

import entrobound as eb
from entrobound import cli
from entrobound.reference import alternating_pmf, tight_tv_pair

from conftest import random_capped_disjoint_pair, random_pmf

SEED = 987654321


def _report(criterion, detail):
    print(f"PASS criterion {criterion}: {detail}")


def test_criterion_1_full_scale_poisson_approximation():
    rep = eb.poisson_binomial_gap_bounds(10**6, 0.1)
    assert abs(rep.envelope.tv_upper - 0.1) < 1e-15
    assert rep.envelope.tv_lower == pytest.approx(9.5e-3, abs=0.05e-3)
    assert rep.envelope.loc_upper == pytest.approx(1.0e-3, abs=0.05e-3)
    assert rep.trunc_size == 10**6 + 2
    assert rep.trunc_size_tv_only == 10**6 + 2
    assert rep.tail_entropy == 0.0
    assert rep.tail_entropy_log_bound < -1.4e6  # underflow certificate
    assert rep.two_distance_bound == pytest.approx(1.483, abs=0.002)
    assert rep.tv_only_bound == pytest.approx(1.707, abs=0.002)
    assert rep.poisson_entropy_nats == pytest.approx(7.175, abs=0.001)
    _report(1, "n=1e6, p=0.1 gap bounds 1.483/1.707 nats, H(Poisson(1e5))=7.175")


def test_criterion_2_second_scale_poisson_approximation():
    rep = eb.poisson_binomial_gap_bounds(10**6, 0.01)
    assert rep.two_distance_bound == pytest.approx(0.183, abs=0.002)
    assert rep.tv_only_bound == pytest.approx(0.194, abs=0.002)
    assert rep.poisson_entropy_nats == pytest.approx(6.024, abs=0.001)
    _report(2, "n=1e6, p=0.01 gap bounds 0.183/0.194 nats, H(Poisson(1e4))=6.024")


def test_criterion_3_alternating_pmf_bounds_independent_of_size():
    gaps, bounds, refined = [], [], []
    for m_exp in range(3, 21):
        m = 2**m_exp
        alt = alternating_pmf(m, 0.5)
        uni = eb.FiniteDistribution.uniform(range(m))
        pair = eb.distance_pair(alt, uni)
        gaps.append(eb.entropy(uni) - eb.entropy(alt))
        bounds.append(eb.tv_local_gap_bound(pair.d_tv, pair.d_loc, m))
        refined.append(eb.tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, m))
        assert eb.bounded_ratio_condition(alt, uni)
    assert gaps[0] == pytest.approx(0.131, abs=0.001)
    assert bounds[0] == pytest.approx(0.562, abs=0.001)
    assert refined[0] == pytest.approx(0.216, abs=0.001)
    for seq in (gaps, bounds, refined):
        assert max(seq) - min(seq) < 1e-10
    _report(3, "gap 0.131, bounds 0.562/0.216 nats, constant over m=3..20")


def test_criterion_4_tv_bound_tightness():
    for m in range(2, 11):
        for eps in np.linspace(0.0, 1.0 - 1.0 / m, 23):
            eps = float(eps)
            p_x, p_y = tight_tv_pair(m, eps)
            gap = abs(eb.entropy(p_x) - eb.entropy(p_y))
            assert eb.total_variation(p_x, p_y) == pytest.approx(eps, abs=1e-14)
            assert gap == pytest.approx(eb.tv_gap_bound(eps, m), abs=1e-12)
        for eps in np.linspace(1.0 - 1.0 / m + 1e-9, 1.0, 7):
            assert eb.tv_gap_bound(float(eps), m) == pytest.approx(math.log(m), abs=1e-14)
        uniform_gap = abs(
            eb.entropy(eb.FiniteDistribution.uniform(range(m)))
            - eb.entropy(eb.FiniteDistribution.point_mass(range(m), 0))
        )
        assert uniform_gap == pytest.approx(math.log(m), abs=1e-12)
    _report(4, "near-point-mass pairs attain the bound to 1e-12; ceiling log M attained")


def test_criterion_5_disjoint_support_program_oracle():
    rng = np.random.default_rng(SEED)
    checked_points = 0
    for m in range(2, 9):
        for ratio in np.linspace(2.0 / m, 1.0, 50):
            ratio = float(ratio)
            g = eb.disjoint_support_gap_max(ratio, m)
            upper = eb.disjoint_support_gap_upper(ratio, m)
            s, t = eb.disjoint_support_gap_argmax(ratio, m)
            if eb.disjoint_support_feasible(ratio, m):
                assert eb.feasible_point_value(s, t, ratio) == pytest.approx(g, abs=1e-12)
                samples = random_capped_disjoint_pair(rng, m, ratio, 10_000)
                obj = (-np.sum(xlogy(samples[0], samples[0]), axis=1)
                       + np.sum(xlogy(samples[1], samples[1]), axis=1))
                assert np.max(obj) <= g + 1e-12
                checked_points += obj.shape[0]
            else:
                # infeasible sliver (odd M just above 2/M): the construction
                # still evaluates to the closed form
                val = float(-np.sum(xlogy(s, s)) + np.sum(xlogy(t, t)))
                assert val == pytest.approx(g, abs=1e-12)
            inv = 1.0 / ratio
            if abs(inv - round(inv)) < 1e-9:
                assert g == pytest.approx(upper, abs=1e-12)
            else:
                assert g < upper + 1e-12
    assert checked_points >= 10_000 * 40
    _report(5, "closed form = attaining point, dominates 1e4 random points per grid node")


def test_criterion_6_coupling_correctness():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(1000):
        m = int(rng.integers(2, 65))
        p, q = random_pmf(rng, m), random_pmf(rng, m, sparse=bool(rng.integers(2)))
        parts = eb.build_maximal_coupling(p, q)
        if parts.is_degenerate:
            continue
        pa = np.array([p.prob(s) for s in parts.symbols])
        qa = np.array([q.prob(s) for s in parts.symbols])
        u = parts.u_dist.probs if parts.u_dist is not None else 0.0
        assert np.max(np.abs(parts.p * u + (1 - parts.p) * parts.v_dist.probs - pa)) < 1e-12
        assert np.max(np.abs(parts.p * u + (1 - parts.p) * parts.w_dist.probs - qa)) < 1e-12
    n = 10**6
    for trial in range(20):
        m = int(rng.integers(2, 65))
        p, q = random_pmf(rng, m), random_pmf(rng, m)
        parts = eb.build_maximal_coupling(p, q)
        x_idx, y_idx = eb.sample_coupling_many(parts, n, np.random.default_rng(SEED + 2 + trial))
        frac = float(np.mean(x_idx == y_idx))
        sigma = math.sqrt(max(parts.p * (1 - parts.p), 1e-12) / n)
        assert abs(frac - parts.p) <= 3 * sigma
    _report(6, "reconstruction to 1e-12 on 1e3 pairs; equal fraction within 3 sigma on 20x1e6 samples")


def test_criterion_7_dominance_suite():
    rng = np.random.default_rng(SEED + 100)
    n_refined = n_local = 0
    for _ in range(10_000):
        m = int(rng.integers(2, 65))
        p, q = random_pmf(rng, m), random_pmf(rng, m, sparse=bool(rng.integers(2)))
        gap = abs(eb.entropy(p) - eb.entropy(q))
        pair = eb.distance_pair(p, q)
        tv_bound = eb.tv_gap_bound(pair.d_tv, m)
        two = eb.tv_local_gap_bound(pair.d_tv, pair.d_loc, m)
        assert gap <= two + 1e-12
        assert two <= tv_bound + 1e-12
        if eb.bounded_ratio_condition(p, q):
            refined = eb.tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, m)
            assert gap <= refined + 1e-12
            assert refined <= two + 1e-12
            n_refined += 1
        if pair.d_loc <= math.exp(-1.0):
            assert gap <= eb.local_gap_bound(pair.d_loc, m) + 1e-12
            n_local += 1
    assert n_local > 1000
    _report(7, f"gap <= two-distance <= one-distance on 1e4 pairs "
               f"({n_refined} refined, {n_local} local-bound checks)")


def test_criterion_8_stein_sandwich_desk_scale():
    import time

    start = time.time()
    rng = np.random.default_rng(SEED + 200)
    n_local_checked = 0
    for _ in range(200):
        n = int(rng.integers(20, 2001))
        style = rng.integers(3)
        if style == 0:
            ps = np.full(n, float(rng.uniform(0.001, 0.05)))
        elif style == 1:
            ps = rng.uniform(0.0, 0.1, size=n)
        else:
            ps = rng.uniform(0.0, 1.0, size=n) * rng.uniform(0.0, 0.05)
        if ps.sum() <= 0:
            ps[0] = 0.01
        diag = eb.stein_envelope_vs_exact(n, ps)
        assert diag.tv_sandwich_ok, diag.messages
        if diag.local_ok is not None:
            assert diag.local_ok, diag.messages
            n_local_checked += 1
    elapsed = time.time() - start
    assert elapsed < 120.0
    assert n_local_checked > 150
    _report(8, f"envelope sandwich on 200 configurations in {elapsed:.1f}s")


def test_criterion_9_tail_bound_dominance_and_asymptotics():
    import scipy.stats

    for lam in (1.0, 5.0, 20.0, 50.0):
        pc = eb.PoissonCountable(eb.PoissonLaw(lam))
        for m in range(int(lam) + 1, int(10 * lam) + 2, max(1, int(lam) // 3)):
            true_tail = float(scipy.stats.poisson.sf(m - 1, lam))
            assert eb.poisson_tail_chernoff(lam, m) >= true_tail * (1 - 1e-12)
        m_lo = int(math.floor(lam * math.e)) + 4
        for m in range(m_lo, int(10 * lam) + 5, max(1, int(lam) // 2)):
            oracle = eb.tail_entropy_oracle(pc, m, 1e-30)
            assert eb.poisson_tail_entropy_bound(lam, m) >= oracle
    for lam in (1e4, 1e5, 1e6):
        env = eb.stein_envelope(lam, 1.0)
        scaled = (env.loc_upper / env.tv_lower) * math.sqrt(lam)
        assert 20.0 <= scaled <= 40.0
    _report(9, "Chernoff tail and tail-entropy bounds dominate oracles; "
               "ratio*sqrt(lam) in [20, 40]")


def test_criterion_10_cli_determinism(tmp_path, capsys):
    code = cli.main(["reproduce"])
    captured = capsys.readouterr()
    assert code == 0
    first = captured.out

    code = cli.main(["reproduce"])
    captured = capsys.readouterr()
    assert code == 0 and captured.out == first

    a = tmp_path / "a.tsv"
    b = tmp_path / "b.tsv"
    a.write_text("x\t0.7\ny\t0.2\nz\t0.1\n")
    b.write_text("x\t0.3\ny\t0.3\nz\t0.4\n")
    argv = ["coupling", "--pmf-a", str(a), "--pmf-b", str(b),
            "--samples", "100000", "--seed", "77"]
    outs = []
    for _ in range(2):
        assert cli.main(argv) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    _report(10, "reproduce exits 0; seeded reruns byte-identical")
