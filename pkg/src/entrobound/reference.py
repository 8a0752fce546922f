"""Frozen numeric reference cases with their published/analytic targets.

Each case recomputes one headline number of the library (a distance, a bound,
an entropy, a truncation index) and compares it against its frozen target at
a stated tolerance. ``run_reference_cases`` drives them all; the CLI's
``reproduce`` subcommand reports one pass/fail line per case and exits 0 iff
everything passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coupling, distances, finite_bounds, poisson_stein
from .core_dist import (
    BinomialLaw,
    FiniteDistribution,
    PoissonLaw,
    bernoulli_sum_pmf,
    binary_entropy,
    binomial_entropy,
    entropy,
    poisson_entropy,
    relative_entropy,
)
from .countable_bounds import (
    TruncationBoundInputs,
    truncate_countable,
    truncation_gap_bound,
    truncation_gap_bound_tv_only,
)
from .errors import ValidationError
from .poisson_stein import PoissonCountable


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    description: str
    expected: float
    actual: float
    tol: float
    passed: bool


def _case(case_id, description, expected, actual, tol) -> CaseResult:
    return CaseResult(
        case_id=case_id,
        description=description,
        expected=float(expected),
        actual=float(actual),
        tol=float(tol),
        passed=bool(abs(float(actual) - float(expected)) <= float(tol)),
    )


def alternating_pmf(m: int, beta: float) -> FiniteDistribution:
    """(1 -/+ beta)/M alternating around uniform; the canonical near-uniform case."""
    probs = np.full(m, 1.0 / m)
    probs[0::2] *= 1.0 - beta
    probs[1::2] *= 1.0 + beta
    return FiniteDistribution(range(m), probs)


def tight_tv_pair(m: int, eps: float):
    """The pair attaining the one-distance bound: near-point-mass vs point-mass."""
    probs = np.full(m, eps / (m - 1))
    probs[0] = 1.0 - eps
    p_x = FiniteDistribution(range(m), probs)
    p_y = FiniteDistribution.point_mass(range(m), 0)
    return p_x, p_y


def _cases() -> list[CaseResult]:
    out = []

    # Near-uniform alternating pmf on M = 8 with beta = 1/2: all the headline
    # finite-alphabet numbers live here.
    m, beta = 8, 0.5
    alt = alternating_pmf(m, beta)
    uni = FiniteDistribution.uniform(range(m))
    pair = distances.distance_pair(alt, uni)
    out.append(_case(
        "alt-entropy", "entropy of the alternating pmf equals 2 log 2 + h(1/4)",
        2.0 * math.log(2.0) + binary_entropy(0.25), entropy(alt), 1e-12))
    out.append(_case(
        "alt-d-loc", "local distance between alternating and uniform is beta/M",
        beta / m, pair.d_loc, 1e-15))
    out.append(_case(
        "alt-d-tv", "total variation between alternating and uniform is beta/2",
        beta / 2.0, pair.d_tv, 1e-15))
    out.append(_case(
        "alt-ratio", "distance ratio for the alternating pmf is 2/M",
        2.0 / m, pair.alpha, 1e-15))
    out.append(_case(
        "alt-gap", "exact entropy gap log 2 - h(1/4) = 0.131 nats",
        0.131, entropy(uni) - entropy(alt), 1e-3))
    out.append(_case(
        "alt-two-distance-bound", "two-distance bound h(beta/2) = 0.562 nats",
        0.562, finite_bounds.tv_local_gap_bound(pair.d_tv, pair.d_loc, m), 1e-3))
    out.append(_case(
        "alt-refined-bound", "refined bound h(beta/2) - beta log 2 = 0.216 nats",
        0.216, finite_bounds.tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, m), 1e-3))
    out.append(_case(
        "alt-ratio-condition", "alternating/uniform pmfs are within a factor 2",
        1.0, float(finite_bounds.bounded_ratio_condition(alt, uni)), 0.0))
    out.append(_case(
        "alt-equal-probability", "maximal coupling equal-probability 1 - beta/2",
        1.0 - beta / 2.0,
        coupling.coupling_equal_probability(coupling.build_maximal_coupling(alt, uni)),
        1e-12))
    parts = coupling.build_maximal_coupling(alt, uni)
    out.append(_case(
        "alt-map-estimate", "factor-2 closeness forces the MAP mixing-bit estimate to 1",
        1.0,
        float(min(coupling.map_estimator_j(parts, alt, uni, s) for s in alt.symbols)),
        0.0))
    out.append(_case(
        "alt-lower-bound", "near-uniform entropy lower bound log M - h(beta/2)",
        math.log(m) - binary_entropy(beta / 2.0),
        finite_bounds.near_uniform_entropy_lower_bound(
            finite_bounds.NearUniformSpec(signs=tuple((-1) ** i for i in range(1, m + 1)),
                                          devs=(beta,) * m)),
        1e-12))
    out.append(_case(
        "alt-divergence-identity",
        "against uniform, the gap equals the relative entropy exactly",
        entropy(uni) - entropy(alt), relative_entropy(alt, uni), 1e-12))

    # Tightness of the one-distance bound: both regimes.
    p_x, p_y = tight_tv_pair(3, 0.4)
    pr = distances.distance_pair(p_x, p_y)
    out.append(_case(
        "tight-d-tv", "near-point-mass pair has d_tv = eps", 0.4, pr.d_tv, 1e-15))
    out.append(_case(
        "tight-gap-equals-bound",
        "one-distance bound h(eps) + eps log(M-1) is attained",
        finite_bounds.tv_gap_bound(pr.d_tv, 3),
        abs(entropy(p_x) - entropy(p_y)), 1e-12))
    out.append(_case(
        "tight-ceiling", "beyond the monotone range the bound is log M",
        math.log(3.0), finite_bounds.tv_gap_bound(0.9, 3), 1e-15))
    out.append(_case(
        "tight-ceiling-attained", "uniform vs point mass attains log M",
        math.log(3.0),
        abs(entropy(FiniteDistribution.uniform(range(3)))
            - entropy(FiniteDistribution.point_mass(range(3), 0))),
        1e-12))

    # The disjoint-support program: closed form vs attaining points.
    for ratio, m_g, cid in ((0.5, 4, "gap-max-integer"), (0.3, 8, "gap-max-fractional")):
        s, t = finite_bounds.disjoint_support_gap_argmax(ratio, m_g)
        out.append(_case(
            cid, f"closed form matches its attaining point at ratio={ratio}, M={m_g}",
            finite_bounds.disjoint_support_gap_max(ratio, m_g),
            finite_bounds.feasible_point_value(s, t, ratio), 1e-12))
    out.append(_case(
        "gap-max-upper-at-integer",
        "at integer 1/ratio the closed form equals log(M ratio - 1)",
        finite_bounds.disjoint_support_gap_upper(0.5, 4),
        finite_bounds.disjoint_support_gap_max(0.5, 4), 1e-15))

    # Poisson entropies at the two headline means.
    out.append(_case(
        "poisson-entropy-1e5", "H(Poisson(1e5)) = 7.175 nats",
        7.175, poisson_entropy(PoissonLaw(1e5)), 1e-3))
    out.append(_case(
        "poisson-entropy-1e4", "H(Poisson(1e4)) = 6.024 nats",
        6.024, poisson_entropy(PoissonLaw(1e4)), 1e-3))

    # Binomial entropy brackets for n = 1e6, p = 0.1.
    h_bin = binomial_entropy(BinomialLaw(10**6, 0.1))
    out.append(_case(
        "binomial-entropy-bracket", "H(Binomial(1e6, 0.1)) lies in [5.693, 7.175]",
        1.0, float(5.693 - 1e-3 <= h_bin <= 7.175 + 1e-3), 0.0))

    # Stein envelopes and gap bounds, full scale.
    rep = poisson_stein.poisson_binomial_gap_bounds(10**6, 0.1)
    out.append(_case(
        "stein-tv-upper-1e5", "TV upper envelope 0.1 for n=1e6, p=0.1",
        0.1, rep.envelope.tv_upper, 1e-15))
    out.append(_case(
        "stein-tv-lower-1e5", "TV lower envelope 9.5e-3",
        9.5e-3, rep.envelope.tv_lower, 5e-5))
    out.append(_case(
        "stein-loc-upper-1e5", "local envelope 1.0e-3",
        1.0e-3, rep.envelope.loc_upper, 5e-5))
    out.append(_case(
        "trunc-size-1e5", "truncation index 1e6 + 2",
        1_000_002.0, float(rep.trunc_size), 0.0))
    out.append(_case(
        "trunc-size-tv-only-1e5", "TV-only truncation index 1e6 + 2",
        1_000_002.0, float(rep.trunc_size_tv_only), 0.0))
    out.append(_case(
        "tail-entropy-underflow-1e5",
        "tail-entropy bound underflows to 0 with certificate exponent < -1.4e6",
        1.0,
        float(rep.tail_entropy == 0.0 and rep.tail_entropy_log_bound < -1.4e6),
        0.0))
    out.append(_case(
        "gap-bound-1e5", "two-distance gap bound 1.483 nats",
        1.483, rep.two_distance_bound, 2e-3))
    out.append(_case(
        "gap-bound-tv-only-1e5", "TV-only gap bound 1.707 nats",
        1.707, rep.tv_only_bound, 2e-3))

    rep2 = poisson_stein.poisson_binomial_gap_bounds(10**6, 0.01)
    out.append(_case(
        "gap-bound-1e4", "two-distance gap bound 0.183 nats at p = 0.01",
        0.183, rep2.two_distance_bound, 2e-3))
    out.append(_case(
        "gap-bound-tv-only-1e4", "TV-only gap bound 0.194 nats at p = 0.01",
        0.194, rep2.tv_only_bound, 2e-3))

    # Truncated bound evaluated straight from the published envelope values.
    inputs = TruncationBoundInputs(
        support_size=10**6 + 1, trunc_size=10**6 + 2,
        tv_upper=0.1, tv_lower=9.5e-3, loc_upper=1.0e-3, tail_entropy=0.0)
    out.append(_case(
        "truncated-bound-published-inputs",
        "truncated bound at the published envelope values is 1.483 nats",
        1.483, truncation_gap_bound(inputs), 2e-3))
    out.append(_case(
        "tv-only-bound-published-inputs",
        "TV-only truncated bound at the published values is 1.707 nats",
        1.707, truncation_gap_bound_tv_only(0.1, 0.0, 10**6 + 1)[1], 2e-3))

    # Distance-ratio asymptote constant.
    out.append(_case(
        "ratio-asymptote-constant", "asymptote constant is about 33.634",
        33.634, poisson_stein.stein_ratio_asymptote(1.0), 1e-3))

    # Truncation preserves total variation when X is supported below the cut.
    x = bernoulli_sum_pmf([0.2] * 20)
    y_small = truncate_countable(PoissonCountable(PoissonLaw(4.0)), 30)
    y_large = truncate_countable(PoissonCountable(PoissonLaw(4.0)), 300)
    out.append(_case(
        "truncation-preserves-tv",
        "d_tv is unchanged by pushing the truncation index out",
        distances.total_variation(x, y_small),
        distances.total_variation(x, y_large), 1e-12))

    return out


def run_reference_cases(case_ids=None) -> list[CaseResult]:
    """Run all (or the selected) reference cases and return their results."""
    results = _cases()
    if case_ids:
        wanted = set(case_ids)
        known = {r.case_id for r in results}
        missing = wanted - known
        if missing:
            raise ValidationError(f"unknown case ids: {sorted(missing)}")
        results = [r for r in results if r.case_id in wanted]
    return results
