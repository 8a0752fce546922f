"""How much can two entropies differ, given how close the pmfs are?

Walks the finite-alphabet bounds on |H(X) - H(Y)|: the classical bound from
total variation alone, the sharper one that also uses the local (l-infinity)
distance, and the factor-2 refinement. The acid test is a near-uniform pmf on
M = 2^m symbols, where the one-distance bound grows linearly in m although
the true gap is constant.
"""

import math

import numpy as np

import entrobound as eb

m_exp, beta = 3, 0.5
M = 2**m_exp

probs = np.full(M, 1.0 / M)
probs[0::2] *= 1.0 - beta
probs[1::2] *= 1.0 + beta
alternating = eb.FiniteDistribution(range(M), probs)
uniform = eb.FiniteDistribution.uniform(range(M))

pair = eb.distance_pair(alternating, uniform)
print(f"alternating pmf on M = {M} symbols, beta = {beta}")
print(f"  d_loc = {pair.d_loc:.6f}   (= beta/M)")
print(f"  d_tv  = {pair.d_tv:.6f}   (= beta/2)")
print(f"  ratio = {pair.alpha:.6f}   (= 2/M, the smallest possible)")

gap = eb.entropy(uniform) - eb.entropy(alternating)
print(f"\nexact entropy gap: {gap:.6f} nats (log 2 - h((1-beta)/2))")

report = eb.entropy_gap_report(alternating, uniform)
print(f"one-distance bound:      {report.tv_bound:.6f} nats")
print(f"two-distance bound:      {report.tv_local_bound:.6f} nats")
print(f"refined (factor-2) bound: {report.tv_local_refined:.6f} nats")

# The two-distance bound is h(beta/2), independent of m; the one-distance
# bound keeps growing with the alphabet.
print("\nscaling in m (same beta):")
print(f"  {'m':>3} {'gap':>10} {'tv-only':>10} {'tv+local':>10} {'refined':>10}")
for m_e in (3, 6, 10, 16, 20):
    mm = 2**m_e
    pr = np.full(mm, 1.0 / mm)
    pr[0::2] *= 1.0 - beta
    pr[1::2] *= 1.0 + beta
    alt = eb.FiniteDistribution(range(mm), pr)
    uni = eb.FiniteDistribution.uniform(range(mm))
    rep = eb.entropy_gap_report(alt, uni)
    print(f"  {m_e:>3} {rep.exact_gap:>10.6f} {rep.tv_bound:>10.6f}"
          f" {rep.tv_local_bound:>10.6f} {rep.tv_local_refined:>10.6f}")

# Where the one-distance bound is unimprovable: a near-point-mass pair.
eps, M3 = 0.4, 3
spread = np.full(M3, eps / (M3 - 1))
spread[0] = 1.0 - eps
p_x = eb.FiniteDistribution(range(M3), spread)
p_y = eb.FiniteDistribution.point_mass(range(M3), 0)
print(f"\ntightness pair (M = {M3}, eps = {eps}):")
print(f"  exact gap  = {abs(eb.entropy(p_x) - eb.entropy(p_y)):.12f}")
print(f"  tv bound   = {eb.tv_gap_bound(eps, M3):.12f}   (equal)")
print(f"  ceiling at d_tv > 1 - 1/M: {eb.tv_gap_bound(0.9, M3):.6f} = log {M3}"
      f" = {math.log(M3):.6f}")
