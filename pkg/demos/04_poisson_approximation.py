"""How close is the entropy of Binomial(n, p) to that of Poisson(np)?

On the countably infinite alphabet of the Poisson law, total variation alone
says nothing about entropy differences. Stein-method estimates sandwich the
total variation distance and cap the local distance, a certified truncation
handles the tail, and the two-distance bound does the rest. This is the sum
rate question for a noiseless binary-adder multiple-access channel: the
maximal output entropy is the binomial one, approximated by the easy Poisson
entropy.
"""

import entrobound as eb

for n, p in ((10**6, 0.1), (10**6, 0.01)):
    rep = eb.poisson_binomial_gap_bounds(n, p)
    env = rep.envelope
    print(f"n = {n:.0e}, p = {p}:  lam = {rep.lam:.0f}")
    print(f"  tv envelopes: {env.tv_lower:.3e} <= d_tv <= {env.tv_upper:.3e}")
    print(f"  local distance <= {env.loc_upper:.3e}")
    print(f"  truncation index {rep.trunc_size}, lumped-tail entropy <= "
          f"{rep.tail_entropy} (log certificate {rep.tail_entropy_log_bound:.0f})")
    print(f"  0 <= H(Poisson) - H(Binomial) <= {rep.two_distance_bound:.3f} nats"
          f"  (tv-only route: {rep.tv_only_bound:.3f})")
    print(f"  H(Poisson({rep.lam:.0f})) = {rep.poisson_entropy_nats:.3f} nats\n")

# At desk scale the exact gap is computable and sits far below the bound.
rep = eb.poisson_binomial_gap_bounds(10**4, 0.01, with_exact_gap=True)
print(f"desk scale n = 1e4, p = 0.01: exact gap = {rep.exact_gap:.6f}"
      f" <= bound {rep.two_distance_bound:.4f}")

# The envelopes really do sandwich the exact distances (brute-force pmf).
diag = eb.stein_envelope_vs_exact(2000, [0.005] * 2000)
print(f"\nexact check at n = 2000, p = 0.005:")
print(f"  {diag.envelope.tv_lower:.3e} <= d_tv = {diag.exact_d_tv:.3e}"
      f" <= {diag.envelope.tv_upper:.3e}")
print(f"  d_loc = {diag.exact_d_loc:.3e} <= {diag.envelope.loc_upper:.3e}")
print(f"  findings: {diag.messages or 'none'}")

# The local/tv envelope ratio decays like 1/sqrt(lam): this is why the
# two-distance route wins at scale.
print("\nenvelope ratio vs the asymptote 33.634/sqrt(lam):")
for lam in (1e4, 1e5, 1e6):
    env = eb.stein_envelope(lam, 1.0)
    print(f"  lam = {lam:.0e}: ratio = {env.loc_upper / env.tv_lower:.5f},"
          f" asymptote = {eb.stein_ratio_asymptote(lam):.5f}")
