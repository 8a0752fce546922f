"""Shared generators for randomized checks. All seeds are fixed and recorded
here so every run exercises the same inputs."""

import numpy as np
import pytest

from entrobound import FiniteDistribution

MASTER_SEED = 20240817


@pytest.fixture
def rng():
    return np.random.default_rng(MASTER_SEED)


def random_pmf(rng, m, sparse=False):
    """Dirichlet(1) pmf on {0, ..., m-1}; ``sparse`` zeroes a random subset."""
    w = rng.gamma(1.0, size=m)
    if sparse and m >= 3:
        keep = rng.integers(2, m + 1)
        idx = rng.permutation(m)[:m - keep]
        w[idx] = 0.0
    return FiniteDistribution(range(m), w / w.sum())


def random_pmf_pair(rng, m, sparse=False):
    return random_pmf(rng, m, sparse), random_pmf(rng, m, sparse)


def random_capped_disjoint_pair(rng, m, ratio, batch):
    """Random feasible points of the disjoint-support program, vectorized.

    Returns (s, t) of shape (batch, m): entrywise s*t = 0, s + t <= ratio,
    rows summing to one. Support sizes are drawn uniformly from the feasible
    range; masses come from a Dirichlet draw pushed under the cap by one
    proportional-headroom redistribution (which cannot overshoot).
    """
    need = int(np.ceil(1.0 / ratio - 1e-12))
    assert 2 * need <= m, "infeasible (ratio, m) requested"
    k_t = rng.integers(need, m - need + 1, size=batch)
    s = np.zeros((batch, m))
    t = np.zeros((batch, m))
    order = np.argsort(rng.random((batch, m)), axis=1)
    for k in np.unique(k_t):
        rows = np.flatnonzero(k_t == k)
        t_cols = order[rows, :k]
        s_cols = order[rows, k:]
        t[rows[:, None], t_cols] = _capped_simplex(rng, len(rows), k, ratio)
        s[rows[:, None], s_cols] = _capped_simplex(rng, len(rows), m - k, ratio)
    return s, t


def _capped_simplex(rng, batch, k, cap):
    """Rows from the simplex {x >= 0, sum x = 1, x <= cap} with k * cap >= 1."""
    x = rng.gamma(1.0, size=(batch, k))
    x /= x.sum(axis=1, keepdims=True)
    clipped = np.minimum(x, cap)
    deficit = 1.0 - clipped.sum(axis=1, keepdims=True)
    headroom = cap - clipped
    total = headroom.sum(axis=1, keepdims=True)
    scale = np.divide(deficit, total, out=np.zeros_like(deficit), where=total > 0)
    return clipped + headroom * scale
