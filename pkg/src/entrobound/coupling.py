"""Explicit maximal-coupling decomposition, seeded sampling, and the MAP
estimator of the mixing bit.

The decomposition writes a pair (X, Y) of pmfs as a Bernoulli(p) mixture: with
probability p = sum_u min(P_X(u), P_Y(u)) both coordinates equal a draw from
U, otherwise they are independent draws from V and W, where

    P_U = min(P_X, P_Y) / p,
    P_V = (P_X - min) / (1-p),
    P_W = (P_Y - min) / (1-p).

The resulting coupling attains P(X' = Y') = 1 - d_TV(X, Y), the maximum over
all couplings. V and W have disjoint supports and P_V + P_W <= alpha
pointwise.

Sampling discipline: every sample consumes exactly three uniform doubles from
the generator (mixing bit, first coordinate, second coordinate), so a loop of
single draws and the vectorized path produce identical streams for the same
seed. The repository standard generator is numpy's PCG64 via
``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core_dist import FiniteDistribution, unify_support
from .errors import DomainError, InternalCheckError, ValidationError


@dataclass(frozen=True, eq=False)
class CouplingParts:
    """The (p, P_U, P_V, P_W) quadruple driving the coupled sampler.

    Degenerate cases are explicit: for identical marginals p = 1 and
    ``v_dist``/``w_dist`` are None; for disjoint supports p = 0 and
    ``u_dist`` is None.
    """

    p: float
    u_dist: FiniteDistribution | None
    v_dist: FiniteDistribution | None
    w_dist: FiniteDistribution | None
    _cdfs: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise InternalCheckError(f"mixture weight {self.p!r} outside [0,1]")
        if self.p < 1.0 and (self.v_dist is None or self.w_dist is None):
            raise InternalCheckError("V and W must be present when p < 1")
        if self.p > 0.0 and self.u_dist is None:
            raise InternalCheckError("U must be present when p > 0")
        cdfs = {}
        for name, dist in (("u", self.u_dist), ("v", self.v_dist), ("w", self.w_dist)):
            if dist is not None:
                cdfs[name] = np.cumsum(dist.probs)
        object.__setattr__(self, "_cdfs", cdfs)

    @property
    def is_degenerate(self) -> bool:
        """True when the marginals coincide and V, W are unused."""
        return self.v_dist is None

    @property
    def symbols(self) -> tuple:
        for dist in (self.u_dist, self.v_dist):
            if dist is not None:
                return dist.symbols
        raise InternalCheckError("coupling with no component distributions")


def build_maximal_coupling(
    p_x: FiniteDistribution, p_y: FiniteDistribution
) -> CouplingParts:
    """Construct the maximal-coupling decomposition of (p_x, p_y).

    Identical pmfs yield the degenerate variant with p = 1 (V and W are
    undefined there: their normalizer 1 - p vanishes).
    """
    symbols, pa, qa = unify_support(p_x, p_y)
    if np.array_equal(pa, qa):
        return CouplingParts(
            p=1.0, u_dist=FiniteDistribution(symbols, pa), v_dist=None, w_dist=None
        )
    mins = np.minimum(pa, qa)
    pos = pa - mins
    neg = qa - mins
    p = float(mins.sum())
    u_dist = FiniteDistribution(symbols, mins / p) if p > 0.0 else None
    v_dist = FiniteDistribution(symbols, pos / pos.sum())
    w_dist = FiniteDistribution(symbols, neg / neg.sum())
    return CouplingParts(p=p, u_dist=u_dist, v_dist=v_dist, w_dist=w_dist)


def coupling_equal_probability(parts: CouplingParts) -> float:
    """P(X' = Y') under the maximal coupling; equals 1 - d_TV(X, Y)."""
    return parts.p


def _inverse_cdf(cdf: np.ndarray, u) -> np.ndarray:
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, cdf.shape[0] - 1)


def sample_coupling(parts: CouplingParts, rng: np.random.Generator):
    """Draw one coupled pair (x, y) of symbols; deterministic given the seed.

    Draws J ~ Bernoulli(p); on J = 1 both coordinates are one inverse-CDF
    draw from U, otherwise the coordinates are independent draws from V and W.
    """
    u_j, u_a, u_b = rng.random(3)
    if u_j < parts.p:
        i = int(_inverse_cdf(parts._cdfs["u"], u_a))
        s = parts.symbols[i]
        return s, s
    i = int(_inverse_cdf(parts._cdfs["v"], u_a))
    j = int(_inverse_cdf(parts._cdfs["w"], u_b))
    return parts.symbols[i], parts.symbols[j]


def sample_coupling_many(parts: CouplingParts, n_samples: int, rng: np.random.Generator):
    """Vectorized sampler; returns integer index arrays (x_idx, y_idx).

    Stream-compatible with ``sample_coupling``: sample i uses uniforms
    3i, 3i+1, 3i+2 of the generator, so the two paths agree for a fixed seed.
    """
    if n_samples < 0:
        raise ValidationError("n_samples must be non-negative")
    u = rng.random((n_samples, 3))
    same = u[:, 0] < parts.p
    x_idx = np.empty(n_samples, dtype=np.intp)
    y_idx = np.empty(n_samples, dtype=np.intp)
    if same.any():
        drew = _inverse_cdf(parts._cdfs["u"], u[same, 1])
        x_idx[same] = drew
        y_idx[same] = drew
    diff = ~same
    if diff.any():
        x_idx[diff] = _inverse_cdf(parts._cdfs["v"], u[diff, 1])
        y_idx[diff] = _inverse_cdf(parts._cdfs["w"], u[diff, 2])
    return x_idx, y_idx


def map_estimator_j(
    parts: CouplingParts,
    p_x: FiniteDistribution,
    p_y: FiniteDistribution,
    observed,
) -> int:
    """MAP estimate of the mixing bit J from the first coordinate.

    Returns 1 iff P_X(observed)/2 <= P_Y(observed); observing a symbol with
    P_Y at least half of P_X makes the equal branch the likelier origin.
    """
    if observed not in parts.symbols:
        raise DomainError(f"symbol {observed!r} not in the coupling alphabet")
    return 1 if p_x.prob(observed) / 2.0 <= p_y.prob(observed) else 0
