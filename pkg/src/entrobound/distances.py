"""Local and total-variation distances between finite pmfs, and their ratio.

The local distance is the l-infinity distance between two pmfs; the total
variation distance is half the l1 distance (normalized to [0,1]). Alphabets
are unified by symbol label with implicit zero-extension, so distributions
with nested supports compare directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_dist import FiniteDistribution, unify_support
from .errors import DomainError, InternalCheckError

_MAX_ORACLE_ALPHABET = 20


@dataclass(frozen=True)
class DistancePair:
    """Bundle of d_loc, d_tv, and their ratio alpha = d_loc / d_tv.

    ``alpha`` is None (flagged undefined, never NaN) when d_tv = 0;
    otherwise it lies in [2/M, 1] for an alphabet of size M.
    """

    d_loc: float
    d_tv: float
    alpha: float | None

    def __post_init__(self) -> None:
        if not (0.0 <= self.d_loc <= 1.0 and 0.0 <= self.d_tv <= 1.0):
            raise InternalCheckError("distances must lie in [0,1]")
        if self.d_loc > self.d_tv + 1e-12:
            raise InternalCheckError("d_loc must not exceed d_tv")
        if (self.d_tv == 0.0) != (self.alpha is None):
            raise InternalCheckError("alpha must be undefined exactly when d_tv = 0")


def local_distance(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """max over symbols of |p(u) - q(u)|."""
    _, pa, qa = unify_support(p, q)
    return float(np.max(np.abs(pa - qa)))


def total_variation(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """Half the l1 distance between the pmfs, in [0,1]."""
    _, pa, qa = unify_support(p, q)
    return min(1.0, float(0.5 * np.sum(np.abs(pa - qa))))


def tv_event_supremum_oracle(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """Brute-force sup over events B of |p(B) - q(B)|.

    Exponential enumeration over all 2^M subsets; restricted to M <= 20.
    Must agree with ``total_variation`` to 1e-12.
    """
    symbols, pa, qa = unify_support(p, q)
    m = len(symbols)
    if m > _MAX_ORACLE_ALPHABET:
        raise DomainError(
            f"subset enumeration supports alphabets up to {_MAX_ORACLE_ALPHABET}, got {m}"
        )
    diff = pa - qa
    masks = np.arange(1 << m, dtype=np.uint32)
    bits = (masks[:, None] >> np.arange(m, dtype=np.uint32)) & 1
    return float(np.max(np.abs(bits.astype(np.float64) @ diff)))


def distance_pair(p: FiniteDistribution, q: FiniteDistribution) -> DistancePair:
    """Compute both distances and alpha, enforcing the DistancePair invariants."""
    _, pa, qa = unify_support(p, q)
    diff = np.abs(pa - qa)
    d_loc = float(np.max(diff))
    d_tv = min(1.0, float(0.5 * np.sum(diff)))
    if d_tv == 0.0:
        return DistancePair(d_loc=0.0, d_tv=0.0, alpha=None)
    alpha = d_loc / d_tv
    m = pa.shape[0]
    # Below roundoff scale the signed differences need not cancel, so the
    # ratio is noise in [2/M, 2]; clamping is harmless there because every
    # consumer multiplies by d_tv. The 1e-9 slack on both sides covers the
    # rounding of the l1 sum on large alphabets.
    if d_tv > 1e-12 and not (2.0 / m) * (1.0 - 1e-9) <= alpha <= 1.0 + 1e-9:
        raise InternalCheckError(f"alpha {alpha!r} escaped [2/M, 1] for M={m}")
    return DistancePair(d_loc=d_loc, d_tv=d_tv, alpha=min(alpha, 1.0))
