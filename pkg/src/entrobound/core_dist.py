"""Distribution types, entropy functionals, and special-function numerics.

All logarithms are natural and all entropies are in nats. The convention
``0 * log 0 = 0`` applies everywhere. Probability mass functions are
validated on construction (tolerance 1e-9 on the total mass) and then
normalized once, so downstream identities hold to machine precision.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, rel_entr, xlogy

from .errors import DomainError, ValidationError

PMF_SUM_TOL = 1e-9

# Tail mass excluded on each side of a certified summation window.
DEFAULT_TAIL_TOL = 1e-13

# Below this point the power series for I0 is used, above it the asymptotic
# expansion; both carry >= 10 accurate digits at the switch.
_BESSEL_SWITCH = 20.0


@dataclass(frozen=True, eq=False)
class FiniteDistribution:
    """A pmf over an ordered finite alphabet of distinct, opaque labels.

    ``probs`` is stored as a read-only float64 array. Construction rejects
    negative mass, duplicate symbols, and totals farther than 1e-9 from one;
    it renormalizes unless the total already equals one to machine precision
    (the guard keeps report round-trips bit-identical).
    """

    symbols: tuple
    probs: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __init__(self, symbols: Sequence[Hashable], probs) -> None:
        symbols = tuple(symbols)
        arr = np.asarray(probs, dtype=np.float64)
        if arr.ndim != 1:
            raise ValidationError("probs must be one-dimensional")
        if len(symbols) != arr.shape[0]:
            raise ValidationError(
                f"{len(symbols)} symbols but {arr.shape[0]} probabilities"
            )
        if len(symbols) == 0:
            raise ValidationError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise ValidationError("symbols must be distinct")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("probabilities must be finite")
        if np.any(arr < 0.0):
            worst = float(arr.min())
            raise ValidationError(f"negative probability mass {worst!r}")
        total = float(arr.sum())
        if abs(total - 1.0) > PMF_SUM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        if abs(total - 1.0) > 1e-15 * max(4.0, math.sqrt(arr.shape[0])):
            arr = arr / total
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "probs", arr)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @property
    def size(self) -> int:
        """Alphabet size M."""
        return len(self.symbols)

    def prob(self, symbol) -> float:
        """Mass at ``symbol``; 0.0 for labels outside the alphabet."""
        i = self._index.get(symbol)
        return 0.0 if i is None else float(self.probs[i])

    def index_of(self, symbol) -> int:
        i = self._index.get(symbol)
        if i is None:
            raise DomainError(f"symbol {symbol!r} not in alphabet")
        return i

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    @classmethod
    def uniform(cls, symbols: Sequence[Hashable]) -> "FiniteDistribution":
        symbols = tuple(symbols)
        m = len(symbols)
        return cls(symbols, np.full(m, 1.0 / m))

    @classmethod
    def point_mass(cls, symbols: Sequence[Hashable], at) -> "FiniteDistribution":
        symbols = tuple(symbols)
        probs = np.zeros(len(symbols))
        probs[symbols.index(at)] = 1.0
        return cls(symbols, probs)


@dataclass(frozen=True)
class PoissonLaw:
    """Poisson distribution with mean ``lam`` on the non-negative integers."""

    lam: float

    def __post_init__(self) -> None:
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ValidationError(f"Poisson mean must be positive, got {self.lam!r}")


@dataclass(frozen=True)
class BinomialLaw:
    """Binomial distribution with ``n`` trials and success probability ``p``."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValidationError(f"trial count must be a positive integer, got {self.n!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValidationError(f"success probability must lie in [0,1], got {self.p!r}")


def entropy(dist: FiniteDistribution) -> float:
    """Shannon entropy -sum p log p in nats, with 0 log 0 = 0."""
    return float(-np.sum(xlogy(dist.probs, dist.probs)))


def binary_entropy(x: float) -> float:
    """h(x) = -x log x - (1-x) log(1-x) in nats; h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument must lie in [0,1], got {x!r}")
    return float(-(xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)))


def relative_entropy(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """D(p || q) = sum p log(p/q) in nats over the label-unified alphabet.

    Requires support(p) to be contained in support(q).
    """
    _, pa, qa = unify_support(p, q)
    terms = rel_entr(pa, qa)
    total = float(np.sum(terms))
    if not math.isfinite(total):
        raise DomainError("support of p is not contained in support of q")
    return total


def unify_support(p: FiniteDistribution, q: FiniteDistribution):
    """Common alphabet for two pmfs, matching symbols by label.

    Returns ``(symbols, p_arr, q_arr)`` where the symbol order is p's order
    followed by q's extra labels in q's order; missing labels get mass 0.
    """
    if p.symbols == q.symbols:
        return p.symbols, p.probs, q.probs
    extra = tuple(s for s in q.symbols if s not in p)
    symbols = p.symbols + extra
    pa = np.concatenate([p.probs, np.zeros(len(extra))])
    qa = np.array([q.prob(s) for s in symbols])
    pa.setflags(write=False)
    qa.setflags(write=False)
    return symbols, pa, qa


def poisson_log_pmf(law: PoissonLaw, j: int) -> float:
    """log P(Y = j) for Y ~ Poisson(lam), evaluated in log space."""
    if j < 0 or j != int(j):
        raise DomainError(f"Poisson support is the non-negative integers, got {j!r}")
    return float(_poisson_log_pmf_arr(law.lam, np.asarray([j], dtype=np.float64))[0])


def _poisson_log_pmf_arr(lam: float, js: np.ndarray) -> np.ndarray:
    return -lam + js * math.log(lam) - gammaln(js + 1.0)


def _poisson_tail_log_bound(lam: float, m: int) -> float:
    """Chernoff exponent bounding log P(Y >= m) for m > lam, log P(Y <= m) for m < lam.

    Both optimizations give exp(-(lam + m log(m/(lam e)))); at m = 0 the
    convention 0 log 0 = 0 makes the bound e^(-lam), which is exact.
    """
    if m == 0:
        return -lam
    return -(lam + m * (math.log(m / lam) - 1.0))


def _binomial_log_pmf_arr(n: int, p: float, js: np.ndarray) -> np.ndarray:
    logc = gammaln(n + 1.0) - gammaln(js + 1.0) - gammaln(n - js + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = xlogy(js, p) + xlogy(n - js, 1.0 - p)
    return logc + lp


def _binomial_tail_log_bound(n: int, p: float, m: int, upper: bool) -> float:
    # Chernoff-Hoeffding: P(X >= m) <= exp(-n KL(m/n || p)) for m/n >= p,
    # and symmetrically for the lower tail.
    q = m / n
    kl = float(rel_entr(q, p) + rel_entr(1.0 - q, 1.0 - p))
    if (upper and q < p) or (not upper and q > p):
        return 0.0
    return -n * kl


def _certified_window(mean: float, hi_bound, lo_bound, n_max: int | None, tail_tol: float):
    """Smallest-effort window [lo, hi] whose excluded tail mass is certified
    below tail_tol/2 on each side. ``hi_bound(j)`` bounds mass at >= j,
    ``lo_bound(j)`` bounds mass at <= j."""
    half = tail_tol / 2.0
    sigma = max(1.0, math.sqrt(mean))

    hi = int(math.ceil(mean + 9.0 * sigma)) + 10
    if n_max is not None:
        hi = min(hi, n_max)
    while (n_max is None or hi < n_max) and hi_bound(hi + 1) > math.log(half):
        hi = int(math.ceil(mean + 2 * (hi + 10 - mean)))
        if n_max is not None:
            hi = min(hi, n_max)

    lo = int(math.floor(mean - 9.0 * sigma)) - 10
    lo = max(lo, 0)
    while lo > 0 and lo_bound(lo - 1) > math.log(half):
        lo = int(math.floor(mean - 2 * (mean - lo + 10)))
        lo = max(lo, 0)
    return lo, hi


def _window_entropy(log_pmf_arr) -> float:
    lp = log_pmf_arr
    terms = np.where(np.isneginf(lp), 0.0, -np.exp(lp) * lp)
    return float(np.sum(terms))


def poisson_entropy(law: PoissonLaw, tail_tol: float = DEFAULT_TAIL_TOL) -> float:
    """H(Poisson(lam)) in nats by summation over a certified window.

    The window is centered at the mean and expanded until the Chernoff bounds
    for both tails certify the excluded mass below ``tail_tol``.
    """
    if not tail_tol > 0.0:
        raise ValidationError("tail_tol must be positive")
    lam = law.lam
    lo, hi = _certified_window(
        lam,
        hi_bound=lambda j: _poisson_tail_log_bound(lam, j) if j > lam else 0.0,
        lo_bound=lambda j: _poisson_tail_log_bound(lam, j) if j < lam else 0.0,
        n_max=None,
        tail_tol=tail_tol,
    )
    js = np.arange(lo, hi + 1, dtype=np.float64)
    return _window_entropy(_poisson_log_pmf_arr(lam, js))


def binomial_entropy(law: BinomialLaw, tail_tol: float = DEFAULT_TAIL_TOL) -> float:
    """H(Binomial(n, p)) in nats by exact log-gamma summation over a certified window."""
    if not tail_tol > 0.0:
        raise ValidationError("tail_tol must be positive")
    n, p = law.n, law.p
    if p == 0.0 or p == 1.0:
        return 0.0
    lo, hi = _certified_window(
        n * p,
        hi_bound=lambda j: _binomial_tail_log_bound(n, p, j, upper=True),
        lo_bound=lambda j: _binomial_tail_log_bound(n, p, j, upper=False),
        n_max=n,
        tail_tol=tail_tol,
    )
    js = np.arange(lo, hi + 1, dtype=np.float64)
    return _window_entropy(_binomial_log_pmf_arr(n, p, js))


def bernoulli_sum_pmf(p_list: Sequence[float]) -> FiniteDistribution:
    """Exact Poisson-binomial pmf on {0, ..., n} by iterative convolution.

    O(n^2) dynamic programming; the exact oracle against which the Stein
    envelopes are checked.
    """
    ps = np.asarray(p_list, dtype=np.float64)
    if ps.ndim != 1 or ps.shape[0] == 0:
        raise ValidationError("p_list must be a non-empty sequence")
    if np.any(ps < 0.0) or np.any(ps > 1.0):
        raise ValidationError("every success probability must lie in [0,1]")
    pmf = np.array([1.0])
    for p in ps:
        nxt = np.zeros(pmf.shape[0] + 1)
        nxt[:-1] = pmf * (1.0 - p)
        nxt[1:] += pmf * p
        pmf = nxt
    return FiniteDistribution(range(ps.shape[0] + 1), pmf)


def bessel_i0_scaled(lam: float) -> float:
    """exp(-lam) * I0(lam) for lam >= 0.

    Power series below lam = 20, asymptotic expansion
    (1 + 1/(8 lam) + 9/(128 lam^2) + ...) / sqrt(2 pi lam) above; relative
    error < 1e-10 across the switch point.
    """
    if lam < 0.0 or not math.isfinite(lam):
        raise DomainError(f"argument must be non-negative and finite, got {lam!r}")
    if lam <= _BESSEL_SWITCH:
        x2 = (lam / 2.0) ** 2
        term = 1.0
        total = 1.0
        k = 1
        while term > 1e-19 * total:
            term *= x2 / (k * k)
            total += term
            k += 1
        return total * math.exp(-lam)
    term = 1.0
    total = 1.0
    k = 1
    while True:
        nxt = term * (2 * k - 1) ** 2 / (8.0 * k * lam)
        if nxt >= term or nxt < 1e-19 * total:
            break
        total += nxt
        term = nxt
        k += 1
    return total / math.sqrt(2.0 * math.pi * lam)
