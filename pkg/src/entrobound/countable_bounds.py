"""Entropy-difference bounds when one variable has countably infinite support.

Knowing the total variation distance alone says nothing about the entropy gap
on an infinite alphabet. If X is supported on the first m points and the tail
of Y is certified, truncating Y at index M (lumping all mass from M on into
one atom) preserves d_tv exactly, perturbs d_loc by at most the lumped mass,
and costs at most the tail entropy of Y. The finite-alphabet two-distance
bound then applies to the truncated pair:

    |H(X) - H(Y)| <= tv_upper * log(M * loc_upper / tv_lower - 1)
                     + h(tv_upper) + tail_entropy

for envelopes tv_lower <= d_tv <= tv_upper, d_loc <= loc_upper with
loc_upper <= tv_lower <= tv_upper < 1, any truncation index
M >= max(m + 1, tv_lower / ((1 - tv_upper) * loc_upper)) whose lumped tail
mass is at most loc_upper, and any tail_entropy dominating
-sum_{i >= M} P_Y(i) log P_Y(i).

Countable pmfs are accessor objects over the non-negative integers; the
Poisson implementation lives in ``poisson_stein``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .core_dist import FiniteDistribution, binary_entropy
from .errors import ApplicabilityError, CapabilityError, DomainError, ValidationError

_SLACK = 1e-9
_CHUNK = 4096

# Tail-bound decay ratio guaranteed beyond ``geometric_tail_start``.
_TAIL_RATIO = 0.5


class CountablePmf(ABC):
    """A pmf on the non-negative integers exposed through accessors.

    Implementations never materialize the support: ``log_pmf`` evaluates one
    point and ``tail_mass_bound(j)`` returns a certified upper bound on the
    mass at {j, j+1, ...}, monotone non-increasing in j.
    """

    @abstractmethod
    def log_pmf(self, j: int) -> float:
        """log P(Y = j); -inf where the mass vanishes."""

    @abstractmethod
    def tail_mass_bound(self, j: int) -> float:
        """Certified upper bound on P(Y >= j), non-increasing in j."""

    def log_pmf_array(self, js: np.ndarray) -> np.ndarray:
        return np.array([self.log_pmf(int(j)) for j in js])

    def log_tail_mass_bound(self, j: int) -> float:
        """log of ``tail_mass_bound``; override when the bound underflows."""
        t = self.tail_mass_bound(j)
        return math.log(t) if t > 0.0 else -math.inf

    def geometric_tail_start(self) -> int:
        """Index beyond which tail_mass_bound(j+1) <= tail_mass_bound(j) / 2.

        Needed by ``tail_entropy_oracle`` to certify its remainder; the
        default declares the capability absent.
        """
        raise CapabilityError(
            f"{type(self).__name__} provides no geometric tail certificate"
        )


def truncate_countable(y: CountablePmf, m: int) -> FiniteDistribution:
    """Finite projection of ``y`` onto {0, ..., m-1} with a lumped tail atom.

    The first m - 1 masses are copied; the last symbol receives all the mass
    from index m - 1 on, computed as one minus the head sum to avoid
    cancellation in the far tail.
    """
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValidationError(f"truncation size must be an integer >= 2, got {m!r}")
    js = np.arange(m - 1, dtype=np.float64)
    head = np.exp(y.log_pmf_array(js))
    atom = max(0.0, 1.0 - float(head.sum()))
    return FiniteDistribution(range(m), np.append(head, atom))


@dataclass(frozen=True)
class TruncationBoundInputs:
    """Envelopes feeding the truncated entropy-gap bound.

    ``support_size`` is the (finite) support size of X, ``trunc_size`` the
    truncation index M; the envelopes must satisfy
    0 < loc_upper <= tv_lower <= tv_upper < 1 and
    M >= max(m + 1, tv_lower / ((1 - tv_upper) loc_upper)).
    """

    support_size: int
    trunc_size: int
    tv_upper: float
    tv_lower: float
    loc_upper: float
    tail_entropy: float

    def __post_init__(self) -> None:
        if not (isinstance(self.support_size, (int, np.integer)) and self.support_size >= 1):
            raise ValidationError("support_size must be a positive integer")
        if not isinstance(self.trunc_size, (int, np.integer)):
            raise ValidationError("trunc_size must be an integer")
        if not 0.0 < self.loc_upper <= self.tv_lower * (1.0 + _SLACK):
            raise ApplicabilityError(
                f"need 0 < loc_upper <= tv_lower, got {self.loc_upper!r} vs {self.tv_lower!r}"
            )
        if not self.tv_lower <= self.tv_upper * (1.0 + _SLACK):
            raise ApplicabilityError(
                f"need tv_lower <= tv_upper, got {self.tv_lower!r} vs {self.tv_upper!r}"
            )
        if not self.tv_upper < 1.0:
            raise ApplicabilityError(f"need tv_upper < 1, got {self.tv_upper!r}")
        if self.tail_entropy < 0.0:
            raise ValidationError("tail_entropy must be non-negative")
        floor = max(
            self.support_size + 1,
            self.tv_lower / ((1.0 - self.tv_upper) * self.loc_upper),
        )
        if self.trunc_size < floor * (1.0 - _SLACK):
            raise ApplicabilityError(
                f"truncation index {self.trunc_size} below the required "
                f"max(m+1, tv_lower/((1-tv_upper) loc_upper)) = {floor!r}"
            )


def truncation_gap_bound(inputs: TruncationBoundInputs) -> float:
    """tv_upper log(M loc_upper / tv_lower - 1) + h(tv_upper) + tail_entropy."""
    arg = inputs.trunc_size * inputs.loc_upper / inputs.tv_lower - 1.0
    return (
        inputs.tv_upper * math.log(arg)
        + binary_entropy(min(inputs.tv_upper, 1.0))
        + inputs.tail_entropy
    )


def truncation_gap_bound_tv_only(
    tv_cap: float, tail_entropy: float, support_size: int
) -> tuple[int, float]:
    """The truncated bound using only d_tv <= tv_cap; no local distance.

    Chooses the smallest admissible truncation index
    M = max(m + 1, ceil(1/(1 - tv_cap))) and returns
    (M, tv_cap log(M-1) + h(tv_cap) + tail_entropy).
    """
    if not 0.0 < tv_cap < 1.0:
        raise DomainError(f"tv_cap must lie in (0,1), got {tv_cap!r}")
    if tail_entropy < 0.0:
        raise ValidationError("tail_entropy must be non-negative")
    if not (isinstance(support_size, (int, np.integer)) and support_size >= 1):
        raise ValidationError("support_size must be a positive integer")
    trunc = max(support_size + 1, math.ceil(1.0 / (1.0 - tv_cap)))
    bound = tv_cap * math.log(trunc - 1) + binary_entropy(tv_cap) + tail_entropy
    return trunc, bound


def tail_entropy_oracle(y: CountablePmf, start: int, tol: float) -> float:
    """-sum_{j >= start} P_Y(j) log P_Y(j), certified to within ``tol``.

    Sums terms directly and stops once the remainder is provably below
    ``tol``: beyond ``geometric_tail_start`` the certified tail mass halves
    per step, so each remaining term is dominated by -q log q along a
    geometric majorant q, whose total is 2 T (log(1/T) + log 2) for boundary
    tail mass T. Works entirely in log space, so astronomically small tails
    certify immediately (the summed value then underflows to 0).
    """
    if start < 0:
        raise DomainError(f"start index must be non-negative, got {start!r}")
    if not tol > 0.0:
        raise ValidationError("tol must be positive")
    geo = y.geometric_tail_start()
    log_tol = math.log(tol)
    total = 0.0
    j = start
    while True:
        js = np.arange(j, j + _CHUNK, dtype=np.float64)
        lp = y.log_pmf_array(js)
        with np.errstate(invalid="ignore"):
            terms = np.where(np.isneginf(lp), 0.0, -np.exp(lp) * lp)
        total += float(terms.sum())
        j += _CHUNK
        if j >= geo:
            log_t = y.log_tail_mass_bound(j)
            if log_t <= -2.0:
                log_cert = log_t + math.log(2.0 * (-log_t + math.log(2.0)))
                if log_cert <= log_tol:
                    return total
        if j - start > 50_000_000:
            raise CapabilityError("tail entropy summation failed to certify convergence")
