"""Entropy-difference bounds for finite alphabets.

Every bound here controls |H(X) - H(Y)| for pmfs on a common alphabet of size
M, in terms of the total variation distance d_tv, the local distance d_loc,
and their ratio r = d_loc / d_tv in [2/M, 1]:

* ``tv_gap_bound``           -- d_tv log(M-1) + h(d_tv), from d_tv alone;
* ``tv_local_gap_bound``     -- d_tv log(M r - 1) + h(d_tv), strictly sharper
                                whenever d_loc < d_tv;
* ``tv_local_gap_bound_refined`` -- subtracts d_tv log 4 when the two pmfs
                                are within a factor 2 of each other pointwise;
* ``envelope_gap_bound``     -- the same with upper envelopes in place of the
                                exact distances;
* ``small_ratio_gap_bound``  -- the ratio cap r <= 1/N specialization;
* ``local_gap_bound``        -- -M d_loc log d_loc, from d_loc alone
                                (valid only for d_loc <= 1/e).

The sharpening rests on an exactly solvable non-convex program: the maximum
of H(V) - H(W) over pmfs with disjoint supports and pointwise sum capped by
r (``disjoint_support_gap_max`` and friends).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .core_dist import FiniteDistribution, binary_entropy, entropy, unify_support
from .distances import distance_pair
from .errors import (
    ApplicabilityError,
    ConstraintError,
    DomainError,
    InternalCheckError,
)

_REL_TOL = 1e-12
_CONSTRAINT_TOL = 1e-9
_LOCAL_BOUND_LIMIT = math.exp(-1.0)


def _validate_alphabet_size(m: int) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise DomainError(f"alphabet size must be an integer >= 2, got {m!r}")


def _validate_tv(d_tv: float) -> None:
    if not 0.0 <= d_tv <= 1.0:
        raise DomainError(f"total variation distance must lie in [0,1], got {d_tv!r}")


def tv_gap_bound(d_tv: float, m: int) -> float:
    """Entropy-gap bound from the total variation distance alone.

    Returns d_tv log(M-1) + h(d_tv) while that expression is monotone in
    d_tv (d_tv <= 1 - 1/M), and the trivial ceiling log M beyond. Tight in
    both regimes: a near-point-mass pair attains the first branch, a
    uniform-versus-point-mass pair the second.
    """
    _validate_alphabet_size(m)
    _validate_tv(d_tv)
    if d_tv <= 1.0 - 1.0 / m:
        return d_tv * math.log(m - 1) + binary_entropy(d_tv)
    return math.log(m)


def _distance_ratio(d_tv: float, d_loc: float, m: int) -> float:
    if d_tv <= 1e-12:
        # below roundoff scale the signed differences need not cancel and the
        # ratio is noise in [2/M, 2]; the bound is ~h(d_tv) regardless
        return min(max(d_loc / d_tv, 2.0 / m), 1.0)
    if not 0.0 <= d_loc <= d_tv * (1.0 + _REL_TOL):
        raise DomainError(
            f"local distance {d_loc!r} must lie in [0, d_tv] with d_tv={d_tv!r}"
        )
    ratio = d_loc / d_tv
    if ratio < (2.0 / m) * (1.0 - 1e-9) or ratio > 1.0 + _REL_TOL:
        raise DomainError(f"distance ratio {ratio!r} outside [2/M, 1] for M={m}")
    return min(ratio, 1.0)


def tv_local_gap_bound(d_tv: float, d_loc: float, m: int) -> float:
    """Entropy-gap bound from both distances: d_tv log(M r - 1) + h(d_tv).

    With r = d_loc / d_tv this never exceeds ``tv_gap_bound`` and improves on
    it whenever d_loc < d_tv. Identical pmfs (d_tv = 0) give 0. The argument
    M r - 1 is clamped below at 1 to absorb floating-point dust at r = 2/M,
    where its analytic value is exactly 1.
    """
    _validate_alphabet_size(m)
    _validate_tv(d_tv)
    if d_tv == 0.0:
        return 0.0
    ratio = _distance_ratio(d_tv, d_loc, m)
    arg = max(m * ratio - 1.0, 1.0)
    return d_tv * math.log(arg) + binary_entropy(d_tv)


def bounded_ratio_condition(p_x: FiniteDistribution, p_y: FiniteDistribution) -> bool:
    """True iff the pmfs are within a factor 2 of each other on a common support.

    Requires 1/2 <= P_X(a)/P_Y(a) <= 2 wherever both are positive, and no
    symbol at which exactly one of the two is positive (the conservative
    reading: a one-sided zero makes the ratio unbounded in one direction).
    """
    _, pa, qa = unify_support(p_x, p_y)
    px_pos = pa > 0.0
    py_pos = qa > 0.0
    if np.any(px_pos != py_pos):
        return False
    both = px_pos & py_pos
    r = pa[both] / qa[both]
    lo = 0.5 * (1.0 - _REL_TOL)
    hi = 2.0 * (1.0 + _REL_TOL)
    return bool(np.all(r >= lo) and np.all(r <= hi))


def tv_local_gap_bound_refined(d_tv: float, d_loc: float, m: int) -> float:
    """Sharpened two-distance bound, d_tv log((M r - 1)/4) + h(d_tv).

    Valid only when ``bounded_ratio_condition`` holds for the underlying
    pmfs; the caller is responsible for having checked it. Equals
    ``tv_local_gap_bound`` minus d_tv log 4, which may be negative-signed
    inside the log; the literal value is returned.
    """
    return tv_local_gap_bound(d_tv, d_loc, m) - d_tv * math.log(4.0)


def _validate_ratio(ratio: float, m: int) -> float:
    _validate_alphabet_size(m)
    if ratio < (2.0 / m) * (1.0 - 1e-9) or ratio > 1.0 + _REL_TOL:
        raise DomainError(f"ratio {ratio!r} outside [2/M, 1] for M={m}")
    return min(max(ratio, 2.0 / m), 1.0)


def _inverse_floor_ceil(ratio: float) -> tuple[int, int]:
    # 1/ratio with a relative nudge so that ratio = 1/k lands on the integer
    # branch despite rounding (e.g. 1/float(1/3) = 3.0000000000000004).
    inv = 1.0 / ratio
    nearest = round(inv)
    if abs(inv - nearest) <= 1e-9 * max(1.0, nearest):
        return int(nearest), int(nearest)
    fl = math.floor(inv)
    return int(fl), int(fl) + 1


def disjoint_support_feasible(ratio: float, m: int) -> bool:
    """Whether the disjoint-support program has any feasible point.

    Each side needs support at least ceil(1/ratio) to reach total mass one
    under the cap, and the supports are disjoint, so feasibility is
    2 ceil(1/ratio) <= M. For odd M this fails on a sliver just above
    ratio = 2/M (distance ratios of actual pmf pairs never land there).
    """
    ratio = _validate_ratio(ratio, m)
    _, ce = _inverse_floor_ceil(ratio)
    return 2 * ce <= m


def disjoint_support_gap_max(ratio: float, m: int) -> float:
    """Exact maximum of H(V) - H(W) over disjointly supported capped pmfs.

    The feasible set: v, w are pmfs on M symbols with v_i w_i = 0 and
    v_i + w_i <= ratio everywhere. The closed form is

        log(M - ceil(1/r)) + r floor(1/r) log r
                           + (1 - r floor(1/r)) log(1 - r floor(1/r))

    with 0 log 0 = 0. ``disjoint_support_gap_argmax`` returns an attaining
    point; ``feasible_point_value`` evaluates arbitrary candidates. Where
    ``disjoint_support_feasible`` is false (odd M just above ratio = 2/M)
    the formula is still returned: it upper-bounds the empty supremum and is
    what the entropy bounds consume.
    """
    ratio = _validate_ratio(ratio, m)
    fl, ce = _inverse_floor_ceil(ratio)
    if m - ce < 1:
        raise DomainError(f"no feasible point: M - ceil(1/ratio) < 1 for M={m}")
    value = math.log(m - ce) + ratio * fl * math.log(ratio)
    if fl != ce:
        rem = 1.0 - ratio * fl
        value += float(xlogy(rem, rem))
    return value


def disjoint_support_gap_upper(ratio: float, m: int) -> float:
    """log(M ratio - 1): upper bound on the disjoint-support maximum.

    Coincides with ``disjoint_support_gap_max`` exactly when 1/ratio is an
    integer, and is strictly larger otherwise.
    """
    ratio = _validate_ratio(ratio, m)
    return math.log(max(m * ratio - 1.0, 1.0))


def disjoint_support_gap_argmax(ratio: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """The pair (s, t) attaining ``disjoint_support_gap_max``.

    For 1/r = N integer: t puts mass r on N symbols, s spreads uniformly on
    the other M - N. Otherwise t fills floor(1/r) symbols at the cap r plus
    one partial symbol, and s spreads uniformly on the remaining
    M - ceil(1/r). Feasible exactly when ``disjoint_support_feasible``; its
    objective equals the closed form either way.
    """
    ratio = _validate_ratio(ratio, m)
    fl, ce = _inverse_floor_ceil(ratio)
    s = np.zeros(m)
    t = np.zeros(m)
    if fl == ce:
        t[:fl] = ratio
        s[fl:] = 1.0 / (m - fl)
    else:
        t[:fl] = ratio
        t[fl] = 1.0 - ratio * fl
        s[fl + 1 :] = 1.0 / (m - fl - 1)
    return s, t


def feasible_point_value(s, t, ratio: float) -> float:
    """Objective -sum s log s + sum t log t after checking feasibility.

    Constraints (absolute tolerance 1e-9): entrywise non-negativity,
    s_i t_i = 0, s_i + t_i <= ratio, and both vectors summing to one.
    Violations raise ``ConstraintError`` naming the constraint.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if s.shape != t.shape or s.ndim != 1 or s.shape[0] < 2:
        raise ConstraintError("s and t must be equal-length vectors of size >= 2")
    if np.any(s < -_CONSTRAINT_TOL) or np.any(t < -_CONSTRAINT_TOL):
        raise ConstraintError("non-negativity violated: some s_i or t_i < 0")
    if np.any(np.abs(s * t) > _CONSTRAINT_TOL):
        raise ConstraintError("disjoint-support constraint violated: some s_i * t_i != 0")
    if np.any(s + t > ratio + _CONSTRAINT_TOL):
        raise ConstraintError(f"cap constraint violated: some s_i + t_i > {ratio!r}")
    if abs(float(s.sum()) - 1.0) > _CONSTRAINT_TOL:
        raise ConstraintError(f"s sums to {float(s.sum())!r}, not 1")
    if abs(float(t.sum()) - 1.0) > _CONSTRAINT_TOL:
        raise ConstraintError(f"t sums to {float(t.sum())!r}, not 1")
    s = np.clip(s, 0.0, None)
    t = np.clip(t, 0.0, None)
    return float(-np.sum(xlogy(s, s)) + np.sum(xlogy(t, t)))


def envelope_gap_bound(eps_tv: float, eps_ratio: float, m: int) -> float:
    """Entropy-gap bound from envelopes d_tv <= eps_tv, d_loc/d_tv <= eps_ratio.

    Returns eps_tv log(M eps_ratio - 1) + h(eps_tv), which requires
    eps_tv <= 1 - 1/(M eps_ratio): beyond that threshold the expression is no
    longer monotone in d_tv and substituting the envelope is invalid.
    """
    _validate_alphabet_size(m)
    if not 0.0 < eps_ratio <= 1.0 + _REL_TOL:
        raise DomainError(f"ratio envelope must lie in (0, 1], got {eps_ratio!r}")
    if not 0.0 <= eps_tv <= 1.0:
        raise DomainError(f"total variation envelope must lie in [0,1], got {eps_tv!r}")
    if eps_tv > 1.0 - 1.0 / (m * eps_ratio) + _REL_TOL:
        raise ApplicabilityError(
            f"eps_tv={eps_tv!r} exceeds the monotonicity threshold "
            f"1 - 1/(M eps_ratio) = {1.0 - 1.0 / (m * eps_ratio)!r}"
        )
    if eps_tv == 0.0:
        return 0.0
    return eps_tv * math.log(m * eps_ratio - 1.0) + binary_entropy(eps_tv)


def small_ratio_gap_bound(d_tv: float, m: int, n: int) -> float:
    """Entropy-gap bound d_tv log((M-N)/N) + h(d_tv) for ratio caps 1/N.

    Valid when d_loc/d_tv <= 1/N for an integer N in {1, ..., floor(M/2)};
    N = 1 recovers ``tv_gap_bound``'s first branch.
    """
    _validate_alphabet_size(m)
    _validate_tv(d_tv)
    if not (isinstance(n, (int, np.integer)) and 1 <= n <= m // 2):
        raise DomainError(f"N must be an integer in [1, M/2], got {n!r} for M={m}")
    return d_tv * math.log((m - n) / n) + binary_entropy(d_tv)


def local_gap_bound(d_loc: float, m: int) -> float:
    """Entropy-gap bound -M d_loc log d_loc from the local distance alone.

    Valid only for d_loc <= 1/e; beyond that the bound can fail (half-half
    versus point-mass pmfs give d_loc = 1 but a positive gap).
    """
    _validate_alphabet_size(m)
    if not 0.0 <= d_loc <= _LOCAL_BOUND_LIMIT * (1.0 + _REL_TOL):
        raise ApplicabilityError(
            f"local-distance bound requires d_loc <= 1/e, got {d_loc!r}"
        )
    return float(-m * xlogy(d_loc, d_loc))


@dataclass(frozen=True)
class FiniteBoundReport:
    """Exact entropy gap plus every applicable bound for one pair of pmfs."""

    d_tv: float
    d_loc: float
    ratio: float | None
    alphabet_size: int
    tv_bound: float
    tv_local_bound: float
    ratio_condition_holds: bool
    tv_local_refined: float | None
    local_bound: float | None
    exact_gap: float | None

    def __post_init__(self) -> None:
        if self.tv_local_bound > self.tv_bound + _REL_TOL:
            raise InternalCheckError("two-distance bound exceeded the one-distance bound")
        if (self.tv_local_refined is not None) != self.ratio_condition_holds:
            raise InternalCheckError(
                "refined bound must be present exactly when the ratio condition holds"
            )
        if self.exact_gap is not None:
            for bound in (
                self.tv_bound,
                self.tv_local_bound,
                self.tv_local_refined,
                self.local_bound,
            ):
                if bound is not None and self.exact_gap > bound + _REL_TOL:
                    raise InternalCheckError(
                        f"exact gap {self.exact_gap!r} exceeds bound {bound!r}"
                    )


def entropy_gap_report(
    p_x: FiniteDistribution, p_y: FiniteDistribution
) -> FiniteBoundReport:
    """Distances, exact |H(X) - H(Y)|, and all applicable bounds for a pair."""
    symbols, _, _ = unify_support(p_x, p_y)
    m = len(symbols)
    pair = distance_pair(p_x, p_y)
    gap = abs(entropy(p_x) - entropy(p_y))
    tvb = tv_gap_bound(pair.d_tv, m)
    tlb = tv_local_gap_bound(pair.d_tv, pair.d_loc, m)
    condition = bounded_ratio_condition(p_x, p_y)
    refined = (
        tv_local_gap_bound_refined(pair.d_tv, pair.d_loc, m) if condition else None
    )
    local = None
    if pair.d_loc <= _LOCAL_BOUND_LIMIT * (1.0 + _REL_TOL):
        local = local_gap_bound(pair.d_loc, m)
    return FiniteBoundReport(
        d_tv=pair.d_tv,
        d_loc=pair.d_loc,
        ratio=pair.alpha,
        alphabet_size=m,
        tv_bound=tvb,
        tv_local_bound=tlb,
        ratio_condition_holds=condition,
        tv_local_refined=refined,
        local_bound=local,
        exact_gap=gap,
    )


@dataclass(frozen=True)
class NearUniformSpec:
    """A pmf written as P(a_i) = (1 + signs_i * devs_i) / M around uniform.

    ``signs`` are +-1, ``devs`` are non-negative deviation magnitudes, and
    the signed deviations must cancel so the masses sum to one. The derived
    ``peak_ratio`` = dev_max / dev_avg lies in [1, M/2] and controls how much
    the two-distance bound improves on the one-distance bound.
    """

    signs: tuple
    devs: tuple

    def __post_init__(self) -> None:
        signs = tuple(int(u) for u in self.signs)
        devs = tuple(float(x) for x in self.devs)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "devs", devs)
        m = len(signs)
        if m < 2 or m % 2 != 0:
            raise ConstraintError(f"alphabet size must be even and >= 2, got {m}")
        if len(devs) != m:
            raise ConstraintError("signs and devs must have equal length")
        if any(u not in (-1, 1) for u in signs):
            raise ConstraintError("every sign must be +1 or -1")
        if any(x < 0.0 for x in devs):
            raise ConstraintError("deviation magnitudes must be non-negative")
        signed_sum = sum(u * x for u, x in zip(signs, devs))
        if abs(signed_sum) > 1e-12:
            raise ConstraintError(
                f"signed deviations must cancel, got sum {signed_sum!r}"
            )
        for u, x in zip(signs, devs):
            if not 0.0 <= 1.0 + u * x <= m:
                raise ConstraintError(f"mass factor 1 + ({u})*({x}) outside [0, M]")
        ratio = self.peak_ratio
        if ratio is not None and not 1.0 - _REL_TOL <= ratio <= m / 2.0 + _REL_TOL:
            raise ConstraintError(f"peak-to-average ratio {ratio!r} outside [1, M/2]")

    @property
    def size(self) -> int:
        return len(self.signs)

    @property
    def dev_avg(self) -> float:
        return sum(self.devs) / len(self.devs)

    @property
    def dev_max(self) -> float:
        return max(self.devs)

    @property
    def peak_ratio(self) -> float | None:
        """dev_max / dev_avg, or None for the exactly uniform spec."""
        avg = self.dev_avg
        return None if avg == 0.0 else self.dev_max / avg


def near_uniform_pmf(spec: NearUniformSpec) -> FiniteDistribution:
    """Materialize the pmf P(a_i) = (1 + signs_i * devs_i) / M on {0, ..., M-1}."""
    m = spec.size
    u = np.array(spec.signs, dtype=np.float64)
    x = np.array(spec.devs, dtype=np.float64)
    return FiniteDistribution(range(m), (1.0 + u * x) / m)


def near_uniform_entropy_lower_bound(spec: NearUniformSpec) -> float:
    """Certified lower bound on the entropy of a near-uniform pmf.

    Comparing against the uniform law, d_tv = dev_avg/2 and the distance
    ratio is 2 peak_ratio / M, so the two-distance bound yields

        H(X) >= log M - (dev_avg/2) log(2 peak_ratio - 1) - h(dev_avg/2).

    For the exactly uniform spec the bound is log M itself.
    """
    m = spec.size
    avg = spec.dev_avg
    if avg == 0.0:
        return math.log(m)
    ratio = spec.peak_ratio
    return (
        math.log(m)
        - (avg / 2.0) * math.log(2.0 * ratio - 1.0)
        - binary_entropy(avg / 2.0)
    )


def mutual_information_bound(joint: FiniteDistribution, dims: tuple[int, int]) -> float:
    """Upper bound on I(X;Y) from the distances between the joint law and the
    product of its marginals.

    I(X;Y) = H(product) - H(joint), so the two-distance entropy-gap bound on
    the pair (joint, product) with M = Mx * My applies. ``joint`` must be
    indexed by the full grid of (i, j) pairs.
    """
    mx, my = dims
    if not (isinstance(mx, (int, np.integer)) and isinstance(my, (int, np.integer))):
        raise DomainError("dims must be a pair of integers")
    if mx < 1 or my < 1 or joint.size != mx * my:
        raise DomainError(f"joint alphabet size {joint.size} != Mx*My = {mx * my}")
    try:
        rows = np.array([s[0] for s in joint.symbols], dtype=np.intp)
        cols = np.array([s[1] for s in joint.symbols], dtype=np.intp)
    except (TypeError, IndexError) as exc:
        raise DomainError("joint symbols must be (i, j) pairs") from exc
    if set(joint.symbols) != {(i, j) for i in range(mx) for j in range(my)}:
        raise DomainError("joint symbols must cover the full (i, j) grid")
    px = np.zeros(mx)
    py = np.zeros(my)
    np.add.at(px, rows, joint.probs)
    np.add.at(py, cols, joint.probs)
    product = FiniteDistribution(joint.symbols, px[rows] * py[cols])
    pair = distance_pair(joint, product)
    if pair.d_tv == 0.0:
        return 0.0
    return tv_local_gap_bound(pair.d_tv, pair.d_loc, mx * my)
