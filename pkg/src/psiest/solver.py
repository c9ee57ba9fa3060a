"""Sign-change location on open intervals and generalized left inverses.

The estimator is the point of sign change (decreasing type) of
t -> sum_i lambda_i * psi(x_i, t).  The kernel need not be continuous, so
everything here works on signs only: geometric bracket expansion inside the
open interval, then bisection on the predicate "sum > 0".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import OutOfRange, SolverError
from .kernel import OpenInterval, PsiKernel, WeightedSample, weighted_sum

CONVERGED = "Converged"
NO_POSITIVE_PART = "NoPositivePart"
NO_NEGATIVE_PART = "NoNegativePart"
MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class SolverConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_expand: int = 200
    max_bisect: int = 200
    seed_guess: Optional[float] = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")

    def width_tol(self, t: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(t))


@dataclass(frozen=True)
class SignChangeResult:
    theta: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    residual: float
    status: str

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


def _step_toward(t: float, endpoint: float, delta: float) -> float:
    """One expansion step from t toward an interval endpoint.

    Finite endpoint: halve the remaining distance (stays strictly inside).
    Infinite endpoint: step outward by a doubling delta.
    """
    if math.isfinite(endpoint):
        return 0.5 * (t + endpoint)
    return t + math.copysign(delta, endpoint)


def _solve_predicate(
    positive: Callable[[float], bool],
    theta: OpenInterval,
    cfg: SolverConfig,
) -> SignChangeResult:
    """Locate the boundary where a decreasing-type predicate flips True->False.

    positive(t) must be True strictly below the target and False strictly
    above it (a value of exactly zero counts as the False side).
    """
    seed = cfg.seed_guess if (
        cfg.seed_guess is not None and theta.contains(cfg.seed_guess)
    ) else theta.midpoint_seed()

    lo_bracket = None  # largest t seen with positive(t)
    hi_bracket = None  # smallest t seen with not positive(t)
    if positive(seed):
        lo_bracket = seed
    else:
        hi_bracket = seed

    evals = 1
    if lo_bracket is None:
        t, delta = seed, max(1.0, abs(seed))
        for _ in range(cfg.max_expand):
            t = _step_toward(t, theta.lo, delta)
            delta *= 2.0
            evals += 1
            if positive(t):
                lo_bracket = t
                break
            hi_bracket = min(hi_bracket, t)
        if lo_bracket is None:
            return SignChangeResult(
                math.nan, math.nan, hi_bracket, evals, math.nan, NO_POSITIVE_PART
            )
    if hi_bracket is None:
        t, delta = seed, max(1.0, abs(seed))
        for _ in range(cfg.max_expand):
            t = _step_toward(t, theta.hi, delta)
            delta *= 2.0
            evals += 1
            if not positive(t):
                hi_bracket = t
                break
            lo_bracket = max(lo_bracket, t)
        if hi_bracket is None:
            return SignChangeResult(
                math.nan, lo_bracket, math.nan, evals, math.nan, NO_NEGATIVE_PART
            )

    a, b = lo_bracket, hi_bracket
    iterations = 0
    while b - a > cfg.width_tol(0.5 * (a + b)):
        if iterations >= cfg.max_bisect:
            mid = 0.5 * (a + b)
            return SignChangeResult(mid, a, b, evals + iterations, math.nan, MAX_ITERATIONS)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            break  # bracket exhausted at double precision
        if positive(mid):
            a = mid
        else:
            b = mid
        iterations += 1
    theta_hat = 0.5 * (a + b)
    return SignChangeResult(theta_hat, a, b, evals + iterations, math.nan, CONVERGED)


def solve_sign_change(
    kernel: PsiKernel,
    sample: WeightedSample,
    cfg: SolverConfig = SolverConfig(),
) -> SignChangeResult:
    """Point of sign change of t -> sum_i lambda_i psi(x_i, t) on Theta.

    A non-converged status means the required sign was never observed
    (the kernel violates the sign-change premise numerically, or Theta is
    mis-specified), or bisection stalled.  The residual is reported for
    diagnostics only; it is never used as a convergence criterion since the
    kernel may jump across zero.
    """
    for x in sample.xs:
        kernel.check_observation(x)

    def positive(t: float) -> bool:
        return weighted_sum(kernel, sample, t) > 0.0

    res = _solve_predicate(positive, kernel.theta, cfg)
    if res.converged:
        residual = weighted_sum(kernel, sample, res.theta)
        res = SignChangeResult(
            res.theta, res.bracket_lo, res.bracket_hi, res.iterations, residual, res.status
        )
    return res


def theta1(kernel: PsiKernel, x: float, cfg: SolverConfig = SolverConfig()) -> float:
    """Single-observation estimator: the closed form when available, else a
    sign-change solve on the singleton sample."""
    kernel.check_observation(x)
    if kernel.theta1 is not None:
        return kernel.theta1(x)
    res = solve_sign_change(kernel, WeightedSample((x,), (1.0,)), cfg)
    if not res.converged:
        raise SolverError(f"theta1 solve failed for x={x!r}: {res.status}", res)
    return res.theta


def generalized_left_inverse(
    f: Callable[[float], float],
    theta: OpenInterval,
    y: float,
    cfg: SolverConfig = SolverConfig(),
) -> float:
    """Monotone extension of the inverse of a strictly increasing f.

    For y in f(Theta) this returns the preimage; for y inside a jump gap
    [f(t0-), f(t0+)] it returns t0.  Computed by bisection on the predicate
    f(t) < y, which needs no continuity.  Raises OutOfRange when y falls
    outside the convex hull of f(Theta) beyond 1e-9 * (1 + |y|).
    """

    def below(t: float) -> bool:
        return f(t) < y

    res = _solve_predicate(below, theta, cfg)
    slack = 1e-9 * (1.0 + abs(y))
    if res.status == NO_POSITIVE_PART:
        # Never saw f(t) < y: y is at or below the infimum of f.
        t_low = res.bracket_hi
        if f(t_low) - y <= slack:
            return t_low
        raise OutOfRange(f"{y!r} below the range of f")
    if res.status == NO_NEGATIVE_PART:
        t_high = res.bracket_lo
        if y - f(t_high) <= slack:
            return t_high
        raise OutOfRange(f"{y!r} above the range of f")
    if not res.converged:
        raise SolverError(f"left-inverse bisection stalled at y={y!r}", res)
    return res.theta
