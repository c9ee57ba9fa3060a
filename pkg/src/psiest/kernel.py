"""Core domain types: open parameter intervals, psi-kernels, weighted samples.

A psi-kernel is a map psi(x, t) over observations x and parameters t in an
open interval Theta such that, for each admissible x, t -> psi(x, t) changes
sign from positive to negative somewhere in Theta.  The weighted estimator is
the point of sign change of t -> sum_i lambda_i * psi(x_i, t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import DomainError, InvalidArgument, MissingClosedForm

# Magnitude cap applied per term: kernels like Beta/Lomax blow up toward the
# endpoints of Theta, but the limit sign is always definite.
_CAP = 1e300


@dataclass(frozen=True)
class OpenInterval:
    """Nondegenerate open interval (lo, hi); endpoints may be +-inf."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidArgument(f"degenerate interval ({self.lo}, {self.hi})")

    def contains(self, t: float) -> bool:
        return self.lo < t < self.hi

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def midpoint_seed(self) -> float:
        """A reasonable interior starting point for bracket searches."""
        if self.bounded:
            return 0.5 * (self.lo + self.hi)
        if math.isfinite(self.lo):
            return self.lo + 1.0
        if math.isfinite(self.hi):
            return self.hi - 1.0
        return 0.0


def _always_admissible(x: float) -> bool:
    return True


@dataclass(frozen=True)
class PsiKernel:
    """A kernel psi(x, t) on X x Theta with optional closed forms.

    theta1, when present, is the single-observation estimator x -> theta_1(x);
    d2, when present, is the partial derivative of psi in its second variable.
    """

    theta: OpenInterval
    eval: Callable[[float, float], float]
    theta1: Optional[Callable[[float], float]] = None
    d2: Optional[Callable[[float, float], float]] = None
    domain_check: Callable[[float], bool] = _always_admissible
    name: str = "kernel"

    def check_observation(self, x: float) -> None:
        if not self.domain_check(x):
            raise DomainError(f"observation {x!r} outside X for {self.name}")

    def check_parameter(self, t: float) -> None:
        if not self.theta.contains(t):
            raise DomainError(f"parameter {t!r} outside Theta for {self.name}")


@dataclass(frozen=True)
class WeightedSample:
    """Observations with nonnegative weights, not all zero."""

    xs: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.xs) != len(self.weights):
            raise InvalidArgument("xs and weights must have equal length")
        if len(self.xs) == 0:
            raise InvalidArgument("sample must contain at least one observation")
        if any(w < 0 for w in self.weights):
            raise InvalidArgument("weights must be nonnegative")
        if not any(w > 0 for w in self.weights):
            raise InvalidArgument("at least one weight must be positive")

    @classmethod
    def uniform(cls, xs: Sequence[float]) -> "WeightedSample":
        return cls(tuple(xs), tuple(uniform_weights(len(xs))))

    def __len__(self) -> int:
        return len(self.xs)

    def concat(self, other: "WeightedSample") -> "WeightedSample":
        return WeightedSample(self.xs + other.xs, self.weights + other.weights)


def uniform_weights(n: int) -> list[float]:
    """n copies of 1.0."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    return [1.0] * n


def _clamp(v: float) -> float:
    if v > _CAP:
        return _CAP
    if v < -_CAP:
        return -_CAP
    return v


def weighted_sum(
    kernel: PsiKernel,
    sample: WeightedSample,
    t: float,
    compensated: bool = False,
) -> float:
    """sum_i lambda_i * psi(x_i, t), summed left to right.

    Summation order is fixed for reproducibility of sign decisions near zero;
    pass compensated=True for Kahan summation when accuracy matters more.
    Individual terms are clamped to +-1e300 so endpoint blowups keep their
    limit sign instead of producing inf - inf.
    """
    kernel.check_parameter(t)
    total = 0.0
    comp = 0.0
    for x, w in zip(sample.xs, sample.weights):
        kernel.check_observation(x)
        if w == 0.0:
            continue
        term = _clamp(w * _clamp(kernel.eval(x, t)))
        if compensated:
            y = term - comp
            s = total + y
            comp = (s - total) - y
            total = s
        else:
            total += term
    return _clamp(total)


def empirical_theta1_hull(
    kernel: PsiKernel, witnesses: Sequence[float]
) -> Optional[OpenInterval]:
    """Finite-witness approximation of the interior of the hull of theta1(X).

    Returns the open interval spanned by the theta1 values of the witnesses,
    or None when they all coincide (the hull is empty).
    """
    if kernel.theta1 is None:
        raise MissingClosedForm(
            f"{kernel.name} has no closed-form theta1; solve per observation first"
        )
    if not witnesses:
        raise InvalidArgument("witnesses must be nonempty")
    vals = []
    for x in witnesses:
        kernel.check_observation(x)
        vals.append(kernel.theta1(x))
    lo, hi = min(vals), max(vals)
    if lo == hi:
        return None
    return OpenInterval(lo, hi)
