"""Catalog of concrete statistical psi-kernels and their closed forms.

Each family defines a kernel psi(x, t) whose weighted-sum sign change is the
estimator of interest: expectiles, Mathieu-type location kernels, and the
likelihood-equation kernels of six distributions (normal variance, Beta shape
parameters, Gamma, Lomax, lognormal location, Laplace scale).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import DomainError, InvalidParameter, MissingClosedForm
from .kernel import OpenInterval, PsiKernel, WeightedSample

FAMILY_IDS = (
    "expectile",
    "mathieu",
    "normal_var",
    "beta_alpha",
    "beta_beta",
    "gamma_shape",
    "gamma_rate",
    "lomax_rate_lambda",
    "lomax_shape_alpha",
    "lognormal_mu",
    "laplace_scale",
)

# Families whose estimator has an elementary closed form.
CLOSED_FORM_IDS = (
    "normal_var",
    "beta_alpha",
    "gamma_rate",
    "lomax_shape_alpha",
    "lognormal_mu",
    "laplace_scale",
)

_REAL_LINE = OpenInterval(-math.inf, math.inf)
_POSITIVE = OpenInterval(0.0, math.inf)


@dataclass(frozen=True)
class FamilySpec:
    """A family identifier plus its fixed (known) parameters.

    params keys by family:
      expectile: alpha in (0,1)
      mathieu: none (supply f, an increasing function with f(0)=0)
      normal_var: m (known mean)
      beta_alpha: beta > 0
      beta_beta: alpha > 0
      gamma_shape: lambda > 0 (known rate)
      gamma_rate: p > 0 (known shape)
      lomax_rate_lambda: alpha > 0 (known shape)
      lomax_shape_alpha: lambda > 0 (known rate)
      lognormal_mu: sigma2 > 0 (known variance)
      laplace_scale: mu (known location)
    """

    family: str
    params: Mapping[str, float] = field(default_factory=dict)
    f: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.family not in FAMILY_IDS:
            raise InvalidParameter(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", dict(self.params))
        _VALIDATORS[self.family](self)

    def param(self, key: str) -> float:
        return float(self.params[key])


def _require(spec: FamilySpec, key: str, ok: Callable[[float], bool], what: str) -> float:
    if key not in spec.params:
        raise InvalidParameter(f"{spec.family} requires parameter {key!r}")
    v = float(spec.params[key])
    if not (math.isfinite(v) and ok(v)):
        raise InvalidParameter(f"{spec.family}: {key}={v!r} must be {what}")
    return v


def _validate_expectile(spec):
    _require(spec, "alpha", lambda v: 0.0 < v < 1.0, "in (0,1)")


def _validate_mathieu(spec):
    if spec.f is None:
        raise InvalidParameter("mathieu requires an increasing function f with f(0)=0")
    f = spec.f
    if abs(f(0.0)) > 1e-12:
        raise InvalidParameter("mathieu: f(0) must be 0")
    grid = [0.05 * k for k in range(0, 201)]
    vals = [f(u) for u in grid]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise InvalidParameter("mathieu: f must be strictly increasing on [0, 10]")


def _validate_normal_var(spec):
    _require(spec, "m", lambda v: True, "finite")


def _validate_positive(key):
    def check(spec):
        _require(spec, key, lambda v: v > 0.0, "> 0")

    return check


def _validate_laplace(spec):
    _require(spec, "mu", lambda v: True, "finite")


_VALIDATORS = {
    "expectile": _validate_expectile,
    "mathieu": _validate_mathieu,
    "normal_var": _validate_normal_var,
    "beta_alpha": _validate_positive("beta"),
    "beta_beta": _validate_positive("alpha"),
    "gamma_shape": _validate_positive("lambda"),
    "gamma_rate": _validate_positive("p"),
    "lomax_rate_lambda": _validate_positive("alpha"),
    "lomax_shape_alpha": _validate_positive("lambda"),
    "lognormal_mu": _validate_positive("sigma2"),
    "laplace_scale": _validate_laplace,
}


# Bernoulli numbers B_2, B_4, ..., B_14 for the asymptotic expansion.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def digamma(x: float) -> float:
    """Logarithmic derivative of the Gamma function.

    Upward recurrence until x >= 6, then the asymptotic series
    ln x - 1/(2x) - sum_k B_{2k}/(2k x^{2k}) truncated after B_14; the
    switchover keeps the truncation error below 1e-13.
    """
    if not (x > 0.0):
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    acc = 0.0
    while x < 6.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    total = math.log(x) - 0.5 / x
    power = inv2
    for k, b2k in enumerate(_BERNOULLI, start=1):
        total -= b2k / (2.0 * k) * power
        power *= inv2
    return total + acc


def _finite(x: float) -> bool:
    return math.isfinite(x)


def _ln_one_minus_pow(x: float, beta: float) -> float:
    """ln(1 - x^beta) for x in (0,1), stable as x^beta -> 1."""
    return math.log1p(-math.exp(beta * math.log(x)))


def make_kernel(spec: FamilySpec) -> PsiKernel:
    """Build the PsiKernel for a family, with closed-form theta1 and the
    partial derivative in t where elementary."""
    fam = spec.family

    if fam == "expectile":
        alpha = spec.param("alpha")

        def ev(x, t):
            if x > t:
                return alpha * (x - t)
            if x < t:
                return (1.0 - alpha) * (x - t)
            return 0.0

        def d2(x, t):
            if x > t:
                return -alpha
            if x < t:
                return -(1.0 - alpha)
            return -0.5

        return PsiKernel(_REAL_LINE, ev, theta1=lambda x: x, d2=d2,
                         domain_check=_finite, name="expectile")

    if fam == "mathieu":
        f = spec.f

        def ev(x, t):
            if x == t:
                return 0.0
            return math.copysign(f(abs(x - t)), x - t)

        return PsiKernel(_REAL_LINE, ev, theta1=lambda x: x,
                         domain_check=_finite, name="mathieu")

    if fam == "normal_var":
        m = spec.param("m")

        def ev(x, t):
            return ((x - m) ** 2 - t) / (2.0 * t * t)

        def d2(x, t):
            return (t - 2.0 * (x - m) ** 2) / (2.0 * t ** 3)

        return PsiKernel(_POSITIVE, ev, theta1=lambda x: (x - m) ** 2, d2=d2,
                         domain_check=lambda x: _finite(x) and x != m,
                         name="normal_var")

    if fam == "beta_alpha":
        beta = spec.param("beta")

        def ev(x, t):
            return 1.0 / t + _ln_one_minus_pow(x, beta)

        return PsiKernel(_POSITIVE, ev,
                         theta1=lambda x: -1.0 / _ln_one_minus_pow(x, beta),
                         d2=lambda x, t: -1.0 / (t * t),
                         domain_check=lambda x: 0.0 < x < 1.0,
                         name="beta_alpha")

    if fam == "beta_beta":
        alpha = spec.param("alpha")

        def ev(x, t):
            lx = math.log(x)
            u = math.exp(t * lx)  # x^t
            # 1 - x^t via expm1 to keep precision as t -> 0
            return 1.0 / t + lx * (1.0 - alpha * u) / (-math.expm1(t * lx))

        return PsiKernel(_POSITIVE, ev,
                         domain_check=lambda x: 0.0 < x < 1.0,
                         name="beta_beta")

    if fam == "gamma_shape":
        lam = spec.param("lambda")

        def ev(x, t):
            return -digamma(t) + math.log(x) + math.log(lam)

        return PsiKernel(_POSITIVE, ev,
                         domain_check=lambda x: x > 0.0,
                         name="gamma_shape")

    if fam == "gamma_rate":
        p = spec.param("p")

        def ev(x, t):
            return p / t - x

        return PsiKernel(_POSITIVE, ev, theta1=lambda x: p / x,
                         d2=lambda x, t: -p / (t * t),
                         domain_check=lambda x: x > 0.0,
                         name="gamma_rate")

    if fam == "lomax_rate_lambda":
        alpha = spec.param("alpha")

        def ev(x, t):
            return (alpha * x - t) / (t * (t + x))

        return PsiKernel(_POSITIVE, ev, theta1=lambda x: alpha * x,
                         domain_check=lambda x: x > 0.0,
                         name="lomax_rate_lambda")

    if fam == "lomax_shape_alpha":
        lam = spec.param("lambda")

        def ev(x, t):
            return 1.0 / t - math.log1p(x / lam)

        return PsiKernel(_POSITIVE, ev,
                         theta1=lambda x: 1.0 / math.log1p(x / lam),
                         d2=lambda x, t: -1.0 / (t * t),
                         domain_check=lambda x: x > 0.0,
                         name="lomax_shape_alpha")

    if fam == "lognormal_mu":
        sigma2 = spec.param("sigma2")

        def ev(x, t):
            return (math.log(x) - t) / sigma2

        return PsiKernel(_REAL_LINE, ev, theta1=lambda x: math.log(x),
                         d2=lambda x, t: -1.0 / sigma2,
                         domain_check=lambda x: x > 0.0,
                         name="lognormal_mu")

    if fam == "laplace_scale":
        mu = spec.param("mu")

        def ev(x, t):
            return abs(x - mu) / (t * t) - 1.0 / t

        def d2(x, t):
            return -2.0 * abs(x - mu) / t ** 3 + 1.0 / (t * t)

        return PsiKernel(_POSITIVE, ev, theta1=lambda x: abs(x - mu), d2=d2,
                         domain_check=lambda x: _finite(x) and x != mu,
                         name="laplace_scale")

    raise InvalidParameter(f"unknown family {fam!r}")


def _weighted_mean(values, weights) -> float:
    num = 0.0
    den = 0.0
    for v, w in zip(values, weights):
        num += w * v
        den += w
    return num / den


def has_closed_form(family: str) -> bool:
    return family in CLOSED_FORM_IDS


def closed_form_estimate(spec: FamilySpec, sample: WeightedSample) -> float:
    """Elementary estimator formula where one exists.

    With nonuniform weights this returns the weighted generalization
    (weighted averages in place of 1/n sums); callers that care should flag
    that in their reports.  Raises MissingClosedForm for families whose
    estimating equation has no elementary solution.
    """
    kernel = make_kernel(spec)
    for x in sample.xs:
        kernel.check_observation(x)
    xs, ws = sample.xs, sample.weights
    fam = spec.family

    if fam == "normal_var":
        m = spec.param("m")
        return _weighted_mean([(x - m) ** 2 for x in xs], ws)
    if fam == "beta_alpha":
        beta = spec.param("beta")
        return -1.0 / _weighted_mean([_ln_one_minus_pow(x, beta) for x in xs], ws)
    if fam == "gamma_rate":
        return spec.param("p") / _weighted_mean(xs, ws)
    if fam == "lomax_shape_alpha":
        lam = spec.param("lambda")
        return 1.0 / _weighted_mean([math.log1p(x / lam) for x in xs], ws)
    if fam == "lognormal_mu":
        return _weighted_mean([math.log(x) for x in xs], ws)
    if fam == "laplace_scale":
        mu = spec.param("mu")
        return _weighted_mean([abs(x - mu) for x in xs], ws)

    raise MissingClosedForm(f"{fam} has no elementary estimator formula")


def beta_alpha_bounds(alpha: float, sample: WeightedSample) -> tuple[float, float]:
    """Bracket for the Beta shape-beta estimator at known alpha.

    With L = mean of ln x_i (negative for x_i in (0,1)), the estimator lies in
    [-min(alpha,1)/L, -max(alpha,1)/L]; the bounds coincide at alpha=1.
    Requires uniform weights.
    """
    if not (alpha > 0.0):
        raise InvalidParameter(f"alpha={alpha!r} must be > 0")
    if len(set(sample.weights)) != 1:
        raise InvalidParameter("bounds require uniform weights")
    for x in sample.xs:
        if not (0.0 < x < 1.0):
            raise DomainError(f"observation {x!r} outside (0,1)")
    mean_ln = sum(math.log(x) for x in sample.xs) / len(sample.xs)
    lower = -min(alpha, 1.0) / mean_ln
    upper = -max(alpha, 1.0) / mean_ln
    return (lower, upper)
