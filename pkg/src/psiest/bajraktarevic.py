"""Estimators of the form psi(x,t) = p(x) (F(x) - f(t)) and their algebra.

These kernels admit the closed form  theta = f^(-1)( sum w p F / sum w p )
through the generalized left inverse of f.  Two such kernels produce
identical estimators exactly when their f's are Mobius transforms of each
other; this module provides the transform, a coefficient fitter, the 4x4
determinant test, and a finite-difference Schwarzian derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateDerivative,
    DegenerateProbes,
    DomainError,
    InvalidArgument,
    SignViolation,
)
from .kernel import OpenInterval, PsiKernel, WeightedSample
from .solver import SolverConfig, generalized_left_inverse


def _probe_grid(theta: OpenInterval, n: int = 257) -> list[float]:
    """Equispaced probes strictly inside theta; infinite endpoints are
    clamped to a window of width 200 next to the finite one (or around 0)."""
    lo, hi = theta.lo, theta.hi
    if not math.isfinite(lo):
        lo = (hi - 200.0) if math.isfinite(hi) else -100.0
    if not math.isfinite(hi):
        hi = lo + 200.0
    margin = 1e-6 * (hi - lo)
    lo, hi = lo + margin, hi - margin
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


@dataclass(frozen=True)
class BajraktarevicSpec:
    """The triple (f, p, F) on an open interval.

    f must be strictly increasing on theta (validated on a probe grid),
    p positive on admissible observations, and F must map observations into
    the convex hull of f(theta).  fprime is optional and only used to supply
    a closed-form parameter derivative to the kernel.
    """

    f: Callable[[float], float]
    p: Callable[[float], float]
    F: Callable[[float], float]
    theta: OpenInterval
    fprime: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        # validated by sampling; tolerate flat stretches from rounding (e.g.
        # Mobius transforms saturating at double precision) but reject any
        # decrease and overall constancy
        probes = _probe_grid(self.theta, 33)
        vals = [self.f(t) for t in probes]
        if vals[-1] <= vals[0] or any(
            b < a - 1e-13 * max(1.0, abs(a)) for a, b in zip(vals, vals[1:])
        ):
            raise InvalidArgument("f must be strictly increasing on theta")


@dataclass(frozen=True)
class MobiusCoefficients:
    """Coefficients of g = (a f + b) / (c f + d) with ad - bc != 0."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0.0:
            raise InvalidArgument("ad - bc must be nonzero")

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    def transform(self, v: float) -> float:
        den = self.c * v + self.d
        if den == 0.0:
            raise DomainError(f"Mobius denominator vanishes at {v!r}")
        return (self.a * v + self.b) / den


def as_kernel(spec: BajraktarevicSpec, cfg: SolverConfig = SolverConfig()) -> PsiKernel:
    """Kernel view: eval(x,t) = p(x) (F(x) - f(t)).

    theta1 goes through the generalized left inverse of f, so it is correct
    even when f jumps.  d2 is -p(x) f'(t) when fprime was supplied.
    """

    def ev(x: float, t: float) -> float:
        return spec.p(x) * (spec.F(x) - spec.f(t))

    def t1(x: float) -> float:
        return generalized_left_inverse(spec.f, spec.theta, spec.F(x), cfg)

    d2 = None
    if spec.fprime is not None:
        fp = spec.fprime

        def d2(x: float, t: float) -> float:
            return -spec.p(x) * fp(t)

    def admissible(x: float) -> bool:
        try:
            return spec.p(x) > 0.0 and math.isfinite(spec.F(x))
        except (ValueError, OverflowError, ZeroDivisionError):
            return False

    return PsiKernel(spec.theta, ev, theta1=t1, d2=d2,
                     domain_check=admissible, name="bajraktarevic")


def estimate(
    spec: BajraktarevicSpec,
    sample: WeightedSample,
    cfg: SolverConfig = SolverConfig(),
) -> float:
    """Closed form: f^(-1) of the p-weighted average of F over the sample."""
    num = 0.0
    den = 0.0
    for x, w in zip(sample.xs, sample.weights):
        if w == 0.0:
            continue
        px = spec.p(x)
        if px <= 0.0:
            raise DomainError(f"p({x!r}) = {px!r} must be positive")
        num += w * px * spec.F(x)
        den += w * px
    if den <= 0.0:
        raise InvalidArgument("total p-weight must be positive")
    return generalized_left_inverse(spec.f, spec.theta, num / den, cfg)


def apply_mobius(
    spec: BajraktarevicSpec,
    m: MobiusCoefficients,
    probes: int = 257,
) -> BajraktarevicSpec:
    """Transformed spec (g, q, G) with g=(af+b)/(cf+d), G=(aF+b)/(cF+d),
    q=(cF+d) p; it produces the same estimator as the original.

    Requires ad > bc and c f + d of constant sign on the probe grid; a
    uniformly negative denominator is normalized by negating all four
    coefficients (which leaves the transform unchanged).
    """
    if m.determinant <= 0.0:
        raise InvalidArgument("ad - bc must be positive for an increasing g")
    grid = _probe_grid(spec.theta, probes)
    dens = [m.c * spec.f(t) + m.d for t in grid]
    if any(v == 0.0 for v in dens) or (min(dens) < 0.0 < max(dens)):
        raise SignViolation("c*f(t)+d changes sign on the probe grid")
    a, b, c, d = m.a, m.b, m.c, m.d
    if dens[0] < 0.0:
        a, b, c, d = -a, -b, -c, -d

    f, p, F = spec.f, spec.p, spec.F

    def g(t: float) -> float:
        ft = f(t)
        return (a * ft + b) / (c * ft + d)

    def G(x: float) -> float:
        Fx = F(x)
        return (a * Fx + b) / (c * Fx + d)

    def q(x: float) -> float:
        return (c * F(x) + d) * p(x)

    gprime = None
    if spec.fprime is not None:
        det = a * d - b * c
        fp = spec.fprime

        def gprime(t: float) -> float:
            den = c * f(t) + d
            return det * fp(t) / (den * den)

    return BajraktarevicSpec(g, q, G, spec.theta, fprime=gprime)


def schwarzian(
    h: Callable[[float], float], s: float, step: Optional[float] = None
) -> float:
    """Finite-difference Schwarzian  h'''/h' - (3/2)(h''/h')^2  at s.

    Central stencils of width 5; default step max(1e-2, 1e-2 |s|).  Raises
    DegenerateDerivative when the first derivative estimate is below 1e-8.
    """
    e = step if step is not None else max(1e-2, 1e-2 * abs(s))
    hm2, hm1, h0, hp1, hp2 = h(s - 2 * e), h(s - e), h(s), h(s + e), h(s + 2 * e)
    d1 = (hp1 - hm1) / (2.0 * e)
    if abs(d1) < 1e-8:
        raise DegenerateDerivative(f"|h'({s!r})| below threshold")
    d2 = (hp1 - 2.0 * h0 + hm1) / (e * e)
    d3 = (hp2 - 2.0 * hp1 + 2.0 * hm1 - hm2) / (2.0 * e ** 3)
    r = d2 / d1
    return d3 / d1 - 1.5 * r * r


def determinant_test(
    f_vals: Sequence[float], g_vals: Sequence[float]
) -> float:
    """Determinant of the 4x4 matrix with rows (1, f_i, g_i, f_i g_i) at four
    probes; it vanishes exactly when g is a Mobius transform of f there."""
    if len(f_vals) != 4 or len(g_vals) != 4:
        raise InvalidArgument("determinant test needs exactly four probes")
    rows = [[1.0, fv, gv, fv * gv] for fv, gv in zip(f_vals, g_vals)]
    return float(np.linalg.det(np.array(rows, dtype=float)))


def determinant_scale(f_vals: Sequence[float], g_vals: Sequence[float]) -> float:
    """Scale for judging a determinant value: the product of row norms."""
    out = 1.0
    for fv, gv in zip(f_vals, g_vals):
        out *= math.sqrt(1.0 + fv * fv + gv * gv + (fv * gv) ** 2)
    return out


def mobius_fit(
    f_vals: Sequence[tuple[float, float]],
    g_vals: Sequence[tuple[float, float]],
) -> Optional[MobiusCoefficients]:
    """Fit g = (a f + b)/(c f + d) from probe pairs, or None when no Mobius
    relation explains all probes.

    Three anchors (smallest, median, largest f) give a 3x4 homogeneous system
    whose nullspace is the coefficient vector; the fit is accepted only if
    the residual |(c f + d) g - (a f + b)| stays within 1e-8 of scale at
    every probe.
    """
    if len(f_vals) < 4 or len(g_vals) != len(f_vals):
        raise InvalidArgument("need at least 4 paired probes")
    fs = [fv for _, fv in f_vals]
    gs = [gv for _, gv in g_vals]
    if len(set(fs)) < 4:
        raise DegenerateProbes("probe f-values must be distinct")

    order = sorted(range(len(fs)), key=lambda i: fs[i])
    anchors = [order[0], order[len(order) // 2], order[-1]]
    rows = [[fs[i], 1.0, -fs[i] * gs[i], -gs[i]] for i in anchors]
    mat = np.array(rows, dtype=float)
    # 3x4 system: the nullspace is at least one-dimensional and vt[-1] spans
    # it; a vanishing third singular value means the anchors underdetermine
    # the coefficients.
    _, sv, vt = np.linalg.svd(mat)
    if sv[2] <= 1e-12 * max(sv[0], 1.0):
        raise DegenerateProbes("anchor system is rank-deficient")
    coeffs = vt[-1]
    # fix the overall sign deterministically
    pivot = int(np.argmax(np.abs(coeffs)))
    if coeffs[pivot] < 0.0:
        coeffs = -coeffs
    a, b, c, d = (float(v) for v in coeffs)
    if abs(a * d - b * c) <= 1e-12:
        return None

    for fv, gv in zip(fs, gs):
        lhs = (c * fv + d) * gv
        rhs = a * fv + b
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(lhs - rhs) > 1e-8 * scale:
            return None
    return MobiusCoefficients(a, b, c, d)


def theta_psi_empty(
    spec: BajraktarevicSpec,
    witnesses: Sequence[float],
    cfg: SolverConfig = SolverConfig(),
) -> bool:
    """True iff every witness has the same single-observation estimator, the
    finite-witness sign that the estimator hull is empty (all F-values land
    in one jump gap of f, or coincide)."""
    if not witnesses:
        raise InvalidArgument("witnesses must be nonempty")
    vals = [generalized_left_inverse(spec.f, spec.theta, spec.F(x), cfg)
            for x in witnesses]
    lo, hi = min(vals), max(vals)
    return hi - lo <= 1e-9 * (1.0 + max(abs(lo), abs(hi)))
