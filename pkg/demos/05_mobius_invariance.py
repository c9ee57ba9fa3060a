"""Fractional-linear reparameterizations leave the estimator unchanged.

A separable kernel psi(x, t) = p(x) (F(x) - f(t)) defines a quasi-linear
estimator.  Replacing (f, F, p) by their Mobius transform (with ad > bc and a
positive denominator on the parameter set) yields the same estimates.  Two
diagnostics detect whether a pair of scales is Mobius-related: a 4-point
cross-ratio determinant and the Schwarzian derivative, both zero exactly on
fractional-linear maps.
"""

import math

from psiest import (
    BajraktarevicSpec,
    MobiusCoefficients,
    OpenInterval,
    WeightedSample,
    apply_mobius,
    determinant_scale,
    determinant_test,
    estimate,
    mobius_fit,
    schwarzian,
)

# Parameter set (1, inf) keeps f = ln bounded below, so c*f + d stays
# positive for the chosen coefficients.
spec = BajraktarevicSpec(
    f=math.log, p=lambda x: x, F=lambda x: math.log(2.0 * x + 1.0),
    theta=OpenInterval(1.0, math.inf), fprime=lambda t: 1.0 / t)
m = MobiusCoefficients(2.0, 1.0, 0.5, 3.0)
transformed = apply_mobius(spec, m)

sample = WeightedSample((0.5, 1.0, 2.5), (1.0, 2.0, 0.5))
t1 = estimate(spec, sample)
t2 = estimate(transformed, sample)
print(f"estimate before transform: {t1:.15g}")
print(f"estimate after transform:  {t2:.15g}   |diff| = {abs(t1 - t2):.2e}")

g = lambda t: (2.0 * t + 1.0) / (t + 3.0)
ts = [0.5, 1.5, 3.0, 7.0]
gv = [g(t) for t in ts]
print(f"\nfractional pair: determinant = {determinant_test(ts, gv):.2e} "
      f"(scale {determinant_scale(ts, gv):.2e}), "
      f"Schwarzian at 2 = {schwarzian(g, 2.0):.2e}")

cube = lambda t: t ** 3
cv = [cube(t) for t in ts]
print(f"cubic pair:      determinant = {determinant_test(ts, cv):.6g}, "
      f"Schwarzian at 2 = {schwarzian(cube, 2.0):.6g}")

fit = mobius_fit([(t, t) for t in ts], list(zip(ts, gv)))
print(f"\nrecovered coefficients for the fractional pair: {fit}")
print(f"cubic pair fit: {mobius_fit([(t, t) for t in ts], list(zip(ts, cv)))}")
