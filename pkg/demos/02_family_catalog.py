"""The built-in kernel catalog and its closed forms.

Eleven named families are available through FamilySpec/make_kernel.  Six of
them admit elementary closed-form estimates, which the demo compares against
the generic sign-change solver.
"""

import random

from psiest import (
    FAMILY_IDS,
    CLOSED_FORM_IDS,
    FamilySpec,
    WeightedSample,
    closed_form_estimate,
    make_kernel,
    solve_sign_change,
)

print("families:", ", ".join(FAMILY_IDS))
print("with closed forms:", ", ".join(CLOSED_FORM_IDS))
print()

rng = random.Random(2)
PARAMS = {
    "normal_var": {"m": 1.0},
    "beta_alpha": {"beta": 2.0},
    "gamma_rate": {"p": 1.5},
    "lomax_shape_alpha": {"lambda": 2.0},
    "lognormal_mu": {"sigma2": 2.0},
    "laplace_scale": {"mu": 0.0},
}
DRAW = {
    "normal_var": lambda: rng.uniform(1.1, 9.0),
    "beta_alpha": lambda: rng.uniform(0.05, 0.95),
    "gamma_rate": lambda: rng.uniform(0.2, 8.0),
    "lomax_shape_alpha": lambda: rng.uniform(0.2, 8.0),
    "lognormal_mu": lambda: rng.uniform(0.2, 8.0),
    "laplace_scale": lambda: rng.uniform(0.2, 8.0),
}

for family in CLOSED_FORM_IDS:
    spec = FamilySpec(family, PARAMS[family])
    xs = [DRAW[family]() for _ in range(6)]
    s = WeightedSample.uniform(xs)
    closed = closed_form_estimate(spec, s)
    solved = solve_sign_change(make_kernel(spec), s).theta
    print(f"{family:>18}: closed = {closed:.12g}  solver = {solved:.12g}  "
          f"|diff| = {abs(closed - solved):.2e}")

# Families without an elementary closed form go through the solver only.
spec = FamilySpec("gamma_shape", {"lambda": 1.0})
s = WeightedSample.uniform([0.5, 1.5, 4.0])
print(f"\n{'gamma_shape':>18}: solver = "
      f"{solve_sign_change(make_kernel(spec), s).theta:.12g}"
      "  (fixed point of digamma(t) = mean ln x)")
