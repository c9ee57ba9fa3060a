"""Deciding whether one estimator always sits below another.

Four checkers probe the ordering theta_psi <= theta_phi from different angles:
random-sample search (direct), integer two-point weights, a pointwise ratio
condition on the witness grid, and a partial-derivative condition.  On
well-behaved pairs they agree.
"""

from psiest import (
    FamilySpec,
    build_witness_set,
    check_derivative_condition,
    check_direct,
    check_ratio_condition,
    check_two_point,
    make_kernel,
)

kp = make_kernel(FamilySpec("expectile", {"alpha": 0.3}))
kq = make_kernel(FamilySpec("expectile", {"alpha": 0.7}))
obs = (0.0, 1.0, 2.0, 5.0)
ws = build_witness_set(kq, obs)

print("expectile(0.3) vs expectile(0.7) on", obs)
for label, verdict in [
    ("direct", check_direct(kp, kq, ws, max_n=6, trials=200)),
    ("two-point", check_two_point(kp, kq, 0.0, 5.0, max_km=20)),
    ("ratio", check_ratio_condition(kp, kq, ws)),
    ("derivative", check_derivative_condition(kp, kq, ws)),
]:
    print(f"  {label:>10}: {verdict.status}")

print("\nreversed order (0.7 vs 0.3):")
ws_rev = build_witness_set(kp, obs)
v = check_direct(kq, kp, ws_rev, max_n=6, trials=200)
print(f"  {'direct':>10}: {v.status}")
if v.witness:
    print(f"             witness sample {v.witness['sample']}: "
          f"theta_psi = {v.witness['theta_psi']:.6g} > "
          f"theta_phi = {v.witness['theta_phi']:.6g}")
