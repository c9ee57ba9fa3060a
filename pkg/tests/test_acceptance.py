"""Acceptance suite: thirteen end-to-end criteria at their stated tolerances.

Each test prints a single pass/fail line (visible with -s or -v) and asserts
the criterion.  Run them all with `pytest tests/test_acceptance.py -v`.
"""

import math
import random

import gen
import golden_cases
from psiest import (
    FamilySpec,
    OpenInterval,
    PsiKernel,
    WeightedSample,
    apply_mobius,
    build_witness_set,
    check_derivative_condition,
    check_direct,
    check_ratio_condition,
    check_two_point,
    closed_form_estimate,
    construct_multiplier,
    determinant_scale,
    determinant_test,
    digamma,
    empirical_theta1_hull,
    estimate,
    make_kernel,
    mobius_fit,
    schwarzian,
    solve_sign_change,
)

LINE = OpenInterval(-math.inf, math.inf)


def _report(num: int, name: str, ok: bool):
    print(f"[acceptance {num:02d}] {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {num} ({name}) failed"


def _solve(spec_or_kernel, xs, weights=None):
    k = (make_kernel(spec_or_kernel)
         if isinstance(spec_or_kernel, FamilySpec) else spec_or_kernel)
    s = (WeightedSample.uniform(xs) if weights is None
         else WeightedSample(tuple(xs), tuple(weights)))
    res = solve_sign_change(k, s)
    assert res.converged, res.status
    return res.theta


CLOSED_FORM_DRAWS = {
    "normal_var": ({"m": 1.0}, lambda r: r.uniform(1.01, 10)),
    "beta_alpha": ({"beta": 2.0}, lambda r: r.uniform(0.05, 0.95)),
    "gamma_rate": ({"p": 1.5}, lambda r: r.uniform(0.1, 10)),
    "lomax_shape_alpha": ({"lambda": 2.0}, lambda r: r.uniform(0.1, 10)),
    "lognormal_mu": ({"sigma2": 2.0}, lambda r: r.uniform(0.1, 10)),
    "laplace_scale": ({"mu": 0.0}, lambda r: r.uniform(0.1, 10)),
}


def test_acceptance_01_closed_form_agreement():
    rng = random.Random(101)
    ok = True
    for family, (params, draw) in sorted(CLOSED_FORM_DRAWS.items()):
        spec = FamilySpec(family, params)
        for _ in range(100):
            xs = [draw(rng) for _ in range(rng.randint(1, 50))]
            closed = closed_form_estimate(spec, WeightedSample.uniform(xs))
            ok = ok and abs(closed - _solve(spec, xs)) <= 1e-8
    _report(1, "closed-form vs solver agreement", ok)


MEAN_TYPE_DRAWS = [
    (FamilySpec("expectile", {"alpha": 0.7}), lambda r: r.uniform(-5, 5)),
    (FamilySpec("mathieu", {}, f=lambda u: u + u ** 3), lambda r: r.uniform(-5, 5)),
    (FamilySpec("normal_var", {"m": 0.0}), lambda r: r.uniform(0.2, 4)),
    (FamilySpec("beta_alpha", {"beta": 1.5}), lambda r: r.uniform(0.1, 0.9)),
    (FamilySpec("gamma_rate", {"p": 2.0}), lambda r: r.uniform(0.2, 8)),
    (FamilySpec("lomax_rate_lambda", {"alpha": 1.0}), lambda r: r.uniform(0.2, 8)),
    (FamilySpec("lomax_shape_alpha", {"lambda": 1.0}), lambda r: r.uniform(0.2, 8)),
    (FamilySpec("lognormal_mu", {"sigma2": 1.0}), lambda r: r.uniform(0.2, 8)),
    (FamilySpec("laplace_scale", {"mu": 0.0}), lambda r: r.uniform(0.2, 8)),
]


def test_acceptance_02_mean_type():
    rng = random.Random(102)
    ok = True
    for _ in range(500):
        spec, draw = MEAN_TYPE_DRAWS[rng.randrange(len(MEAN_TYPE_DRAWS))]
        k = make_kernel(spec)
        xs = [draw(rng) for _ in range(rng.randint(1, 8))]
        t1s = [k.theta1(x) for x in xs]
        theta = _solve(spec, xs)
        lo, hi = min(t1s), max(t1s)
        ok = ok and (lo - 1e-10 <= theta <= hi + 1e-10)
        if hi - lo > 1e-6:
            tol = 2e-12 * max(1.0, abs(theta))
            ok = ok and (lo + tol < theta < hi - tol)
    _report(2, "mean-type bounds on 500 draws", ok)


def test_acceptance_03_comparison_forward():
    ok = True
    for name, kp, kq, obs, expect_ce in gen.comparison_corpus():
        if expect_ce:
            continue
        ws = build_witness_set(kq, obs)
        v = check_direct(kp, kq, ws, max_n=6, trials=200)
        ok = ok and v.status == "NoCounterexample"
    _report(3, "ordered pairs show no counterexample", ok)


def test_acceptance_04_comparison_reversed():
    ok = True
    for name, kp, kq, obs, expect_ce in gen.comparison_corpus():
        if not expect_ce:
            continue
        ws = build_witness_set(kq, obs)
        v = check_direct(kp, kq, ws, max_n=6, trials=200)
        ok = ok and v.status == "Counterexample"
        if v.status == "Counterexample":
            s = WeightedSample.uniform(v.witness["sample"])
            tp = solve_sign_change(kp, s).theta
            tq = solve_sign_change(kq, s).theta
            ok = ok and tp > tq
    _report(4, "reversed pairs produce re-verifying counterexamples", ok)


def test_acceptance_05_condition_equivalence():
    ok = True
    for name, kp, kq, obs, expect_ce in gen.comparison_corpus():
        ws = build_witness_set(kq, obs)
        expected = "Counterexample" if expect_ce else "NoCounterexample"
        statuses = [
            check_direct(kp, kq, ws, max_n=6, trials=100).status,
            check_two_point(kp, kq, obs[0], obs[-1], max_km=14).status,
            check_ratio_condition(kp, kq, ws).status,
        ]
        ok = ok and all(s == expected for s in statuses)
        v = check_derivative_condition(kp, kq, ws)
        if v.status != "Inconclusive":
            ok = ok and v.status == expected
    _report(5, "direct/two-point/ratio/derivative verdicts agree", ok)


def test_acceptance_06_multiplier_sandwich():
    ok = True
    pairs = [(kp, kq, obs) for name, kp, kq, obs, ce in gen.comparison_corpus()
             if not ce]
    lk1 = make_kernel(FamilySpec("lognormal_mu", {"sigma2": 1.0}))
    lk4 = make_kernel(FamilySpec("lognormal_mu", {"sigma2": 4.0}))
    pairs.append((lk1, lk4, (1.0, math.e, math.e ** 2)))
    for kp, kq, obs in pairs:
        ws = build_witness_set(kq, obs)
        for t in ws.parameter_grid:
            p = construct_multiplier(kp, kq, ws, t)
            ok = ok and p >= 0.0
            for z in obs:
                lhs = kp.eval(z, t)
                rhs = p * kq.eval(z, t)
                ok = ok and lhs <= rhs + 1e-10 * max(abs(lhs), abs(rhs), 1.0)
    ws = build_witness_set(lk4, (1.0, math.e, math.e ** 2))
    for t in (0.3, 1.0, 1.7):
        ok = ok and abs(construct_multiplier(lk1, lk4, ws, t) - 4.0) <= 1e-12
    _report(6, "multiplier sandwich and exact variance ratio", ok)


def test_acceptance_07_mobius_invariance():
    rng = random.Random(107)
    ok = True
    for _ in range(50):
        spec = gen.random_spec(rng)
        m = gen.random_mobius(rng, spec)
        out = apply_mobius(spec, m)
        for _ in range(20):
            sample = gen.random_sample(rng)
            t1 = estimate(spec, sample)
            t2 = estimate(out, sample)
            ok = ok and abs(t1 - t2) <= 1e-9 * max(1.0, abs(t1))
    _report(7, "estimator invariance under 50 random transforms", ok)


def test_acceptance_08_determinant_schwarzian():
    rng = random.Random(108)
    ok = True
    for _ in range(10):
        # random Mobius image of the identity on (0, 10)
        c = rng.uniform(0.0, 1.0)
        d = 10.0 * c + rng.uniform(0.5, 2.0)
        a = rng.uniform(0.5, 2.0)
        b = a * d / max(c, 0.1) - rng.uniform(0.5, 3.0) if c > 0 else rng.uniform(-2, 2)
        if a * d - b * c <= 0:
            b = -abs(b)

        def g(t):
            return (a * t + b) / (c * t + d)

        for _ in range(10):
            ts = sorted(rng.uniform(0.1, 9.9) for _ in range(4))
            if min(t2 - t1 for t1, t2 in zip(ts, ts[1:])) < 1e-3:
                continue
            gv = [g(t) for t in ts]
            det = determinant_test(ts, gv)
            ok = ok and abs(det) <= 1e-9 * determinant_scale(ts, gv)
        s_max = max(abs(schwarzian(g, s)) for s in (1.0, 3.0, 5.0, 8.0))
        ok = ok and s_max <= 1e-4
    cube_f = [1.0, 2.0, 3.0, 4.0]
    cube_g = [t ** 3 for t in cube_f]
    ok = ok and abs(determinant_test(cube_f, cube_g)) > 1.0
    fit = mobius_fit([(t, t) for t in cube_f], list(zip(cube_f, cube_g)))
    ok = ok and fit is None
    _report(8, "determinant and Schwarzian separate the two classes", ok)


def test_acceptance_09_beta_bounds():
    from psiest import beta_alpha_bounds

    rng = random.Random(109)
    ok = True
    for _ in range(200):
        alpha = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
        xs = [rng.uniform(0.05, 0.95) for _ in range(rng.randint(1, 8))]
        s = WeightedSample.uniform(xs)
        lo, hi = beta_alpha_bounds(alpha, s)
        t = _solve(FamilySpec("beta_beta", {"alpha": alpha}), xs)
        pad = 1e-9 * (1.0 + abs(hi))
        ok = ok and lo - pad <= t <= hi + pad
    xs = [0.2, 0.5, 0.8]
    t1 = _solve(FamilySpec("beta_beta", {"alpha": 1.0}), xs)
    ok = ok and abs(t1 - (-len(xs) / sum(math.log(x) for x in xs))) <= 1e-9
    s = WeightedSample.uniform(xs)
    prev = math.inf
    for k in range(1, 21):
        for alpha in (1.0 + 2.0 ** -k, 1.0 - 2.0 ** -k):
            lo, hi = beta_alpha_bounds(alpha, s)
            ok = ok and hi - lo < prev
        prev = hi - lo
    ok = ok and prev <= 1e-5
    _report(9, "estimator inside bounds, exact at alpha=1, width shrinks", ok)


def test_acceptance_10_limit_lemma():
    spec = FamilySpec("expectile", {"alpha": 0.3})
    ok = True
    prev = math.inf
    for n in range(1, 65):
        theta = _solve(spec, [0.0, 1.0], [float(n), 1.0])
        dist = abs(theta)
        ok = ok and dist <= 1.0 / n + 1e-12
        ok = ok and dist < prev
        prev = dist
    _report(10, "replicated-sample estimates approach the single-point value", ok)


def test_acceptance_11_digamma():
    ok = abs(digamma(1.0) + 0.5772156649015329) <= 1e-12
    rng = random.Random(111)
    for _ in range(1000):
        x = math.exp(rng.uniform(math.log(1e-3), math.log(1e3)))
        ok = ok and abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-12
    _report(11, "digamma value and recurrence identity", ok)


def test_acceptance_12_remark_regression():
    kp = PsiKernel(LINE, lambda x, t: -x * t, theta1=lambda x: 0.0)
    kq = PsiKernel(LINE, lambda x, t: -x * (t + 1.0), theta1=lambda x: -1.0)
    ok = True
    for xs in ([1.0], [2.0]):
        s = WeightedSample.uniform(xs)
        ok = ok and abs(solve_sign_change(kp, s).theta) <= 1e-10
        ok = ok and abs(solve_sign_change(kq, s).theta + 1.0) <= 1e-10
    ok = ok and empirical_theta1_hull(kq, [1.0, 2.0]) is None
    ws = build_witness_set(kq, (1.0, 2.0))
    v = check_direct(kp, kq, ws, max_n=1, trials=5)
    ok = ok and v.status == "Counterexample"
    _report(12, "scaled/shifted pair fails comparison at a single observation", ok)


def test_acceptance_13_cli_determinism():
    import os

    golden_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                              "golden")
    ok = True
    for name, argv in golden_cases.CASES.items():
        code1, out1 = golden_cases.run_case(argv)
        code2, out2 = golden_cases.run_case(argv)
        ok = ok and code1 == code2 == golden_cases.EXPECTED_EXIT[name]
        ok = ok and out1 == out2
        with open(os.path.join(golden_dir, name + ".json"),
                  encoding="utf-8") as fh:
            ok = ok and out1 == fh.read()
    _report(13, "golden CLI reports reproduce byte-for-byte", ok)
