"""Mechanical checks of the equivalent comparison and equality conditions
between two psi-kernels.

All conditions are universally quantified, so verdicts are produced from
finite grids and seeded random samples.  A passing check therefore reports
"NoCounterexample", never a proof; a failing check carries a witness that
re-verifies by direct evaluation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DegenerateDerivative, EmptyLowerSet, InvalidArgument, PsiEstError
from .kernel import PsiKernel, WeightedSample, weighted_sum
from .solver import SolverConfig, solve_sign_change, theta1

NO_COUNTEREXAMPLE = "NoCounterexample"
COUNTEREXAMPLE = "Counterexample"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class WitnessSet:
    """Finite stand-in for the universally quantified statements: a set of
    observations plus a parameter grid inside the empirical estimator hull."""

    observations: tuple
    parameter_grid: tuple
    random_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "observations",
                           tuple(float(x) for x in self.observations))
        object.__setattr__(self, "parameter_grid",
                           tuple(float(t) for t in self.parameter_grid))
        if not self.observations:
            raise InvalidArgument("witness set needs at least one observation")


@dataclass(frozen=True)
class ComparisonVerdict:
    status: str
    condition: str
    witness: Optional[dict] = None
    grid: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == NO_COUNTEREXAMPLE


def build_witness_set(
    kernel: PsiKernel,
    observations: Sequence[float],
    seed: int = 0,
    grid_points: int = 257,
    random_points: int = 256,
    cfg: SolverConfig = SolverConfig(),
) -> WitnessSet:
    """Witness set whose parameter grid lies strictly inside the empirical
    hull of the kernel's single-observation estimates over the observations.

    The grid is empty when all estimates coincide (empty hull).  Layout:
    equispaced points shrunk by a 1e-6 relative margin, plus seeded uniform
    random points.
    """
    vals = [theta1(kernel, x, cfg) for x in observations]
    lo, hi = min(vals), max(vals)
    grid: list[float] = []
    if hi > lo:
        margin = 1e-6 * (hi - lo)
        a, b = lo + margin, hi - margin
        grid.extend(a + (b - a) * k / (grid_points - 1) for k in range(grid_points))
        rng = random.Random(seed)
        grid.extend(rng.uniform(a, b) for _ in range(random_points))
    return WitnessSet(tuple(observations), tuple(grid), seed)


def _slack(lhs: float, rhs: float, rel: float) -> float:
    return rel * max(abs(lhs), abs(rhs), 1.0)


def _pair_tol(cfg: SolverConfig, ta: float, tb: float) -> float:
    return 10.0 * max(cfg.abs_tol, cfg.rel_tol * max(abs(ta), abs(tb)))


def _solve(kernel: PsiKernel, sample: WeightedSample, cfg: SolverConfig) -> float:
    res = solve_sign_change(kernel, sample, cfg)
    if not res.converged:
        raise PsiEstError(f"solver failed with status {res.status}")
    return res.theta


def check_direct(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    ws: WitnessSet,
    max_n: int = 6,
    trials: int = 200,
    cfg: SolverConfig = SolverConfig(),
) -> ComparisonVerdict:
    """Estimator ordering theta_psi <= theta_phi on random samples drawn from
    the witness observations, sizes 1..max_n."""
    meta = {"max_n": max_n, "trials": trials, "seed": ws.random_seed}
    rng = random.Random(ws.random_seed)
    obs = ws.observations
    for trial in range(trials):
        n = rng.randint(1, max_n)
        xs = tuple(rng.choice(obs) for _ in range(n))
        sample = WeightedSample.uniform(xs)
        try:
            tp = _solve(kpsi, sample, cfg)
            tq = _solve(kphi, sample, cfg)
        except PsiEstError as exc:
            return ComparisonVerdict(
                INCONCLUSIVE, "direct",
                {"sample": list(xs), "error": str(exc), "trial": trial}, meta)
        if tp > tq + _pair_tol(cfg, tp, tq):
            return ComparisonVerdict(
                COUNTEREXAMPLE, "direct",
                {"sample": list(xs), "theta_psi": tp, "theta_phi": tq,
                 "trial": trial}, meta)
    return ComparisonVerdict(NO_COUNTEREXAMPLE, "direct", None, meta)


def check_two_point(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    x: float,
    y: float,
    max_km: int = 20,
    cfg: SolverConfig = SolverConfig(),
) -> ComparisonVerdict:
    """Ordering on all replicated two-point samples (x taken k times, y taken
    m times, k+m <= max_km), realized as weights (k, m) on (x, y)."""
    if x == y:
        raise InvalidArgument("two-point check needs distinct observations")
    meta = {"max_km": max_km}
    for k in range(1, max_km):
        for m in range(1, max_km - k + 1):
            sample = WeightedSample((x, y), (float(k), float(m)))
            try:
                tp = _solve(kpsi, sample, cfg)
                tq = _solve(kphi, sample, cfg)
            except PsiEstError as exc:
                return ComparisonVerdict(
                    INCONCLUSIVE, "two-point",
                    {"k": k, "m": m, "error": str(exc)}, meta)
            if tp > tq + _pair_tol(cfg, tp, tq):
                return ComparisonVerdict(
                    COUNTEREXAMPLE, "two-point",
                    {"k": k, "m": m, "theta_psi": tp, "theta_phi": tq}, meta)
    return ComparisonVerdict(NO_COUNTEREXAMPLE, "two-point", None, meta)


def check_ratio_condition(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    ws: WitnessSet,
    cfg: SolverConfig = SolverConfig(),
) -> ComparisonVerdict:
    """Two-stage pointwise condition: single-observation ordering on every
    witness, then the cross-product inequality
    psi(x,t) phi(y,t) <= psi(y,t) phi(x,t) for witness pairs whose phi
    estimates straddle each grid t."""
    meta = {"grid_size": len(ws.parameter_grid), "seed": ws.random_seed}
    t1_psi = {x: theta1(kpsi, x, cfg) for x in ws.observations}
    t1_phi = {x: theta1(kphi, x, cfg) for x in ws.observations}
    for x in ws.observations:
        a, b = t1_psi[x], t1_phi[x]
        if a > b + _pair_tol(cfg, a, b):
            return ComparisonVerdict(
                COUNTEREXAMPLE, "ratio",
                {"stage": "theta1", "x": x, "theta1_psi": a, "theta1_phi": b},
                meta)
    for x in ws.observations:
        for y in ws.observations:
            if not t1_phi[x] < t1_phi[y]:
                continue
            for t in ws.parameter_grid:
                if not (t1_phi[x] < t < t1_phi[y]):
                    continue
                lhs = kpsi.eval(x, t) * kphi.eval(y, t)
                rhs = kpsi.eval(y, t) * kphi.eval(x, t)
                if lhs > rhs + _slack(lhs, rhs, 1e-10):
                    return ComparisonVerdict(
                        COUNTEREXAMPLE, "ratio",
                        {"stage": "cross", "x": x, "y": y, "t": t,
                         "lhs": lhs, "rhs": rhs}, meta)
    return ComparisonVerdict(NO_COUNTEREXAMPLE, "ratio", None, meta)


def construct_multiplier(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    ws: WitnessSet,
    t: float,
    cfg: SolverConfig = SolverConfig(),
) -> float:
    """Finite-witness infimum of psi(x,t)/phi(x,t) over witnesses whose phi
    estimate lies below t.  When the ratio condition holds, this multiplier
    satisfies psi(z,t) <= p(t) phi(z,t) for every witness z."""
    ratios = []
    for x in ws.observations:
        if theta1(kphi, x, cfg) < t:
            ratios.append(kpsi.eval(x, t) / kphi.eval(x, t))
    if not ratios:
        raise EmptyLowerSet(f"no witness has a phi-estimate below {t!r}")
    return min(ratios)


def _d2(kernel: PsiKernel, x: float, t: float, fd_step: float) -> float:
    if kernel.d2 is not None:
        return kernel.d2(x, t)
    return (kernel.eval(x, t + fd_step) - kernel.eval(x, t - fd_step)) / (2.0 * fd_step)


def check_derivative_condition(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    ws: WitnessSet,
    fd_step: float = 1e-6,
    cfg: SolverConfig = SolverConfig(),
) -> ComparisonVerdict:
    """Pointwise slope condition at shared single-observation estimates:
    -psi(y, t0)/d2_psi(x, t0) <= -phi(y, t0)/d2_phi(x, t0) with
    t0 = theta1(x).  Requires both kernels to share theta1 on the witnesses
    (else Inconclusive) and nonvanishing parameter derivatives."""
    meta = {"fd_step": fd_step}
    t1s = {}
    for x in ws.observations:
        a = theta1(kpsi, x, cfg)
        b = theta1(kphi, x, cfg)
        if abs(a - b) > 1e-8 * (1.0 + max(abs(a), abs(b))):
            return ComparisonVerdict(
                INCONCLUSIVE, "derivative",
                {"reason": "theta1 values differ", "x": x,
                 "theta1_psi": a, "theta1_phi": b}, meta)
        t1s[x] = 0.5 * (a + b)
    for x in ws.observations:
        t0 = t1s[x]
        if not (kpsi.theta.contains(t0) and kphi.theta.contains(t0)):
            continue
        dp = _d2(kpsi, x, t0, fd_step)
        dq = _d2(kphi, x, t0, fd_step)
        if abs(dp) < 1e-8 or abs(dq) < 1e-8:
            raise DegenerateDerivative(
                f"parameter derivative vanishes at theta1({x!r})")
        for y in ws.observations:
            lhs = -kpsi.eval(y, t0) / dp
            rhs = -kphi.eval(y, t0) / dq
            if lhs > rhs + _slack(lhs, rhs, 1e-8):
                return ComparisonVerdict(
                    COUNTEREXAMPLE, "derivative",
                    {"x": x, "y": y, "t0": t0, "lhs": lhs, "rhs": rhs}, meta)
    return ComparisonVerdict(NO_COUNTEREXAMPLE, "derivative", None, meta)


def check_equality(
    kpsi: PsiKernel,
    kphi: PsiKernel,
    ws: WitnessSet,
    max_n: int = 6,
    trials: int = 200,
    cfg: SolverConfig = SolverConfig(),
) -> ComparisonVerdict:
    """Estimator equality: ordering in both directions on random samples,
    plus sign agreement of the two weighted sums on the parameter grid."""
    meta = {"max_n": max_n, "trials": trials, "seed": ws.random_seed,
            "grid_size": len(ws.parameter_grid)}
    for x in ws.observations:
        a = theta1(kpsi, x, cfg)
        b = theta1(kphi, x, cfg)
        if abs(a - b) > 1e-8 * (1.0 + max(abs(a), abs(b))):
            return ComparisonVerdict(
                INCONCLUSIVE, "equality",
                {"reason": "theta1 values differ", "x": x,
                 "theta1_psi": a, "theta1_phi": b}, meta)
    rng = random.Random(ws.random_seed)
    obs = ws.observations
    for trial in range(trials):
        n = rng.randint(1, max_n)
        xs = tuple(rng.choice(obs) for _ in range(n))
        sample = WeightedSample.uniform(xs)
        try:
            tp = _solve(kpsi, sample, cfg)
            tq = _solve(kphi, sample, cfg)
        except PsiEstError as exc:
            return ComparisonVerdict(
                INCONCLUSIVE, "equality",
                {"sample": list(xs), "error": str(exc), "trial": trial}, meta)
        if abs(tp - tq) > _pair_tol(cfg, tp, tq):
            return ComparisonVerdict(
                COUNTEREXAMPLE, "equality",
                {"sample": list(xs), "theta_psi": tp, "theta_phi": tq,
                 "trial": trial}, meta)
        for t in ws.parameter_grid:
            sp = weighted_sum(kpsi, sample, t)
            sq = weighted_sum(kphi, sample, t)
            zp = abs(sp) <= _slack(sp, sq, 1e-9)
            zq = abs(sq) <= _slack(sp, sq, 1e-9)
            if zp or zq:
                continue
            if (sp > 0) != (sq > 0):
                return ComparisonVerdict(
                    COUNTEREXAMPLE, "equality",
                    {"sample": list(xs), "t": t, "sum_psi": sp, "sum_phi": sq,
                     "trial": trial}, meta)
    return ComparisonVerdict(NO_COUNTEREXAMPLE, "equality", None, meta)
