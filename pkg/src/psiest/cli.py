"""Command-line front end: data ingestion, kernel construction, JSON reports.

Subcommands: estimate, compare, mobius-test, bounds.  All output is JSON with
numbers printed to 17 significant digits; identical inputs and seed produce
byte-identical reports.  Exit codes: 0 success / no counterexample, 1 usage
error, 2 solver or domain failure, 3 counterexample found.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from typing import Optional, Sequence

from . import bajraktarevic, comparison, exprparse, families
from .errors import (
    DataParseError,
    DomainError,
    EmptyData,
    ExprError,
    InvalidArgument,
    NegativeWeight,
    PsiEstError,
)
from .kernel import OpenInterval, PsiKernel, WeightedSample
from .solver import SolverConfig, solve_sign_change

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
EXIT_COUNTEREXAMPLE = 3


def _ser(obj) -> str:
    """Deterministic JSON: insertion-order keys, floats at 17 significant
    digits, non-finite floats as tagged strings."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return '"nan"'
        if math.isinf(obj):
            return '"inf"' if obj > 0 else '"-inf"'
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_ser(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = (json.dumps(str(k)) + ":" + _ser(v) for k, v in obj.items())
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(report: dict) -> None:
    sys.stdout.write(_ser(report) + "\n")


def read_data(source: str, weights_path: Optional[str] = None) -> WeightedSample:
    """Load a sample from a file (one `value` or `value,weight` per line,
    `#` comments) or an inline `[a,b,c]` literal."""
    xs: list[float] = []
    ws: list[float] = []
    if source.strip().startswith("["):
        body = source.strip()
        if not body.endswith("]"):
            raise DataParseError(1, "inline literal must end with ']'")
        inner = body[1:-1].strip()
        if not inner:
            raise EmptyData("inline literal is empty")
        for part in inner.split(","):
            try:
                xs.append(float(part))
            except ValueError:
                raise DataParseError(1, f"bad number {part.strip()!r}") from None
            ws.append(1.0)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                cols = [c.strip() for c in line.split(",")]
                if len(cols) > 2:
                    raise DataParseError(lineno, "expected `value` or `value,weight`")
                try:
                    x = float(cols[0])
                    w = float(cols[1]) if len(cols) == 2 else 1.0
                except ValueError:
                    raise DataParseError(lineno, f"bad number in {line!r}") from None
                if w < 0.0:
                    raise NegativeWeight(lineno)
                xs.append(x)
                ws.append(w)
        if not xs:
            raise EmptyData(f"no records in {source}")
    if weights_path is not None:
        ws = []
        with open(weights_path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    w = float(line)
                except ValueError:
                    raise DataParseError(lineno, f"bad weight {line!r}") from None
                if w < 0.0:
                    raise NegativeWeight(lineno)
                ws.append(w)
        if len(ws) != len(xs):
            raise DataParseError(len(ws), "weights file length mismatch")
    return WeightedSample(tuple(xs), tuple(ws))


def _parse_params(pairs: Sequence[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise InvalidArgument(f"expected k=v, got {pair!r}")
        k, v = pair.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise InvalidArgument(f"bad value in {pair!r}") from None
    return out


def _parse_theta(text: str) -> OpenInterval:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidArgument("--theta expects lo,hi")
    try:
        return OpenInterval(float(parts[0]), float(parts[1]))
    except ValueError:
        raise InvalidArgument(f"bad interval {text!r}") from None


def _expr_kernel(source: str, theta: OpenInterval, name: str) -> PsiKernel:
    ast = exprparse.parse(source)

    def ev(x: float, t: float) -> float:
        return exprparse.eval_expr(ast, x, t)

    return PsiKernel(theta, ev, domain_check=math.isfinite, name=name)


def _build_kernel(args, suffix: str = ""):
    """Returns (kernel, echo dict, family spec or None)."""
    family = getattr(args, "family" + suffix, None)
    psi = getattr(args, "psi" + suffix, None)
    params = _parse_params(getattr(args, "param" + suffix, None) or [])
    if family is not None:
        spec = families.FamilySpec(family, params)
        echo = {"family": family, "params": dict(sorted(params.items()))}
        return families.make_kernel(spec), echo, spec
    if psi is None:
        raise InvalidArgument("supply --family or --psi")
    if getattr(args, "theta", None) is None:
        raise InvalidArgument("--psi requires --theta lo,hi")
    theta = _parse_theta(args.theta)
    echo = {"psi": psi, "theta": [theta.lo, theta.hi]}
    return _expr_kernel(psi, theta, "psi"), echo, None


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("PSIEST_SEED")
    return int(env) if env else 0


def _cfg(args) -> SolverConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        return SolverConfig()
    return SolverConfig(abs_tol=tol, rel_tol=tol)


def cmd_estimate(args) -> int:
    kernel, echo, spec = _build_kernel(args)
    sample = read_data(args.data, args.weights)
    cfg = _cfg(args)
    weighted = len(set(sample.weights)) > 1
    report = {"command": "estimate", **echo,
              "n": len(sample), "weighted": weighted,
              "tolerance": {"abs": cfg.abs_tol, "rel": cfg.rel_tol}}
    if args.closed_form:
        if spec is None:
            raise InvalidArgument("--closed-form requires --family")
        theta = families.closed_form_estimate(spec, sample)
        report.update({"method": "closed_form", "extension": weighted,
                       "theta": theta})
        emit(report)
        return EXIT_OK
    res = solve_sign_change(kernel, sample, cfg)
    report.update({"method": "solver", "theta": res.theta,
                   "bracket": [res.bracket_lo, res.bracket_hi],
                   "iterations": res.iterations, "residual": res.residual,
                   "status": res.status})
    emit(report)
    return EXIT_OK if res.converged else EXIT_FAILURE


_CONDITIONS = ("direct", "two-point", "ratio", "derivative", "equality")


def cmd_compare(args) -> int:
    kpsi, echo_psi, _ = _build_kernel(args, "")
    kphi, echo_phi, _ = _build_kernel(args, "_phi")
    sample = read_data(args.data)
    obs = sample.xs
    seed = _seed(args)
    cfg = _cfg(args)
    conditions = _CONDITIONS if args.condition == "all" else (args.condition,)

    ws = comparison.build_witness_set(
        kphi, obs, seed=seed, grid_points=args.grid, cfg=cfg)
    verdicts = []
    for cond in conditions:
        if cond == "direct":
            v = comparison.check_direct(kpsi, kphi, ws, max_n=args.max_n,
                                        trials=args.trials, cfg=cfg)
        elif cond == "two-point":
            distinct = sorted(set(obs))
            if len(distinct) < 2:
                raise InvalidArgument("two-point check needs two distinct observations")
            v = comparison.check_two_point(kpsi, kphi, distinct[0], distinct[-1],
                                           max_km=args.max_km, cfg=cfg)
        elif cond == "ratio":
            v = comparison.check_ratio_condition(kpsi, kphi, ws, cfg=cfg)
        elif cond == "derivative":
            v = comparison.check_derivative_condition(kpsi, kphi, ws, cfg=cfg)
        else:
            v = comparison.check_equality(kpsi, kphi, ws, max_n=args.max_n,
                                          trials=args.trials, cfg=cfg)
        verdicts.append({"condition": v.condition, "status": v.status,
                         "witness": v.witness, "grid": v.grid})

    statuses = [v["status"] for v in verdicts]
    if comparison.COUNTEREXAMPLE in statuses:
        overall = comparison.COUNTEREXAMPLE
        code = EXIT_COUNTEREXAMPLE
    elif comparison.INCONCLUSIVE in statuses:
        overall = comparison.INCONCLUSIVE
        code = EXIT_FAILURE
    else:
        overall = comparison.NO_COUNTEREXAMPLE
        code = EXIT_OK
    emit({"command": "compare", "kernel_psi": echo_psi, "kernel_phi": echo_phi,
          "observations": list(obs), "seed": seed, "verdicts": verdicts,
          "status": overall})
    return code


def cmd_mobius_test(args) -> int:
    theta = _parse_theta(args.theta)
    f_ast = exprparse.parse(args.f)
    g_ast = exprparse.parse(args.g)
    seed = _seed(args)
    cfg = _cfg(args)

    def f(t: float) -> float:
        return exprparse.eval_expr(f_ast, 0.0, t)

    def g(t: float) -> float:
        return exprparse.eval_expr(g_ast, 0.0, t)

    if not exprparse.validate_monotone(f_ast, theta):
        raise DomainError("f must be strictly increasing on theta")

    probes = bajraktarevic._probe_grid(theta, args.probes)
    f_vals = [(t, f(t)) for t in probes]
    g_vals = [(t, g(t)) for t in probes]

    rng = random.Random(seed)
    n_quads = min(100, args.probes)
    max_det = 0.0
    max_rel = 0.0
    for _ in range(n_quads):
        idx = rng.sample(range(len(probes)), 4)
        fq = [f_vals[i][1] for i in idx]
        gq = [g_vals[i][1] for i in idx]
        det = bajraktarevic.determinant_test(fq, gq)
        scale = bajraktarevic.determinant_scale(fq, gq)
        max_det = max(max_det, abs(det))
        max_rel = max(max_rel, abs(det) / scale)

    # Schwarzian of h = g o f^(-1), evaluated at interior f-values.
    def h(s: float) -> float:
        return g(bajraktarevic.generalized_left_inverse(f, theta, s, cfg))

    f_lo, f_hi = f_vals[0][1], f_vals[-1][1]
    pad = 0.05 * (f_hi - f_lo)
    s_probes = [f_lo + pad + (f_hi - f_lo - 2 * pad) * k / 16 for k in range(17)]
    max_schwarz = max(abs(bajraktarevic.schwarzian(h, s)) for s in s_probes)

    try:
        fit = bajraktarevic.mobius_fit(f_vals, g_vals)
    except PsiEstError:
        fit = None
    fit_dict = None
    if fit is not None:
        fit_dict = {"a": fit.a, "b": fit.b, "c": fit.c, "d": fit.d}
    emit({"command": "mobius-test",
          "f": exprparse.pretty(f_ast), "g": exprparse.pretty(g_ast),
          "theta": [theta.lo, theta.hi], "probes": args.probes, "seed": seed,
          "determinant": {"max_abs": max_det, "max_rel": max_rel,
                          "quadruples": n_quads},
          "schwarzian_max_abs": max_schwarz,
          "fit": fit_dict,
          "status": "Fit" if fit is not None else "NoFit"})
    return EXIT_OK


def cmd_bounds(args) -> int:
    sample = read_data(args.data)
    cfg = _cfg(args)
    lower, upper = families.beta_alpha_bounds(args.alpha, sample)
    spec = families.FamilySpec("beta_beta", {"alpha": args.alpha})
    res = solve_sign_change(families.make_kernel(spec), sample, cfg)
    if not res.converged:
        emit({"command": "bounds", "alpha": args.alpha, "n": len(sample),
              "lower": lower, "upper": upper, "estimate": None,
              "inside": False, "status": res.status})
        return EXIT_FAILURE
    pad = 1e-9 * (1.0 + abs(upper))
    inside = (lower - pad) <= res.theta <= (upper + pad)
    emit({"command": "bounds", "alpha": args.alpha, "n": len(sample),
          "lower": lower, "upper": upper, "estimate": res.theta,
          "inside": inside, "status": res.status})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psiest",
        description="Sign-change estimators, comparison checks, and Mobius tests")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)

    p_est = sub.add_parser("estimate", help="estimate from a data sample")
    p_est.add_argument("--family", choices=families.FAMILY_IDS)
    p_est.add_argument("--psi", help="kernel expression in x and t")
    p_est.add_argument("--theta", help="lo,hi open interval for --psi")
    p_est.add_argument("--param", action="append", default=[], metavar="K=V")
    p_est.add_argument("--data", required=True)
    p_est.add_argument("--weights", default=None)
    p_est.add_argument("--closed-form", action="store_true", dest="closed_form")
    add_common(p_est)
    p_est.set_defaults(func=cmd_estimate)

    p_cmp = sub.add_parser("compare", help="compare two kernels")
    p_cmp.add_argument("--family", choices=families.FAMILY_IDS)
    p_cmp.add_argument("--psi")
    p_cmp.add_argument("--param", action="append", default=[], metavar="K=V")
    p_cmp.add_argument("--family-phi", dest="family_phi",
                       choices=families.FAMILY_IDS)
    p_cmp.add_argument("--phi", dest="psi_phi")
    p_cmp.add_argument("--param-phi", dest="param_phi", action="append",
                       default=[], metavar="K=V")
    p_cmp.add_argument("--theta")
    p_cmp.add_argument("--data", required=True)
    p_cmp.add_argument("--condition", default="all",
                       choices=_CONDITIONS + ("all",))
    p_cmp.add_argument("--grid", type=int, default=257)
    p_cmp.add_argument("--trials", type=int, default=200)
    p_cmp.add_argument("--max-n", dest="max_n", type=int, default=6)
    p_cmp.add_argument("--max-km", dest="max_km", type=int, default=20)
    add_common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_mob = sub.add_parser("mobius-test", help="test the Mobius relation of f and g")
    p_mob.add_argument("--f", required=True)
    p_mob.add_argument("--g", required=True)
    p_mob.add_argument("--theta", required=True)
    p_mob.add_argument("--probes", type=int, default=64)
    add_common(p_mob)
    p_mob.set_defaults(func=cmd_mobius_test)

    p_bnd = sub.add_parser("bounds", help="Beta shape estimate with bracket")
    p_bnd.add_argument("--alpha", type=float, required=True)
    p_bnd.add_argument("--data", required=True)
    add_common(p_bnd)
    p_bnd.set_defaults(func=cmd_bounds)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (InvalidArgument, ExprError, DataParseError, EmptyData) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except PsiEstError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAILURE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
