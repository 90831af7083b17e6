"""Command-line interface.

Subcommands expose every computation with machine-readable output: JSON
records on stdout by default, CSV where tabular.  Exact rationals are
serialized as "numerator/denominator" strings and never as floats;
floating-point payloads carry their precision in bits.

Exit codes: 0 success, 1 failed verification, 2 invalid flags (argparse),
3 ring/beta mismatch, 4 unwritable output file, 5 heavy-tail refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import asymptotics, closed_forms, engine, montecarlo, oracle, rmt
from .rings import (DEFAULT_PRECISION, Radical, RingMismatchError,
                    resolve_context, to_mpf)

ENV_PRECISION = "BRWMOM_PRECISION"

EXIT_VERIFY_FAILED = 1
EXIT_RING_MISMATCH = 3
EXIT_UNWRITABLE = 4
EXIT_HEAVY_TAIL = 5

# How close k*beta^2 (or m*beta^2 for m < k) must be to 1 before a float
# beta is treated as exactly critical for that order.
CRITICAL_SNAP_TOL = 1e-9


def _default_precision() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return max(int(raw), 64)
    except ValueError:
        return DEFAULT_PRECISION


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _float_str(x, precision: int) -> str:
    # Conversion must happen at the payload's precision: mpf() rounds to
    # the ambient context.
    digits = max(int(precision * 0.30103), 17)
    with mpmath.mp.workprec(precision):
        return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=True)


def encode_value(value, precision: int) -> dict:
    """JSON encoding of a ring value, exact forms kept exact."""
    if isinstance(value, (int, Fraction)):
        return {"type": "rational", "value": _fraction_str(Fraction(value))}
    if isinstance(value, Radical):
        payload = {
            "type": "radical",
            "root_index": value.m,
            "coeffs": [_fraction_str(c) for c in value.coeffs],
        }
        if value.is_rational():
            payload["value"] = _fraction_str(value.to_fraction())
        else:
            payload["approx"] = _float_str(value.to_mpf(precision), precision)
        return payload
    return {"type": "float", "value": _float_str(value, precision),
            "precision_bits": precision}


def output_record(command: str, parameters: dict, result: dict,
                  provenance: str) -> dict:
    return {"command": command, "parameters": parameters,
            "result": result, "provenance": provenance}


def emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def parse_beta_args(args) -> tuple:
    """(beta_sq, echo) from --beta or --beta-sq-rational.

    An integral --beta keeps beta^2 exact; --beta-sq-rational p/m yields
    an exact Fraction (activating exact rings); otherwise beta^2 is the
    float square, so the two signs of beta agree identically.
    """
    if getattr(args, "beta_sq_rational", None):
        text = args.beta_sq_rational
        try:
            if "/" in text:
                p, m = text.split("/")
                bs = Fraction(int(p), int(m))
            else:
                bs = Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            print(f"error: bad rational beta^2 {text!r}", file=sys.stderr)
            raise SystemExit(2)
        if bs.denominator == 1:
            return int(bs), {"beta_sq": _fraction_str(bs)}
        return bs, {"beta_sq": _fraction_str(bs)}
    beta = args.beta
    if beta is None:
        print("error: one of --beta or --beta-sq-rational is required",
              file=sys.stderr)
        raise SystemExit(2)
    if float(beta).is_integer():
        b = int(beta)
        return b * b, {"beta": b}
    return beta * beta, {"beta": beta}


def snap_to_critical(beta_sq, k: int):
    """Return Fraction(1, m) when a float beta^2 sits within snapping
    distance of a transition point 1/m for m <= k, else beta_sq."""
    if isinstance(beta_sq, (int, Fraction)):
        return beta_sq
    for m in range(1, k + 1):
        if abs(m * beta_sq - 1.0) < CRITICAL_SNAP_TOL:
            return Fraction(1, m)
    return beta_sq


def cmd_mom(args) -> int:
    beta_sq, echo = parse_beta_args(args)
    value = engine.mom_dp(args.k, args.n, beta_sq, ring=args.ring,
                          precision=args.precision)
    ctx = resolve_context(beta_sq, args.ring, args.precision)
    params = {"k": args.k, "n": args.n, "ring": ctx.tag,
              "precision": args.precision, **echo}
    emit(output_record("mom", params,
                       {"value": encode_value(value, args.precision)},
                       "engine"))
    return 0


def cmd_poly(args) -> int:
    poly = engine.mom_polynomial(args.k, args.beta)
    rows = [(d, _fraction_str(c)) for d, c in poly.rows()]
    if args.format == "csv":
        sys.stdout.write("degree,coefficient\n")
        for d, c in rows:
            sys.stdout.write(f"{d},{c}\n")
        return 0
    params = {"k": args.k, "beta": args.beta}
    result = {"degree": poly.degree, "rows": [[d, c] for d, c in rows]}
    emit(output_record("poly", params, result, "engine"))
    return 0


def cmd_asym(args) -> int:
    beta_sq, echo = parse_beta_args(args)
    beta_sq = snap_to_critical(beta_sq, args.k)
    term = asymptotics.leading_term(args.k, beta_sq,
                                    precision=args.precision)
    params = {"k": args.k, "precision": args.precision, **echo}
    result = {
        "regime": asymptotics.classify_regime(args.k, beta_sq).tag,
        "exponent": {"beta_sq_coeff": term.growth.p,
                     "constant": term.growth.q},
        "n_power": term.n_power,
        "coefficient": encode_value(term.coefficient, args.precision),
        "method": term.method,
    }
    emit(output_record("asym", params, result, "engine"))
    return 0


def cmd_sweep(args) -> int:
    if not args.beta_min < args.beta_max or args.steps < 2:
        print("error: need beta-min < beta-max and steps >= 2",
              file=sys.stderr)
        return 2
    lines = ["beta,regime,coefficient,method"]
    step = (args.beta_max - args.beta_min) / (args.steps - 1)
    for i in range(args.steps):
        beta = args.beta_min + i * step
        beta_sq = snap_to_critical(beta * beta, args.k)
        term = asymptotics.leading_term(args.k, beta_sq,
                                        precision=args.precision)
        coeff = to_mpf(term.coefficient, args.precision)
        regime = asymptotics.classify_regime(args.k, beta_sq).tag
        lines.append(f"{beta!r},{regime},{mpmath.nstr(coeff, 17)},"
                     f"{term.method}")
    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_UNWRITABLE
    else:
        sys.stdout.write(text)
    return 0


def cmd_mc(args) -> int:
    if args.k * args.beta ** 2 > 1.0 and not args.force:
        print("error: k*beta^2 > 1; the estimator is heavy-tailed "
              "(pass --force to run anyway)", file=sys.stderr)
        return EXIT_HEAVY_TAIL
    config = montecarlo.SimConfig(n=args.n, beta=args.beta,
                                  trials=args.trials, seed=args.seed)
    est = montecarlo.estimate_mom(config, args.k)
    beta_sq = (args.beta ** 2 if not float(args.beta).is_integer()
               else int(args.beta) ** 2)
    exact = engine.mom_dp(args.k, args.n, beta_sq, precision=args.precision)
    exact_f = float(to_mpf(exact, args.precision))
    z = 0.0 if est.stderr == 0 and est.mean == exact_f else (
        float("inf") if est.stderr == 0 else (est.mean - exact_f) / est.stderr)
    params = {"k": args.k, "n": args.n, "beta": args.beta,
              "trials": args.trials, "seed": args.seed,
              "precision": args.precision}
    result = {
        "estimate": est.mean,
        "stderr": est.stderr,
        "exact": encode_value(exact, args.precision),
        "z_score": z,
        "heavy_tail": est.heavy_tail,
    }
    emit(output_record("mc", params, result, "montecarlo"))
    return 0


def _check(name: str, lhs, rhs, tol) -> dict:
    lhs_f, rhs_f = float(lhs), float(rhs)
    if tol == 0:
        ok = lhs == rhs
    else:
        scale = max(abs(rhs_f), 1e-300)
        ok = abs(lhs_f - rhs_f) / scale <= tol
    return {"name": name, "lhs": repr(lhs_f), "rhs": repr(rhs_f),
            "tolerance": tol, "pass": bool(ok)}


def _verify_oracle(budget: int, precision: int) -> list:
    checks = []
    for k in (1, 2, 3):
        for n in range(0, 5):
            if k * n > budget:
                continue
            for beta in (1, 2):
                lhs = engine.mom_dp(k, n, beta * beta)
                rhs = oracle.mom_bruteforce(k, n, beta * beta, budget=budget)
                checks.append(_check(f"dp=bruteforce k={k} n={n} beta={beta}",
                                     lhs, rhs, 0))
            lhs = engine.mom_dp(k, n, 0.3 ** 2, precision=precision)
            rhs = oracle.mom_bruteforce(k, n, 0.3 ** 2, budget=budget,
                                        precision=precision)
            checks.append(_check(f"dp~bruteforce k={k} n={n} beta=0.3",
                                 lhs, rhs, 1e-10))
    return checks


def _verify_mc(budget: int, precision: int) -> list:
    trials = budget if budget > 100 else 20000
    checks = []
    for k, n, beta in ((1, 6, 0.3), (2, 6, 0.3)):
        config = montecarlo.SimConfig(n=n, beta=beta, trials=trials, seed=42)
        est = montecarlo.estimate_mom(config, k)
        exact = float(to_mpf(engine.mom_dp(k, n, beta * beta,
                                           precision=precision), precision))
        z = abs(est.mean - exact) / est.stderr
        checks.append({"name": f"mc z-score k={k} n={n} beta={beta}",
                       "lhs": repr(est.mean), "rhs": repr(exact),
                       "tolerance": "3 sigma", "pass": bool(z <= 3.0)})
    return checks


def _verify_closed_forms(precision: int) -> list:
    checks = []
    grid = [0.25, 0.45, 0.8, 1.0]
    for k in (2, 3, 4, 5):
        for beta in grid:
            beta_sq = beta * beta
            regime = asymptotics.classify_regime(k, beta_sq)
            if (k, regime.tag) not in closed_forms.SUPPORTED:
                continue
            ref = closed_forms.leading_coefficient_closed_form(
                k, beta_sq, regime.tag, precision)
            if regime.tag == asymptotics.SUB:
                val = asymptotics.subcritical_coefficient(k, beta_sq,
                                                          precision)
            else:
                val = to_mpf(asymptotics.supercritical_coefficient(
                    k, beta_sq, precision), precision)
            checks.append(_check(
                f"closed form k={k} beta={beta} {regime.tag}", val, ref,
                1e-12))
    sigma3 = asymptotics.critical_coefficient(3, precision)
    ref3 = closed_forms.leading_coefficient_closed_form(
        3, None, closed_forms.CRITICAL, precision)
    checks.append(_check("critical coefficient k=3", sigma3, ref3, 1e-12))
    return checks


def _verify_rmt(budget: int, precision: int) -> list:
    checks = []
    n_max = budget if budget > 100 else 10000
    ok = all(rmt.unitary_mom_k1_integer(N, 1) == N + 1
             for N in range(1, n_max + 1))
    checks.append({"name": f"telescoping N<={n_max}", "lhs": "N+1",
                   "rhs": "product", "tolerance": 0, "pass": bool(ok)})
    for beta in (1, 2, 3, 4):
        for N in (1, 10, 50):
            lhs = rmt.unitary_mom_k1(N, beta, precision)
            rhs = to_mpf(rmt.unitary_mom_k1_integer(N, beta), precision)
            checks.append(_check(f"gamma=integer N={N} beta={beta}",
                                 lhs, rhs, 1e-12))
    return checks


def cmd_verify(args) -> int:
    budget = args.budget or 0
    suites = {
        "oracle": lambda: _verify_oracle(budget or 16, args.precision),
        "mc": lambda: _verify_mc(budget, args.precision),
        "appendix": lambda: _verify_closed_forms(args.precision),
        "closedform": lambda: _verify_closed_forms(args.precision),
        "rmt": lambda: _verify_rmt(budget, args.precision),
    }
    checks = suites[args.suite]()
    ok = all(c["pass"] for c in checks)
    params = {"suite": args.suite, "budget": budget,
              "precision": args.precision}
    emit(output_record("verify", params,
                       {"checks": checks, "pass": ok}, "engine"))
    return 0 if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brwmom",
        description="Moments of the branching random walk partition "
                    "function: exact, symbolic, and stochastic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_precision(p):
        p.add_argument("--precision", type=int, default=_default_precision(),
                       help="float precision in bits (default 256, or "
                            f"${ENV_PRECISION})")

    def add_beta(p):
        p.add_argument("--beta", type=float, default=None)
        p.add_argument("--beta-sq-rational", default=None, metavar="P/M",
                       help="exact beta^2 as a rational, e.g. 1/2")

    p = sub.add_parser("mom", help="moment value at one (k, n, beta)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_beta(p)
    p.add_argument("--ring", choices=["auto", "rational", "radical", "float"],
                   default="auto")
    add_precision(p)
    p.set_defaults(func=cmd_mom)

    p = sub.add_parser("poly", help="exact polynomial in 2^n for integer "
                                    "k, beta")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("asym", help="growth regime and leading coefficient")
    p.add_argument("--k", type=int, required=True)
    add_beta(p)
    add_precision(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("sweep", help="leading coefficient curve over beta")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta-min", type=float, required=True)
    p.add_argument("--beta-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None)
    add_precision(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a cross-check suite")
    p.add_argument("--suite", required=True,
                   choices=["oracle", "mc", "appendix", "closedform", "rmt"])
    p.add_argument("--budget", type=int, default=None)
    add_precision(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mc", help="Monte Carlo moment estimate vs engine")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true",
                   help="run even in the heavy-tailed regime k*beta^2 > 1")
    add_precision(p)
    p.set_defaults(func=cmd_mc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RingMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RING_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
