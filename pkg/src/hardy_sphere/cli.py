"""Command-line front end.

Subcommands:
  constants  -- certified constants and sequence facts for one lam or dim
  certify    -- truncated Rayleigh-quotient certification table
  verify     -- run a verification suite, one JSON line per check

Every emitted number carries a "source" field (closed-form, exact-rational,
or certified-numeric); exact rationals serialize as {"num": .., "den": ..}.
Exit codes: 0 success (including the d = 3 no-finite-constant verdict),
1 verification/certification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__, backend, certify, functionals, suites

_SCHEMA = 1


def _fail_usage(msg: str) -> "NoReturn":  # noqa: F821
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _num(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    return value


def _entry(name: str, value, source: str, meaning: str) -> dict:
    return {"name": name, "value": _num(value), "source": source, "meaning": meaning}


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(tok)) for tok in text.split(",") if tok.strip()]
    except ValueError:
        _fail_usage(f"bad size list {text!r}")
    if not sizes or sizes != sorted(sizes):
        _fail_usage("sizes must be a nonempty ascending list")
    return sizes


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        _fail_usage(f"bad numeric list {text!r}")


def _resolve_lam(args) -> tuple[float, int | None]:
    if (args.lam is None) == (args.dim is None):
        _fail_usage("give exactly one of --lambda or --dim")
    if args.dim is not None:
        if args.dim < 2:
            _fail_usage("--dim must be >= 2")
        return (args.dim - 2) / 2.0, args.dim
    lam = args.lam
    if lam <= -0.5:
        _fail_usage("--lambda must be > -1/2")
    d = int(round(2 * lam + 2))
    return lam, (d if abs(2 * lam + 2 - d) < 1e-12 and d >= 2 else None)


def _emit(payload: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        rows = payload.get("results", [])
        if rows and isinstance(rows[0], dict):
            cols = sorted({k for r in rows for k in r})
            writer.writerow(cols)
            for r in rows:
                writer.writerow([_csv_cell(r.get(c)) for c in cols])
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v):
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return f"{v['num']}/{v['den']}"
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return v


def cmd_constants(args) -> int:
    lam, d = _resolve_lam(args)
    exact = args.exact or args.precision == "exact"
    exact = exact and float(lam) == int(lam) and lam >= 0
    lam_x = Fraction(int(lam)) if exact else lam
    results = []
    if float(lam) == 0.5:
        results.append(
            _entry(
                "optimal_constant",
                math.inf,
                "closed-form",
                "no finite constant exists for the zero-mean inequality at d=3",
            )
        )
    else:
        results.append(
            _entry(
                "optimal_constant",
                certify.hardy_rellich_constant(lam=lam_x, exact=exact),
                "exact-rational" if exact else "closed-form",
                "optimal zero-mean inequality constant 8/(2 lam - 1)^2 "
                "(restricted class beyond the certificate boundary)",
            )
        )
    results.append(
        _entry(
            "mode_bound_limit",
            certify.mode_bound_limit(lam_x, exact=exact) if exact else certify.mode_bound_limit(lam),
            "exact-rational" if exact else "closed-form",
            "limit (2 lam - 1)^2/8 of the per-mode bounds",
        )
    )
    try:
        idx = certify.stable_tail_index(lam_x if exact else lam)
        results.append(
            _entry(
                "stable_tail_index",
                idx,
                "exact-rational" if exact else "certified-numeric",
                "modes to exclude for the sharp constant to certify",
            )
        )
        v, arg = certify.min_mode_bound(lam_x if exact else lam, exact=exact)
        results.append(
            _entry(
                "min_mode_bound",
                v,
                "exact-rational" if exact else "certified-numeric",
                "infimum of the mode bounds"
                + (f" (attained at n={arg})" if arg else " (the limit)"),
            )
        )
        if float(v) > 0:
            results.append(
                _entry(
                    "unrestricted_constant",
                    1 / v if exact else 1.0 / float(v),
                    "exact-rational" if exact else "certified-numeric",
                    "certified constant for the full zero-mean class "
                    "(optimality beyond d=5 is open)",
                )
            )
    except certify.TailNotCertifiedError as exc:
        results.append(_entry("stable_tail_index", "tail not certified", "certified-numeric", str(exc)))
    if d is not None and d >= 2:
        bd = functionals.uncertainty_constant(d)
        results.append(
            _entry("uncertainty_constant", bd.value, "closed-form", "(d-1)(1 - 2/sqrt(d+3)); 1/8 at d=2")
        )
        results.append(
            _entry(
                "uncertainty_bounds",
                [bd.lower, bd.upper],
                "closed-form",
                "bracket [(d-3)^2/8, (d-1)^2/8] for the optimal uncertainty constant",
            )
        )
    else:
        results.append(
            _entry("uncertainty_constant", functionals.b_lambda(lam), "closed-form", "weight-parameter uncertainty constant")
        )
    payload = {
        "schema": _SCHEMA,
        "command": "constants",
        "backend": backend.BACKEND,
        "config": {"lambda": float(lam), "dim": d, "exact": exact, "seed": args.seed},
        "results": results,
    }
    _emit(payload, args.format, args.out)
    return 0


def cmd_certify(args) -> int:
    lam, _ = _resolve_lam(args)
    sizes = _parse_sizes(args.sizes)
    if args.n0 == "auto":
        n0 = certify.stable_tail_index(lam)
    else:
        try:
            n0 = int(args.n0)
        except ValueError:
            _fail_usage("--n0 must be an integer or 'auto'")
        if n0 < 0:
            _fail_usage("--n0 must be >= 0")
    if any(s <= n0 + 1 for s in sizes):
        _fail_usage("sizes must exceed n0 + 1")
    report = certify.rayleigh_certify(lam, n0, sizes)
    is_auto_floor = n0 == certify.stable_tail_index(lam)
    floor = certify.mode_bound_limit(lam)
    violation = is_auto_floor and any(m < floor - 1e-10 for m in report.mu)
    rows = [
        {
            "size": s,
            "mu": m,
            "constant": 1.0 / m,
            "source": "certified-numeric",
        }
        for s, m in zip(report.sizes, report.mu)
    ]
    payload = {
        "schema": _SCHEMA,
        "command": "certify",
        "backend": backend.BACKEND,
        "config": {"lambda": float(lam), "n0": n0, "sizes": sizes, "seed": args.seed},
        "results": rows,
        "summary": {
            "monotone": report.monotone,
            "limit_lower_bound": report.lower_bound,
            "extrapolated_constant": report.extrapolated_constant,
            "log_slope": report.log_slope,
            "divergent": float(lam) == 0.5,
            "lower_bound_violation": violation,
        },
    }
    _emit(payload, args.format, args.out)
    return 1 if violation else 0


def cmd_verify(args) -> int:
    try:
        rows = suites.run_suite(
            args.suite,
            seed=args.seed,
            t_list=_parse_floats(args.t_list) if args.t_list else None,
            eps_list=_parse_floats(args.eps_list) if args.eps_list else None,
        )
    except ValueError as exc:
        _fail_usage(str(exc))
    stream = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for row in rows:
            stream.write(json.dumps(row, sort_keys=True) + "\n")
        n_fail = sum(not r["passed"] for r in rows)
        stream.write(
            json.dumps(
                {"schema": _SCHEMA, "suite": args.suite, "checks": len(rows), "failures": n_fail},
                sort_keys=True,
            )
            + "\n"
        )
    finally:
        if args.out:
            stream.close()
    return 1 if n_fail else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hardy-sphere",
        description="Certified sharp constants for Hardy-Rellich and "
        "uncertainty inequalities on the sphere.",
    )
    p.add_argument("--version", action="version", version=f"hardy-sphere {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", type=float, default=None, help="weight parameter > -1/2")
        sp.add_argument("--dim", type=int, default=None, help="sphere ambient dimension d >= 2")
        sp.add_argument("--precision", default="float64", help="float64 | bigfloat:DIGITS | exact")
        sp.add_argument("--exact", action="store_true", help="exact rational arithmetic (integer lambda)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("constants", help="emit certified constants for one lambda or dimension")
    common(sp)

    sp = sub.add_parser("certify", help="truncated Rayleigh-quotient certification")
    common(sp)
    sp.add_argument("--n0", default="auto", help="excluded low modes (integer or 'auto')")
    sp.add_argument("--sizes", required=True, help="comma-separated ascending truncation sizes")

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument(
        "--suite",
        default="all",
        choices=suites.SUITE_NAMES + ("all",),
    )
    sp.add_argument("--t-list", dest="t_list", default=None, help="heat times, comma separated")
    sp.add_argument("--eps-list", dest="eps_list", default=None, help="counterexample epsilons")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.precision not in ("float64", "exact") and not args.precision.startswith("bigfloat"):
        _fail_usage(f"unknown precision {args.precision!r}")
    handler = {"constants": cmd_constants, "certify": cmd_certify, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (ValueError, certify.TailNotCertifiedError) as exc:
        _fail_usage(str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
