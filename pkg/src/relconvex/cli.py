"""Command-line interface: load sequences from JSON or CSV, run checks, emit JSON reports.

Every command prints a single-line JSON report with the keys
{command, verdict, margin_or_slacks, parameters, tolerance, version}.
Exit codes: 0 = holds/success, 1 = inequality violated or profile rejected,
2 = parse or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .diagnostics import (
    anchored_slope_check_all,
    collinearity_determinant_check,
    increment_growth_check,
    neighbor_chord_check,
)
from .errors import RelConvexError
from .inequalities import (
    convex_hhf_bounds,
    hhf_bounds,
    integer_majorization_check,
    lupas_check,
    majorization_inequality_check,
    niezgoda_bound,
    parse_psi,
    pecaric_check,
)
from .oracles import gen_majorized_pair, gen_relative_convex_pair
from .polyext import build_extension, sample
from .seqcore import (
    ShapeKind,
    Tolerance,
    classify_shape,
    construct_witness,
    construct_witness_on_interval,
    is_convex,
    is_convex_wrt,
)

ENV_TOL_ABS = "RELCONVEX_TOL_ABS"


def _load_inputs(path: str) -> dict[str, list[float]]:
    """Read named sequences from a JSON object or a CSV with named columns."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("JSON input must be an object of named sequences")
        return {
            str(k): [float(v) for v in vals]
            for k, vals in data.items()
            if isinstance(vals, list)
        }
    out: dict[str, list[float]] = {}
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise ValueError("CSV input needs a header row of sequence names")
    for name in reader.fieldnames:
        out[name.strip()] = []
    for row in reader:
        for name, cell in row.items():
            if cell is not None and cell.strip() != "":
                out[name.strip()].append(float(cell))
    return {k: v for k, v in out.items() if v}


def _tolerance(args) -> Tolerance:
    abs_tol = args.tol_abs
    if abs_tol is None:
        abs_tol = float(os.environ.get(ENV_TOL_ABS, 1e-9))
    return Tolerance(abs=abs_tol, rel=args.tol_rel)


def _need(inputs: dict, *names: str) -> list[list[float]]:
    out = []
    for name in names:
        if name not in inputs:
            raise ValueError(f"missing input sequence {name!r}")
        out.append(inputs[name])
    return out


def _report(args, verdict: str, margins: dict, parameters: dict, tol: Tolerance) -> dict:
    return {
        "command": args.command,
        "verdict": verdict,
        "margin_or_slacks": margins,
        "parameters": parameters,
        "tolerance": {"abs": tol.abs, "rel": tol.rel},
        "version": __version__,
    }


def _emit(report: dict, destination: str = "-") -> None:
    line = json.dumps(report, sort_keys=True)
    if destination == "-":
        print(line)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")


def _default_schedule(a, tol):
    """Canonical slope schedule (-k..-1 then 1..m) for a V-shaped sequence."""
    sched = []
    n_dec = sum(1 for i in range(len(a) - 1) if a[i + 1] - a[i] < -tol.abs)
    n_inc = sum(1 for i in range(len(a) - 1) if a[i + 1] - a[i] > tol.abs)
    sched.extend(float(-k) for k in range(n_dec, 0, -1))
    sched.extend(float(k) for k in range(1, n_inc + 1))
    return sched


def _run(args) -> tuple[int, dict]:
    tol = _tolerance(args)
    inputs = _load_inputs(args.input) if args.input else {}
    params: dict = {k: v for k, v in inputs.items()}
    params["seed"] = args.seed
    cmd = args.command

    if cmd == "classify":
        (a,) = _need(inputs, "a")
        shape = classify_shape(a, tol)
        ok = shape.variant is not ShapeKind.NOT_STRICTLY_V_SHAPED
        margins = {}
        if shape.breakpoints is not None:
            margins = {"m": shape.breakpoints[0], "ell": shape.breakpoints[1]}
        return (0 if ok else 1), _report(args, shape.variant.value, margins, params, tol)

    if cmd == "check":
        if args.wrt:
            a, t = _need(inputs, "a", "t")
            rep = is_convex_wrt(a, t, tol)
        else:
            (a,) = _need(inputs, "a")
            rep = is_convex(a, tol)
        margins = {"margin": rep.margin, "first_violation": rep.first_violation}
        return (0 if rep.holds else 1), _report(
            args, "holds" if rep.holds else "violated", margins, params, tol
        )

    if cmd == "witness":
        (a,) = _need(inputs, "a")
        sched = inputs.get("s") or _default_schedule(a, tol)
        wit = construct_witness(a, sched, t1=args.t1, plateau_step=args.plateau_step, tol=tol)
        rep = is_convex_wrt(a, wit, tol)
        params["s"] = sched
        margins = {"witness": list(wit.values), "margin": rep.margin}
        return 0, _report(args, "holds", margins, params, tol)

    if cmd == "subdivide":
        (a,) = _need(inputs, "a")
        wit = construct_witness_on_interval(a, args.alpha, args.beta, tol)
        rep = is_convex_wrt(a, wit, tol)
        params["alpha"] = args.alpha
        params["beta"] = args.beta
        margins = {"witness": list(wit.values), "margin": rep.margin}
        return 0, _report(args, "holds", margins, params, tol)

    if cmd == "extend":
        a, t = _need(inputs, "a", "t")
        ext = build_extension(a, t, tol)
        rows = sample(ext, args.resolution)
        params["resolution"] = args.resolution
        csv_text = "x,value\n" + "".join(f"{x!r},{v!r}\n" for x, v in rows)
        margins = {"samples": len(rows), "slopes": list(ext.slopes)}
        report = _report(args, "holds", margins, params, tol)
        if args.output == "-":
            # keep stdout machine-readable CSV; the report would corrupt it
            sys.stdout.write(csv_text)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
            _emit(report)
        return 0, report

    if cmd == "lupas":
        a, b, t = _need(inputs, "a", "b", "t")
        p = inputs.get("p", [1.0] * len(a))
        rep = lupas_check(a, b, t, p, tol, skip_verify=args.skip_verify)
        params["p"] = p
        margins = {"lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack}
        return (0 if rep.holds else 1), _report(
            args, "holds" if rep.holds else "violated", margins, params, tol
        )

    if cmd == "pecaric":
        a, b = _need(inputs, "a", "b")
        rep = pecaric_check(a, b, tol, skip_verify=args.skip_verify)
        margins = {"lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack}
        return (0 if rep.holds else 1), _report(
            args, "holds" if rep.holds else "violated", margins, params, tol
        )

    if cmd in ("hhf", "niezgoda", "hhf-convex"):
        (a,) = _need(inputs, "a")
        p = inputs.get("p", [1.0] * len(a))
        psi = parse_psi(args.psi)
        params["p"] = p
        params["psi"] = args.psi
        if cmd == "hhf":
            a, t = _need(inputs, "a", "t")
            rep = hhf_bounds(a, t, p, psi, tol, skip_verify=args.skip_verify)
        elif cmd == "niezgoda":
            rep = niezgoda_bound(a, p, psi, tol, skip_verify=args.skip_verify)
        else:
            rep = convex_hhf_bounds(a, p, psi, tol, skip_verify=args.skip_verify)
        margins = {
            "lower": rep.lower,
            "value": rep.value,
            "upper": rep.upper,
            "slack_lower": rep.slack_lower,
            "slack_upper": rep.slack_upper,
            "m": rep.m,
            "gamma_t": rep.gamma_t,
            "lambda_t": rep.lambda_t,
        }
        return (0 if rep.holds else 1), _report(
            args, "holds" if rep.holds else "violated", margins, params, tol
        )

    if cmd == "majorize":
        a, pvec, qvec = _need(inputs, "a", "pvec", "qvec")
        if "t" in inputs:
            rep = majorization_inequality_check(
                a, inputs["t"], pvec, qvec, tol, skip_verify=args.skip_verify
            )
        else:
            for name, vec in (("pvec", pvec), ("qvec", qvec)):
                for k, v in enumerate(vec):
                    if v != int(v):
                        raise ValueError(
                            f"{name}[{k + 1}] = {v!r} must be an integer index "
                            "(provide t for the real-valued mode)"
                        )
            rep = integer_majorization_check(
                a,
                [int(v) for v in pvec],
                [int(v) for v in qvec],
                tol,
                skip_verify=args.skip_verify,
            )
        margins = {"margin": rep.margin}
        return (0 if rep.holds else 1), _report(
            args, "holds" if rep.holds else "violated", margins, params, tol
        )

    if cmd == "diagnose":
        a, t = _need(inputs, "a", "t")
        slope = is_convex_wrt(a, t, tol)
        chord = neighbor_chord_check(a, t, tol)
        det = collinearity_determinant_check(a, t, tol)
        anchored = anchored_slope_check_all(a, t, tol)
        margins = {
            "slope_margin": slope.margin,
            "chord_margin": chord.margin,
            "determinant_margin": det.margin,
            "anchored_margin": anchored.margin,
            "agree": slope.holds == chord.holds == det.holds == anchored.holds,
        }
        try:
            growth = increment_growth_check(a, t, tol)
            margins["growth_margin"] = growth.margin
        except RelConvexError:
            margins["growth_margin"] = None
        return (0 if slope.holds else 1), _report(
            args, "holds" if slope.holds else "violated", margins, params, tol
        )

    if cmd == "fuzz":
        violations = 0
        first_bad = None
        worst = float("inf")
        for k in range(args.trials):
            seed = args.seed + k
            a, t = gen_relative_convex_pair(5 + seed % 8, seed)
            lo, hi = t[0], t[-1]
            rng = np.random.default_rng(seed + 10_000)
            q = list(rng.uniform(lo, hi, 4))
            pv = list(gen_majorized_pair(q, 8, seed + 20_000))
            rep = majorization_inequality_check(a, t, pv, q, tol)
            worst = min(worst, rep.margin)
            if not rep.holds:
                violations += 1
                if first_bad is None:
                    first_bad = seed
        margins = {
            "trials": args.trials,
            "violations": violations,
            "min_margin": worst,
            "first_violating_seed": first_bad,
        }
        return (0 if violations == 0 else 1), _report(
            args, "holds" if violations == 0 else "violated", margins, params, tol
        )

    raise ValueError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=None, help="path to JSON/CSV inputs, or - for stdin")
    common.add_argument("--tol-abs", type=float, default=None,
                        help=f"absolute tolerance (default 1e-9; env {ENV_TOL_ABS} overrides)")
    common.add_argument("--tol-rel", type=float, default=1e-12, help="relative tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("--skip-verify", action="store_true",
                        help="skip precondition verification (for probing converses)")
    common.add_argument("--output", default="-", help="destination for CSV artifacts / report")
    common.add_argument("--psi", default="identity",
                        help="builtin map: identity, exp, relu@c, square")
    common.add_argument("--resolution", type=int, default=256, help="sample count for extend")

    parser = argparse.ArgumentParser(
        prog="relconvex",
        description="Checks, witness constructions, and inequality bounds for relative convex sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="monotonicity profile of a")
    chk = sub.add_parser("check", parents=[common], help="convexity of a (optionally w.r.t. t)")
    chk.add_argument("--wrt", action="store_true", help="check against the witness column t")
    wit = sub.add_parser("witness", parents=[common], help="build a witness from a slope schedule")
    wit.add_argument("--t1", type=float, default=0.0)
    wit.add_argument("--plateau-step", type=float, default=1.0)
    sd = sub.add_parser("subdivide", parents=[common], help="witness subdividing [alpha, beta]")
    sd.add_argument("--alpha", type=float, required=True)
    sd.add_argument("--beta", type=float, required=True)
    sub.add_parser("extend", parents=[common], help="sample the polygonal extension as CSV")
    sub.add_parser("lupas", parents=[common], help="covariance bound for a, b sharing witness t")
    sub.add_parser("pecaric", parents=[common], help="raw-sum covariance bound for convex a, b")
    sub.add_parser("hhf", parents=[common], help="sandwich bounds for a witnessed sequence")
    sub.add_parser("niezgoda", parents=[common], help="one-sided endpoint bound, convex a")
    sub.add_parser("hhf-convex", parents=[common], help="two-sided bounds for convex a, raw sums")
    sub.add_parser("majorize", parents=[common],
                   help="majorization inequality (witness mode with t, index mode without)")
    sub.add_parser("diagnose", parents=[common], help="run the characterization battery on (a, t)")
    fz = sub.add_parser("fuzz", parents=[common], help="randomized majorization fuzzing")
    fz.add_argument("--trials", type=int, default=100)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report = _run(args)
    except (RelConvexError, ValueError, OSError, json.JSONDecodeError) as exc:
        tol = Tolerance()
        report = _report(args, "error", {"message": str(exc)}, {}, tol)
        print(json.dumps(report, sort_keys=True))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command != "extend":
        _emit(report, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
