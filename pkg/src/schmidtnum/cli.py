"""Command-line surface: every library capability behind one entry point.

JSON goes to stdout for single results, CSV for sweeps.  Exit status is 0
on success, 1 on validation errors (bad arguments, malformed files), 2 on
numerical-integrity errors.  With ``--deterministic`` the timestamp field
is suppressed, making stdout byte-identical for identical argv and seed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import replace
from datetime import datetime, timezone

import numpy as np

from . import io
from .distill import BOUND_CHOICES, distillability_check, example_state, reduction_criterion
from .errors import NumericsError, ValidationError
from .optimizer import OptimizerConfig, maximize_rrn_lower_bound, sweep_leading_coefficient
from .robustness import (
    BoundReport,
    conjectured_ball_radius,
    gen_schmidt_bounds,
    random_robustness_pure,
    random_schmidt_upper,
    random_schmidt_upper_weak,
    robustness_pure,
)
from .states import PureState, isotropic, isotropic_schmidt_number, schmidt_decompose, subset_mixture
from .twirl import verify_construction
from .witnesses import canonical_witness, witness_value

# Command-line coefficient lists are renormalized; deviations beyond this
# are worth telling the user about.
NORM_WARN_TOL = 1e-6


def _parse_coeffs(text: str) -> np.ndarray:
    try:
        values = np.array([float(x) for x in text.split(",") if x.strip() != ""])
    except ValueError as exc:
        raise ValidationError(f"could not parse coefficient list {text!r}") from exc
    if values.size < 2:
        raise ValidationError("coefficient list needs at least two entries")
    return values


def _normalize_with_warning(values: np.ndarray, what: str = "coefficients") -> np.ndarray:
    nrm = float(np.linalg.norm(values))
    if nrm <= 0:
        raise ValidationError(f"{what} must not be all zero")
    if abs(nrm - 1.0) > NORM_WARN_TOL:
        print(
            f"warning: {what} renormalized (norm deviated by {abs(nrm - 1.0):.3e})",
            file=sys.stderr,
        )
    return values / nrm


def _assert_finite(obj, path: str = "$") -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _assert_finite(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _assert_finite(v, f"{path}[{i}]")
    elif isinstance(obj, float) and not math.isfinite(obj):
        raise NumericsError(f"non-finite value at {path} in JSON output")


def _print_json(payload: dict, args) -> None:
    if not getattr(args, "deterministic", False):
        payload = {**payload,
                   "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    _assert_finite(payload)
    print(json.dumps(payload, indent=2, allow_nan=False))


def _report_dict(report: BoundReport, scale: float = 1.0) -> dict:
    out = {
        "measure": report.measure,
        "kind": report.kind,
        "value": report.value * scale,
        "params": report.params,
    }
    if report.raw_value is not None:
        out["raw_value"] = report.raw_value * scale
    return out


# ---------------------------------------------------------------- commands

def _cmd_schmidt_decompose(args) -> int:
    if args.coeffs is not None:
        values = _normalize_with_warning(_parse_coeffs(args.coeffs))
        state = PureState.from_coeffs(values)
    else:
        vec = io.load_state_vector(args.vec)
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > NORM_WARN_TOL:
            print(
                f"warning: state vector renormalized (norm deviated by {abs(nrm - 1.0):.3e})",
                file=sys.stderr,
            )
        if nrm <= 0:
            raise ValidationError("state vector must not be zero")
        state, _, _ = schmidt_decompose(vec / nrm)
    _print_json({
        "coefficients": [float(x) for x in state.coeffs],
        "schmidt_rank": state.schmidt_rank,
        "local_dim": state.local_dim,
    }, args)
    return 0


def _cmd_witness_canonical(args) -> int:
    W = canonical_witness(args.d, args.k)
    payload = {
        "d": args.d,
        "k": args.k,
        "schmidt_class": W.schmidt_class,
        "trace": W.trace,
    }
    if args.state is not None:
        rho = io.load_operator(args.state)
        value = witness_value(W, rho)
        payload["value"] = value
        payload["detected"] = bool(value < 0)
    _print_json(payload, args)
    return 0


def _cmd_robustness_pure(args) -> int:
    values = _normalize_with_warning(_parse_coeffs(args.coeffs))
    psi = PureState.from_coeffs(values)
    d = psi.local_dim
    scale = float(d * d) if args.normalized_identity else 1.0
    rs = robustness_pure(psi)
    _print_json({
        "identity_convention": "normalized" if args.normalized_identity else "unnormalized",
        "R_s": _report_dict(rs),
        "R_g": _report_dict(replace(rs, measure="R_g")),
        "R_r": _report_dict(random_robustness_pure(psi), scale=scale),
    }, args)
    return 0


def _cmd_robustness_schmidt(args) -> int:
    values = _normalize_with_warning(_parse_coeffs(args.coeffs))
    psi = PureState.from_coeffs(values)
    d = psi.local_dim
    scale = float(d * d) if args.normalized_identity else 1.0
    lower, upper = gen_schmidt_bounds(psi, args.n)
    _print_json({
        "identity_convention": "normalized" if args.normalized_identity else "unnormalized",
        "R_gn_lower": _report_dict(lower),
        "R_gn_upper": _report_dict(upper),
        "R_rn_upper": _report_dict(random_schmidt_upper(psi, args.n), scale=scale),
        "R_rn_upper_weak": _report_dict(random_schmidt_upper_weak(d, args.n), scale=scale),
    }, args)
    return 0


def _cmd_isotropic(args) -> int:
    op = isotropic(args.d, args.beta)
    _print_json({
        "d": args.d,
        "beta": args.beta,
        "schmidt_number": isotropic_schmidt_number(args.d, args.beta),
        "trace": op.trace,
    }, args)
    return 0


def _cmd_construct_subset_mix(args) -> int:
    a = None
    if args.coeffs is not None:
        a = _normalize_with_warning(_parse_coeffs(args.coeffs))
    op = subset_mixture(args.d, args.n, a)
    doc = io.operator_to_dict(op)
    if args.out is not None:
        io.save_operator(args.out, op)
        _print_json({
            "written": str(args.out),
            "local_dim": op.local_dim,
            "trace": op.trace,
        }, args)
    else:
        # The matrix document itself is the output; it never carries a
        # timestamp so that written and printed forms match exactly.
        _assert_finite(doc)
        print(json.dumps(doc, indent=2, allow_nan=False))
    return 0


def _cmd_construct_twirl_verify(args) -> int:
    report = verify_construction(args.d, args.n)
    _print_json({
        "d": report.d,
        "n": report.n,
        "beta_n": report.beta_n,
        "ok": report.ok,
        "tolerance": report.tolerance,
        "residues": report.residues,
    }, args)
    return 0 if report.ok else 2


def _distill_payload(rho, bound_choice: str) -> dict:
    cert = distillability_check(rho, bound_choice)
    return {
        "lambda_min": cert.lambda_min,
        "eigvec_schmidt_coeffs": [float(x) for x in cert.eigvec_schmidt.coeffs],
        "r2_bound": cert.r2_bound,
        "bound_choice": cert.bound_choice,
        "conjectural": cert.conjectural,
        "verdict": cert.verdict,
        "reduction": reduction_criterion(rho),
    }


def _cmd_distill_check(args) -> int:
    rho = io.load_operator(args.file)
    _print_json(_distill_payload(rho, args.bound), args)
    return 0


def _cmd_distill_example(args) -> int:
    _print_json(_distill_payload(example_state(), args.bound), args)
    return 0


def _cmd_ball_radius(args) -> int:
    report, dprime = conjectured_ball_radius(args.k, args.dmax)
    _print_json({
        "k": args.k,
        "d_max": report.params["d_max"],
        "radius": report.value,
        "optimal_dprime": dprime,
        "kind": report.kind,
        "status": "CONJECTURAL",
    }, args)
    return 0


def _cmd_optimize_rrn(args) -> int:
    b = _normalize_with_warning(_parse_coeffs(args.b))
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    result = maximize_rrn_lower_bound(b, args.n, config)
    _print_json({
        "best_a": [float(x) for x in result.best_a],
        "best_value": result.best_value,
        "restarts_run": result.restarts_run,
        "converged": result.converged,
        "objective_evals": result.objective_evals,
        "clamped": result.clamped,
        "identity_convention": "unnormalized",
    }, args)
    return 0


def _cmd_sweep_figure1(args) -> int:
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    grid = [i / (args.points + 1) for i in range(1, args.points + 1)]
    config = OptimizerConfig(seed=args.seed)
    rows = sweep_leading_coefficient(n=2, grid=grid, config=config, d=3)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    n_cols = len(rows[0].best_a) if rows else 3
    writer.writerow(["a1sq", "bound", "fit"] + [f"best_a{i}" for i in range(n_cols)])
    for row in rows:
        for value in (row.a1sq, row.bound, row.fit, *row.best_a):
            if not math.isfinite(value):
                raise NumericsError("non-finite value in sweep output")
        writer.writerow([row.a1sq, row.bound, row.fit, *row.best_a])
    return 0


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidtnum",
        description="Schmidt-number diagnostics for bipartite quantum states.",
    )
    parser.add_argument(
        "--deterministic", action="store_true",
        help="suppress the timestamp field so identical runs print identical bytes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schmidt", help="Schmidt decomposition")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("decompose", help="Schmidt coefficients and rank")
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--vec", help="state-vector JSON file")
    grp.add_argument("--coeffs", help="comma-separated Schmidt coefficients")
    q.set_defaults(func=_cmd_schmidt_decompose)

    p = sub.add_parser("witness", help="Schmidt witnesses")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("canonical", help="the witness 1 - (d/k) P+")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--state", help="density-matrix JSON file to evaluate on")
    q.set_defaults(func=_cmd_witness_canonical)

    p = sub.add_parser("robustness", help="robustness values and bounds")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("pure", help="exact R_s, R_g, R_r of a pure state")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--normalized-identity", action="store_true",
                   help="report R_r-family values in the normalized-identity convention (x d^2)")
    q.set_defaults(func=_cmd_robustness_pure)
    q = ss.add_parser("schmidt", help="Schmidt-robustness bounds for level n")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--normalized-identity", action="store_true",
                   help="report R_r-family values in the normalized-identity convention (x d^2)")
    q.set_defaults(func=_cmd_robustness_schmidt)

    p = sub.add_parser("isotropic", help="Schmidt number of 1 + beta P+")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=_cmd_isotropic)

    p = sub.add_parser("construct", help="state constructions")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("subset-mix", help="mixture of rank-n states over all n-subsets")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--coeffs", help="optional coefficient list (length d)")
    q.add_argument("--out", help="write the matrix document to this file")
    q.set_defaults(func=_cmd_construct_subset_mix)
    q = ss.add_parser("twirl-verify", help="verify the twirl construction pipeline")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=_cmd_construct_twirl_verify)

    p = sub.add_parser("distill", help="distillability screen")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("check", help="screen a density-matrix file")
    q.add_argument("file")
    q.add_argument("--bound", choices=list(BOUND_CHOICES), default="theorem5")
    q.set_defaults(func=_cmd_distill_check)
    q = ss.add_parser("example", help="run the built-in 9x9 example end-to-end")
    q.add_argument("--bound", choices=list(BOUND_CHOICES), default="theorem5")
    q.set_defaults(func=_cmd_distill_example)

    p = sub.add_parser("ball-radius", help="conjectured Schmidt-ball radius")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dmax", type=int, default=None)
    p.set_defaults(func=_cmd_ball_radius)

    p = sub.add_parser("optimize", help="witness-based lower bounds")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("rrn", help="maximize the R_rn lower-bound objective")
    q.add_argument("--b", required=True, help="Schmidt coefficients of the target state")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--restarts", type=int, default=32)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_optimize_rrn)

    p = sub.add_parser("sweep", help="parameter sweeps (CSV output)")
    ss = p.add_subparsers(dest="subcommand", required=True)
    q = ss.add_parser("figure1", help="lower bounds along b = (a1, a2, a2) in d = 3")
    q.add_argument("--points", type=int, default=19,
                   help="number of interior grid points i/(points+1)")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_sweep_figure1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except NumericsError as exc:
        print(f"numerical-integrity error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
