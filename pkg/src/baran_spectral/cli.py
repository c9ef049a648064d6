"""Command-line interface: every computation as a subcommand with JSON/CSV output.

Exit codes: 0 when all tolerances are met, 1 on a tolerance failure, 2 on a
usage error (unknown subcommand, malformed numbers, unwritable output path).
The environment variable BARAN_SPECTRAL_THREADS bounds worker parallelism of
grid scans; fuzz subcommands stay sequential so seeded runs are reproducible.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import (
    ball,
    ball_basis_eval,
    baran_fuzz,
    baran_margin,
    collar_volume,
    domain_rule,
    einstein_constant,
    einstein_residual,
    eigen_residual,
    eigenvalue,
    enumerate_indices,
    evaluate_expansion,
    extremal_eval,
    geodesic_distance,
    geodesic_distance_shooting,
    gram_matrix,
    hyperbolic_curve_point,
    project,
    simplex,
    simplex_basis_eval,
    simplex_jacobi_params,
    sobolev_sums,
    sphere,
)
from .domains import DomainError, DomainSpec, interior_grid, random_interior_point
from .polynomials import PolyN

SCHEMA_VERSION = 1

#: named test functions for the `project` subcommand
TEST_FUNCTIONS = {
    "one": (lambda x: np.ones(np.atleast_2d(x).shape[0]), "constant 1"),
    "coord-sum": (lambda x: np.atleast_2d(x).sum(axis=1), "x_1 + ... + x_n"),
    "exp-x1": (lambda x: np.exp(np.atleast_2d(x)[:, 0]), "exp(x_1)"),
    "gauss": (lambda x: np.exp(-np.einsum("ij,ij->i", np.atleast_2d(x), np.atleast_2d(x))), "exp(-|x|^2)"),
}


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get("BARAN_SPECTRAL_THREADS", "1")))
    except ValueError:
        return 1


def _parse_domain(args) -> DomainSpec:
    kind = args.domain
    n = args.n
    if not 1 <= n <= 4:
        raise ValueError("dimension must lie in [1, 4]")
    return {"ball": ball, "simplex": simplex, "sphere": sphere}[kind](n)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"malformed number list {text!r}") from exc


def _alpha_name(alpha) -> str:
    return "_".join(str(a) for a in alpha)


def _emit(args, payload: dict, rows=None, header=None) -> None:
    """Write JSON (default) or CSV rows to --output / stdout."""
    if args.format == "json":
        text = json.dumps(payload, indent=2, default=float) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows or []:
            writer.writerow(row)
    finally:
        if args.output:
            out.close()


def _payload(args, config: dict, results, passed: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": config,
        "results": results,
        "passed": bool(passed),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_eigencheck(args) -> int:
    domain = _parse_domain(args)
    tol = args.tolerance if args.tolerance is not None else 1e-9
    indices = enumerate_indices(domain.n, args.max_degree)

    def residual(idx):
        return eigen_residual(domain, idx, grid_size=args.grid)

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            residuals = list(pool.map(residual, indices))
    else:
        residuals = [residual(idx) for idx in indices]
    rows = [
        (_alpha_name(idx.alpha), idx.degree, eigenvalue(domain, idx.degree), r)
        for idx, r in zip(indices, residuals)
    ]
    passed = max(residuals) <= tol
    config = {"domain": domain.kind, "n": domain.n, "max_degree": args.max_degree,
              "grid": args.grid, "tolerance": tol}
    results = {
        "residuals": [{"alpha": a, "degree": s, "eigenvalue": lam, "residual": r} for a, s, lam, r in rows],
        "max_residual": max(residuals),
    }
    _emit(args, _payload(args, config, results, passed),
          rows=rows, header=["alpha", "degree", "eigenvalue", "residual"])
    return 0 if passed else 1


def cmd_ortho(args) -> int:
    domain = _parse_domain(args)
    tol = args.tolerance if args.tolerance is not None else 1e-10
    labels, G = gram_matrix(domain, args.max_degree)
    d = np.sqrt(np.diag(G))
    ratios = np.abs(G / np.outer(d, d) - np.eye(len(labels)))
    worst = float(np.max(ratios)) if len(labels) > 1 else 0.0
    passed = worst <= tol
    config = {"domain": domain.kind, "n": domain.n, "max_degree": args.max_degree, "tolerance": tol}
    results = {
        "size": len(labels),
        "total_mass": float(G[0, 0] / (1.0 if domain.kind != "sphere" else 1.0)),
        "diagonal": [float(v) for v in np.diag(G)],
        "max_offdiagonal_ratio": worst,
    }
    rows = [(_alpha_name(lab if not hasattr(lab, "alpha") else lab.alpha), float(G[i, i]))
            for i, lab in enumerate(labels)]
    _emit(args, _payload(args, config, results, passed), rows=rows, header=["index", "norm_sq"])
    return 0 if passed else 1


def cmd_project(args) -> int:
    domain = _parse_domain(args)
    if domain.kind == "sphere":
        raise ValueError("projection is defined for ball and simplex domains")
    tol = args.tolerance if args.tolerance is not None else 1e-9
    if args.function not in TEST_FUNCTIONS:
        raise ValueError(f"unknown test function {args.function!r}; choose from {sorted(TEST_FUNCTIONS)}")
    f, desc = TEST_FUNCTIONS[args.function]
    f_degree = args.max_degree if args.function in ("one", "coord-sum") else max(16, 2 * args.max_degree)
    exp = project(domain, f, args.max_degree, f_degree=f_degree)
    s2, s1 = sobolev_sums(exp)
    grid = interior_grid(domain, 12, margin=1e-2)
    recon_err = float(np.max(np.abs(evaluate_expansion(exp, grid) - f(grid))))
    # reconstruction must be exact only when f lies in the projected span
    polynomial_input = args.function in ("one", "coord-sum")
    passed = (recon_err <= tol) if polynomial_input else True
    energies = exp.degree_energies()
    config = {"domain": domain.kind, "n": domain.n, "max_degree": args.max_degree,
              "function": args.function, "tolerance": tol}
    results = {
        "function": desc,
        "coefficients": {_alpha_name(a): c for a, c in sorted(exp.coeffs.items())},
        "degree_energies": {str(s): e for s, e in sorted(energies.items())},
        "sobolev_s1": s1,
        "sobolev_s2": s2,
        "reconstruction_error": recon_err,
    }
    rows = [(_alpha_name(a), c) for a, c in sorted(exp.coeffs.items())]
    _emit(args, _payload(args, config, results, passed), rows=rows, header=["alpha", "coefficient"])
    return 0 if passed else 1


def cmd_geodesic(args) -> int:
    domain = _parse_domain(args)
    tol = args.tolerance if args.tolerance is not None else 1e-6
    x = np.array(_parse_floats(args.x))
    y = np.array(_parse_floats(args.y))
    closed = geodesic_distance(domain, x, y)
    oracle = geodesic_distance_shooting(domain, x, y)
    diff = abs(closed - oracle)
    passed = diff <= tol
    config = {"domain": domain.kind, "n": domain.n, "x": list(x), "y": list(y), "tolerance": tol}
    results = {"closed_form": closed, "shooting": oracle, "difference": diff}
    _emit(args, _payload(args, config, results, passed),
          rows=[(closed, oracle, diff)], header=["closed_form", "shooting", "difference"])
    return 0 if passed else 1


def cmd_einstein(args) -> int:
    domain = _parse_domain(args)
    if domain.kind == "sphere" or domain.n < 2:
        raise ValueError("einstein residuals are computed for ball/simplex with n >= 2")
    tol = args.tolerance if args.tolerance is not None else 1e-6
    rng = np.random.default_rng(args.seed)
    residuals = []
    for _ in range(args.points):
        x = random_interior_point(domain, rng, margin=0.1)
        residuals.append(einstein_residual(domain, x))
    worst = max(residuals)
    passed = worst <= tol
    config = {"domain": domain.kind, "n": domain.n, "points": args.points,
              "seed": args.seed, "tolerance": tol}
    results = {
        "einstein_constant": einstein_constant(domain),
        "max_residual": worst,
        "mean_residual": float(np.mean(residuals)),
    }
    _emit(args, _payload(args, config, results, passed),
          rows=[(r,) for r in residuals], header=["residual"])
    return 0 if passed else 1


def cmd_baran_ineq(args) -> int:
    domain = _parse_domain(args)
    tol = args.tolerance if args.tolerance is not None else 1e-9
    min_margin, violations = baran_fuzz(domain, args.samples, max_degree=args.max_degree, seed=args.seed)
    passed = min_margin >= -tol
    config = {"domain": domain.kind, "n": domain.n, "samples": args.samples,
              "max_degree": args.max_degree, "seed": args.seed, "tolerance": tol}
    results = {"min_margin": min_margin, "violations": violations}
    _emit(args, _payload(args, config, results, passed),
          rows=[(min_margin, violations)], header=["min_margin", "violations"])
    return 0 if passed else 1


def cmd_collar(args) -> int:
    if not 1 <= args.n <= 4:
        raise ValueError("dimension must lie in [1, 4]")
    eps_list = _parse_floats(args.eps)
    rows = []
    passed = True
    prev_ratio2 = None
    for eps in eps_list:
        vol = collar_volume(args.n, eps)
        log_ratio = float(np.log(vol) / np.log(eps)) if eps < 1.0 else float("nan")
        ratio2 = vol / eps**2
        if eps < 1.0 and log_ratio >= 2.0:
            passed = False
        if prev_ratio2 is not None and ratio2 <= prev_ratio2 and eps < 0.5:
            passed = False
        prev_ratio2 = ratio2
        rows.append((eps, vol, log_ratio, ratio2))
    config = {"n": args.n, "eps": eps_list}
    results = [{"eps": e, "volume": v, "log_ratio": lr, "volume_over_eps_sq": r2}
               for e, v, lr, r2 in rows]
    _emit(args, _payload(args, config, results, passed),
          rows=rows, header=["eps", "volume", "log_ratio", "volume_over_eps_sq"])
    return 0 if passed else 1


def cmd_sphere_extremal(args) -> int:
    tol = args.tolerance if args.tolerance is not None else 1e-9
    ts = _parse_floats(args.t)
    rows = []
    passed = True
    for t in ts:
        v = extremal_eval(hyperbolic_curve_point(t, args.n))
        err = abs(v - t)
        if err > tol:
            passed = False
        rows.append((t, v, err))
    config = {"n": args.n, "t": ts, "tolerance": tol}
    results = [{"t": t, "value": v, "error": e} for t, v, e in rows]
    _emit(args, _payload(args, config, results, passed),
          rows=rows, header=["t", "value", "error"])
    return 0 if passed else 1


def cmd_export_basis(args) -> int:
    domain = _parse_domain(args)
    if domain.kind == "sphere":
        raise ValueError("basis export is defined for ball and simplex domains")
    indices = enumerate_indices(domain.n, args.max_degree)
    grid = interior_grid(domain, args.grid)
    evaluator = ball_basis_eval if domain.kind == "ball" else simplex_basis_eval
    config = {"domain": domain.kind, "n": domain.n, "max_degree": args.max_degree,
              "grid": args.grid, "count": len(indices)}
    header = [f"x{i + 1}" for i in range(domain.n)] + ["value"]
    if args.format == "csv":
        outdir = args.output or "."
        os.makedirs(outdir, exist_ok=True)
        written = []
        for idx in indices:
            vals = evaluator(idx.alpha, grid)
            path = os.path.join(outdir, f"basis_{_alpha_name(idx.alpha)}.csv")
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                for row, v in zip(grid, vals):
                    writer.writerow([*row, v])
            written.append(path)
        sys.stdout.write("\n".join(written) + "\n")
        return 0
    results = {"points": grid.tolist(), "functions": {}}
    for idx in indices:
        entry = {"values": evaluator(idx.alpha, grid).tolist(),
                 "eigenvalue": eigenvalue(domain, idx.degree)}
        if domain.kind == "simplex":
            entry["jacobi_params"] = [(p.a, p.b) for p in simplex_jacobi_params(idx.alpha)]
        results["functions"][_alpha_name(idx.alpha)] = entry
    _emit(args, _payload(args, config, results, True))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="baran-spectral",
        description="Equilibrium-measure spectral geometry on ball, simplex and sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, domain=True, degree=True):
        if domain:
            p.add_argument("--domain", choices=["ball", "simplex", "sphere"], default="ball")
            p.add_argument("--n", type=int, default=2, help="ambient dimension (1-4)")
        if degree:
            p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None, help="output file (or directory for export-basis CSV)")

    p = sub.add_parser("eigencheck", help="operator residual table per basis index")
    common(p)
    p.add_argument("--grid", type=int, default=40)
    p.set_defaults(func=cmd_eigencheck)

    p = sub.add_parser("ortho", help="Gram matrix diagonality report")
    common(p)
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("project", help="expansion of a named test function")
    common(p)
    p.add_argument("--function", default="exp-x1", help=f"one of {sorted(TEST_FUNCTIONS)}")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("geodesic", help="closed-form vs shooting distance between two points")
    common(p, degree=False)
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.add_argument("--y", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("einstein", help="Ricci-vs-metric residual statistics")
    common(p, degree=False)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("baran-ineq", help="tangential inequality fuzz report")
    common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_baran_ineq)

    p = sub.add_parser("collar", help="boundary collar volume table")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--eps", default="0.1,0.05,0.01", help="comma-separated widths")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_collar)

    p = sub.add_parser("sphere-extremal", help="extremal function along the hyperbolic curve")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--t", default="0.1,0.5,1.0", help="comma-separated parameters")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_sphere_extremal)

    p = sub.add_parser("export-basis", help="grid evaluations of the basis functions")
    common(p)
    p.add_argument("--grid", type=int, default=64)
    p.set_defaults(func=cmd_export_basis)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        if getattr(args, "max_degree", 0) and args.max_degree > 10:
            raise ValueError("max_degree is limited to 10")
        return args.func(args)
    except (DomainError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
