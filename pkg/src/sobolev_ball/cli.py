"""Command-line front end.

    sobolev-ball <command> --dim {2|3} --degree N [--quad auto|K]
                 --function NAME --format {json|csv} --out PATH [--seed S]

Exit codes: 0 pass, 1 tolerance failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .ball_basis import all_indices, basis_indices, lift_matrix, sobolev_matrix, sobolev_norm_sq
from .expansion import (
    expand,
    kernel_sobolev,
    proj_corollary,
    resolve_quad_degree,
)
from .functions import POISSON_PROBLEMS, REGISTRY, get_function, get_poisson_problem
from .poisson import PoissonProblem, convergence_report, sample_grid, solve_poisson, sup_error
from .quadrature import ball_rule, geometry_constants

EXIT_OK, EXIT_TOL, EXIT_USAGE = 0, 1, 2

DEFAULT_FUNCTION = {"expand": "exp_x1", "project": "exp_x1", "kernel": "one",
                    "gram": "one", "poisson": "manufactured_exp",
                    "convergence": "manufactured_exp"}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int
    max_degree: int
    quad_degree: int
    function_name: str
    output_format: str
    output_path: str | None
    seed: int
    tol: float
    points: int


def _quad_arg(text):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--quad must be 'auto' or an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("--quad must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sobolev-ball",
        description="Sobolev orthogonal polynomials on the unit ball: "
                    "verification, expansions, kernels and a Poisson solver.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("gram", "verify orthonormality of the normalized basis"),
        ("expand", "expand a registry function and write its coefficients"),
        ("project", "compare the two projection formulas at random points"),
        ("kernel", "evaluate reproducing kernels and check their properties"),
        ("poisson", "solve -Delta u = g with zero boundary values"),
        ("convergence", "tabulate Poisson errors against truncation degree"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dim", type=int, choices=(2, 3), default=2)
        p.add_argument("--degree", type=int, default=None, required=True)
        p.add_argument("--quad", type=_quad_arg, default="auto")
        p.add_argument("--function", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--points", type=int, default=20,
                       help="number of random spot-check points")
    return parser


def make_config(args) -> RunConfig:
    if args.degree < 0:
        raise ConfigError("--degree must be >= 0")
    name = args.function or DEFAULT_FUNCTION[args.command]
    registry = POISSON_PROBLEMS if args.command in ("poisson", "convergence") else REGISTRY
    if name not in registry:
        raise ConfigError(f"unknown function {name!r}; choose from {', '.join(sorted(registry))}")
    if args.points < 1:
        raise ConfigError("--points must be >= 1")
    tol = args.tol if args.tol is not None else 1e-8
    return RunConfig(args.command, args.dim, args.degree,
                     resolve_quad_degree(args.degree, args.quad), name, args.format,
                     args.out, args.seed, tol, args.points)


# ---------------------------------------------------------------------------
# output


def _render(payload, fmt) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in payload:
        writer.writerow(row)
    return buf.getvalue()


def write_output(text: str, path: str | None):
    """Write via a temporary file and an atomic rename; stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _companion(path: str | None, suffix: str) -> str | None:
    return None if path is None else str(Path(path).with_suffix(suffix))


def _random_ball_points(rng, n, d, radius=0.95):
    x = rng.normal(size=(n, d))
    x /= np.linalg.norm(x, axis=1)[:, None]
    return x * radius * rng.uniform(size=(n, 1)) ** (1 / d)


def _fmt(v):
    return repr(float(v))


# ---------------------------------------------------------------------------
# commands


def normalized_gram(d, max_degree, quad_degree):
    indices = all_indices(d, max_degree)
    rule = ball_rule(d, quad_degree)
    vol, _ = geometry_constants(d)
    lift = lift_matrix(indices, rule.points, d, normalized=True)
    return indices, (lift * rule.weights) @ lift.T / (4 * d * d * vol)


def cmd_gram(cfg: RunConfig) -> int:
    indices, gram = normalized_gram(cfg.dim, cfg.max_degree, cfg.quad_degree)
    off = gram - np.diag(np.diag(gram))
    max_off = float(np.max(np.abs(off)))
    max_diag = float(np.max(np.abs(np.diag(gram) - 1)))
    passed = bool(max_off < cfg.tol and max_diag < cfg.tol)
    summary = {"command": "gram", "dim": cfg.dim, "degree": cfg.max_degree,
               "quad_degree": cfg.quad_degree, "n_basis": len(indices),
               "max_offdiag": max_off, "max_diag_deviation": max_diag,
               "tol": cfg.tol, "passed": passed}
    if cfg.output_format == "json":
        text = _render(summary, "json")
    else:
        text = _render([["metric", "value"]] + [[k, v] for k, v in summary.items()], "csv")
    write_output(text, cfg.output_path)
    print(f"gram d={cfg.dim} N={cfg.max_degree}: {len(indices)} functions, "
          f"max off-diagonal {max_off:.3e}, max diagonal deviation {max_diag:.3e}",
          file=sys.stderr)
    return EXIT_OK if passed else EXIT_TOL


def _sample_points(d):
    grid = sample_grid(d, *((25, 24) if d == 2 else (10, 10)))
    return grid[:, -d:]


def cmd_expand(cfg: RunConfig) -> int:
    f = get_function(cfg.function_name, cfg.dim)
    coeffs = expand(f, cfg.dim, cfg.max_degree, cfg.quad_degree)
    pts = _sample_points(cfg.dim)
    residual = float(np.max(np.abs(f(pts) - coeffs.evaluate(pts))))
    if cfg.output_format == "json":
        payload = coeffs.to_dict()
        payload["function"] = cfg.function_name
        payload["truncation_residual"] = residual
        text = _render(payload, "json")
    else:
        text = _render(list(coeffs.to_csv_rows()), "csv")
    write_output(text, cfg.output_path)
    nonzero = sum(abs(v) > 1e-10 for v in coeffs.entries.values())
    print(f"expand {cfg.function_name} d={cfg.dim} N={cfg.max_degree}: "
          f"{nonzero} nonzero coefficients, sampled truncation residual {residual:.3e}",
          file=sys.stderr)
    return EXIT_OK


def cmd_project(cfg: RunConfig) -> int:
    f = get_function(cfg.function_name, cfg.dim)
    coeffs = expand(f, cfg.dim, cfg.max_degree, cfg.quad_degree)
    rng = np.random.default_rng(cfg.seed)
    pts = _random_ball_points(rng, cfg.points, cfg.dim)
    rows, worst = [], 0.0
    for n in range(cfg.max_degree + 1):
        direct = coeffs.project(n, pts)
        kernel_form = proj_corollary(f, n, pts, cfg.dim, cfg.quad_degree)
        for k in range(len(pts)):
            diff = abs(direct[k] - kernel_form[k])
            worst = max(worst, diff)
            rows.append({"n": n, "point": k, "x": [float(v) for v in pts[k]],
                         "proj": float(direct[k]), "proj_kernel_form": float(kernel_form[k]),
                         "abs_diff": float(diff)})
    passed = bool(worst < cfg.tol)
    if cfg.output_format == "json":
        text = _render({"command": "project", "function": cfg.function_name, "dim": cfg.dim,
                        "degree": cfg.max_degree, "quad_degree": cfg.quad_degree,
                        "max_abs_diff": worst, "passed": passed, "rows": rows}, "json")
    else:
        head = ["n", "point"] + [f"x{i + 1}" for i in range(cfg.dim)] + \
            ["proj", "proj_kernel_form", "abs_diff"]
        body = [[r["n"], r["point"], *map(_fmt, r["x"]), _fmt(r["proj"]),
                 _fmt(r["proj_kernel_form"]), _fmt(r["abs_diff"])] for r in rows]
        text = _render([head] + body, "csv")
    write_output(text, cfg.output_path)
    print(f"project: max |eq-proj - kernel form| = {worst:.3e}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_TOL


def cmd_kernel(cfg: RunConfig) -> int:
    d = cfg.dim
    rng = np.random.default_rng(cfg.seed)
    xs = _random_ball_points(rng, cfg.points, d)
    ys = _random_ball_points(rng, cfg.points, d)
    rule = ball_rule(d, cfg.quad_degree)
    vol, _ = geometry_constants(d)
    rows, worst = [], 0.0
    for n in range(cfg.max_degree + 1):
        k_xy = kernel_sobolev(n, xs, ys, d)
        k_yx = kernel_sobolev(n, ys, xs, d)
        # <Q_a, K_n(x, .)> against Q_a(x) for every degree-n index a
        idxs = basis_indices(d, n)
        lift = lift_matrix(idxs, rule.points, d)
        gram = (lift * rule.weights) @ lift.T / (4 * d * d * vol)
        h = np.array([sobolev_norm_sq(i, d) for i in idxs])
        qx = sobolev_matrix(idxs, xs, d)
        repro = np.max(np.abs(gram @ (qx / h[:, None]) - qx), axis=0)
        for k in range(len(xs)):
            sym = abs(k_xy[k] - k_yx[k])
            worst = max(worst, sym, repro[k])
            rows.append([n, k, _fmt(k_xy[k]), _fmt(sym), _fmt(repro[k])])
    passed = bool(worst < cfg.tol)
    head = ["n", "pair", "kernel", "symmetry_dev", "reproducing_err"]
    if cfg.output_format == "json":
        text = _render({"command": "kernel", "dim": d, "degree": cfg.max_degree,
                        "quad_degree": cfg.quad_degree, "max_error": worst,
                        "passed": passed,
                        "rows": [dict(zip(head, r)) for r in rows]}, "json")
    else:
        text = _render([head] + rows, "csv")
    write_output(text, cfg.output_path)
    print(f"kernel: max symmetry/reproducing error {worst:.3e}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_TOL


def _grid_rows(solution, d, exact):
    grid = sample_grid(d, *((50, 50) if d == 2 else (20, 20)))
    pts = grid[:, -d:]
    u = solution.evaluate(pts)
    head = ["r", "theta"] + (["phi"] if d == 3 else []) + ["u"]
    rows = [head]
    ex = exact(pts) if exact is not None else None
    if ex is not None:
        head.append("u_exact")
    for k in range(len(pts)):
        row = [_fmt(v) for v in grid[k, :d]] + [_fmt(u[k])]
        if ex is not None:
            row.append(_fmt(ex[k]))
        rows.append(row)
    return rows


def cmd_poisson(cfg: RunConfig) -> int:
    case = get_poisson_problem(cfg.function_name, cfg.dim)
    problem = PoissonProblem(cfg.dim, case.rhs, cfg.max_degree,
                             max(cfg.quad_degree, 2 * cfg.max_degree + 8), case.exact)
    sol = solve_poisson(problem)
    err = None
    if case.exact is not None:
        err = sup_error(sol, case.exact, cfg.dim, *((50, 50) if cfg.dim == 2 else (20, 20)))
    payload = sol.coeffs.to_dict()
    payload.update({"problem": cfg.function_name, "residual_l2": sol.residual_l2,
                    "sup_error": err})
    json_text = _render(payload, "json")
    csv_text = _render(_grid_rows(sol, cfg.dim, case.exact), "csv")
    if cfg.output_format == "json":
        write_output(json_text, cfg.output_path)
        if cfg.output_path is not None:
            write_output(csv_text, _companion(cfg.output_path, ".grid.csv"))
    else:
        write_output(csv_text, cfg.output_path)
        if cfg.output_path is not None:
            write_output(json_text, _companion(cfg.output_path, ".coeffs.json"))
    degrees = sorted(set(range(0, cfg.max_degree + 1, 2)) | {cfg.max_degree})
    table = convergence_report(problem, degrees)
    print("degree  sup_error      residual_l2", file=sys.stderr)
    for row in table:
        se = "-" if row["sup_error"] is None else f"{row['sup_error']:.3e}"
        print(f"{row['degree']:6d}  {se:>12}  {row['residual_l2']:.3e}", file=sys.stderr)
    if err is None:
        return EXIT_OK
    return EXIT_OK if err < cfg.tol else EXIT_TOL


def cmd_convergence(cfg: RunConfig) -> int:
    case = get_poisson_problem(cfg.function_name, cfg.dim)
    degrees = sorted(set(range(0, cfg.max_degree + 1, 2)) | {cfg.max_degree})
    problem = PoissonProblem(cfg.dim, case.rhs, cfg.max_degree,
                             max(cfg.quad_degree, 2 * cfg.max_degree + 8), case.exact)
    table = convergence_report(problem, degrees)
    if cfg.output_format == "json":
        text = _render({"command": "convergence", "problem": cfg.function_name,
                        "dim": cfg.dim, "quad_degree": problem.quad_degree,
                        "rows": table}, "json")
    else:
        rows = [["degree", "sup_error", "residual_l2"]]
        rows += [[r["degree"], "" if r["sup_error"] is None else _fmt(r["sup_error"]),
                  _fmt(r["residual_l2"])] for r in table]
        text = _render(rows, "csv")
    write_output(text, cfg.output_path)
    resid = [r["residual_l2"] for r in table]
    monotone = all(b <= a + 1e-12 for a, b in zip(resid, resid[1:]))
    return EXIT_OK if monotone else EXIT_TOL


COMMANDS = {"gram": cmd_gram, "expand": cmd_expand, "project": cmd_project,
            "kernel": cmd_kernel, "poisson": cmd_poisson, "convergence": cmd_convergence}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
