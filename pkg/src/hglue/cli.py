"""Command-line interface.

Subcommands exercise each capability: algebra and model verification,
kernel tables, gluing and residual sweeps, the corrective solve, and the
exact component bookkeeping.  Every run emits a JSON report envelope (to
stdout, and to --out when given); sweep and solve can additionally write
CSV artifacts.  Exit status is 0 when all verdicts pass, 2 when the run
completed but a verdict failed, and 1 on errors.

The environment variable HGLUE_SEED sets the random seed (default 0); a
JSON --config file may supply any long-option defaults, with explicit
flags winning.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import algebra, invariants, linearized, model, reports, solver
from .approximate import (
    ApproxConfig,
    build_side_approx,
    glue_pairs,
    hitchin_residual,
    synthesize_side_data,
)
from .errors import HglueError, InvalidInput, IoError
from .geometry import CylinderGrid, PlumbingData
from .model import sp4_model_left, sp4_model_right

__all__ = ["main", "build_parser"]


def _seed():
    raw = os.environ.get("HGLUE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"HGLUE_SEED must be an integer, got {raw!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hglue",
        description="numerical laboratory for glued symplectic Higgs pairs",
    )
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the JSON report envelope here")
        p.add_argument("--csv", help="write the command's CSV artifact here")

    p = sub.add_parser("verify-algebra", help="randomized algebra identities")
    add_common(p)

    p = sub.add_parser("verify-model", help="scalar model residual convergence")
    add_common(p)

    p = sub.add_parser("kernel", help="model mode-system kernel table")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--jmax", type=int, default=16)
    add_common(p)

    p = sub.add_parser("glue", help="build and glue side approximations")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--R", type=float, default=0.1)
    p.add_argument("--grid-ntau", type=int, default=128)
    p.add_argument("--grid-nmodes", type=int, default=1)
    add_common(p)

    p = sub.add_parser("solve", help="corrective solve on a glued pair")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--R", type=float, default=0.1)
    p.add_argument("--grid-ntau", type=int, default=128)
    p.add_argument("--grid-nmodes", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=20)
    p.add_argument("--epsilon", type=float, default=0.1)
    add_common(p)

    p = sub.add_parser("sweep", help="residual or eigenvalue sweep over neck radii")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--R-list", default="0.2,0.1,0.05,0.025")
    p.add_argument("--grid-ntau", type=int, default=128)
    p.add_argument("--grid-nmodes", type=int, default=1)
    p.add_argument("--eigen", action="store_true", help="sweep smallest eigenvalues instead")
    add_common(p)

    p = sub.add_parser("classify", help="classify a hybrid gluing")
    p.add_argument("--g1", type=int, required=True)
    p.add_argument("--g2", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    add_common(p)

    p = sub.add_parser("census", help="component census and coverage")
    p.add_argument("--genus", type=int, default=2)
    add_common(p)

    parser.subcommand_parsers = dict(sub.choices)
    return parser


def _apply_config(parser, argv):
    """Parse args, letting an optional JSON config supply defaults."""
    ns, _ = parser.parse_known_args(argv)
    config_path = getattr(ns, "config", None)
    if not config_path:
        return parser.parse_args(argv)
    try:
        with open(config_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IoError(f"cannot read config {config_path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput("config file must hold a JSON object")
    defaults = {key.replace("-", "_"): value for key, value in data.items()}
    # subcommand parsers re-apply their own defaults over the shared
    # namespace, so config defaults must land on whichever parser owns
    # the option; keys owned by no parser at all are typos
    known = set()
    for target in (parser, *parser.subcommand_parsers.values()):
        owned = {
            key: value
            for key, value in defaults.items()
            if any(action.dest == key for action in target._actions)
        }
        if owned:
            target.set_defaults(**owned)
            known.update(owned)
    unknown = sorted(set(defaults) - known)
    if unknown:
        raise InvalidInput(f"unknown config keys: {', '.join(unknown)}")
    return parser.parse_args(argv)


def _cmd_verify_algebra(args):
    from .constants import SYMPLECTIC_J

    rng = np.random.default_rng(_seed())
    worst_hom = worst_rel = worst_add = worst_grp = worst_sp = 0.0
    for _ in range(100):
        m1 = algebra.random_traceless(rng)
        m2 = algebra.random_traceless(rng)
        im1, im2 = algebra.phi_irr_star(m1), algebra.phi_irr_star(m2)
        worst_hom = max(
            worst_hom,
            float(np.max(np.abs(algebra.bracket(im1, im2) - algebra.phi_irr_star(algebra.bracket(m1, m2))))),
        )
        worst_sp = max(worst_sp, float(np.max(np.abs(im1.T @ SYMPLECTIC_J + SYMPLECTIC_J @ im1))))
        n2 = algebra.frobenius_norm(im1) ** 2
        worst_rel = max(worst_rel, abs(n2 - 10.0 * algebra.frobenius_norm(m1) ** 2) / n2)
        ps = algebra.psi_star(m1, m2)
        worst_add = max(
            worst_add,
            abs(
                algebra.frobenius_norm(ps) ** 2
                - algebra.frobenius_norm(m1) ** 2
                - algebra.frobenius_norm(m2) ** 2
            )
            / algebra.frobenius_norm(ps) ** 2,
        )
        g1, g2 = algebra.random_unimodular(rng), algebra.random_unimodular(rng)
        ig1, ig2 = algebra.phi_irr_group(g1), algebra.phi_irr_group(g2)
        worst_grp = max(
            worst_grp,
            float(np.max(np.abs(ig1 @ ig2 - algebra.phi_irr_group(g1 @ g2)))),
            float(np.max(np.abs(ig1.T @ SYMPLECTIC_J @ ig1 - SYMPLECTIC_J))),
        )
    results = [
        reports.result_entry("bracket_homomorphism", worst_hom, 1e-9,
                             "pass" if worst_hom <= 1e-9 else "fail"),
        reports.result_entry("symplectic_membership", worst_sp, 1e-12,
                             "pass" if worst_sp <= 1e-12 else "fail"),
        reports.result_entry("norm_scaling_factor10", worst_rel, 1e-10,
                             "pass" if worst_rel <= 1e-10 else "fail"),
        reports.result_entry("norm_additivity", worst_add, 1e-10,
                             "pass" if worst_add <= 1e-10 else "fail"),
        reports.result_entry("group_homomorphism", worst_grp, 1e-9,
                             "pass" if worst_grp <= 1e-9 else "fail"),
    ]
    return results, None


def _cmd_verify_model(args):
    results = []
    for s in (0.3, 0.5, 0.7):
        ratios = []
        res = {}
        for n in (64, 128, 256):
            y = np.linspace(1.0, 6.0, 5 * n + 1)
            res[n] = model.scalar_reduction_residual(
                lambda yy: model.h_1s(s, yy), 1.0, s**2 / 4.0, y
            )
        ratio = res[64] / res[128]
        verdict = "pass" if 3.5 <= ratio <= 4.5 else "fail"
        results.append(
            reports.result_entry(f"richardson_ratio_s={s}", ratio, [3.5, 4.5], verdict)
        )
    u, _ = model.harmonic_map_model(0.5, 0.0, 1.0)
    dev = abs(float(u) - math.pi / 3.0)
    results.append(
        reports.result_entry("harmonic_map_value", dev, 1e-12,
                             "pass" if dev <= 1e-12 else "fail")
    )
    return results, None


def _cmd_kernel(args):
    dims = linearized.kernel_dimensions(args.C, -args.jmax, args.jmax)
    bad = {j: d for j, d in dims.items() if d != (4 if j == 0 else 0)}
    results = [
        reports.result_entry(
            "kernel_table",
            {str(j): dims[j] for j in sorted(dims)},
            None,
            "pass" if not bad else "fail",
            detail=f"C={args.C}, |j|<={args.jmax}",
        )
    ]
    return results, None


def _glued_pair(c_param, r_neck, n_tau, n_modes):
    grid = CylinderGrid.from_radius(r_neck, n_tau, n_modes)
    cfg = ApproxConfig(R=r_neck, C=c_param)
    left_model = sp4_model_left(c_param)
    right_model = sp4_model_right(c_param)
    left = build_side_approx(
        synthesize_side_data(grid, left_model, cfg), left_model, cfg
    )
    right = build_side_approx(
        synthesize_side_data(grid, right_model, cfg), right_model, cfg
    )
    return glue_pairs(left, right, PlumbingData.default_for_radius(r_neck))


def _cmd_glue(args):
    glued = _glued_pair(args.C, args.R, args.grid_ntau, args.grid_nmodes)
    rep = hitchin_residual(glued)
    scale = float(np.max(np.abs(glued.phiField)))
    rel2 = rep.res2Sup / scale
    results = [
        reports.result_entry("res1_sup", rep.res1Sup, None, "pass"),
        reports.result_entry("res2_rel_sup", rel2, 1e-10, "pass" if rel2 <= 1e-10 else "fail"),
    ]
    return results, None


def _cmd_solve(args):
    glued = _glued_pair(args.C, args.R, args.grid_ntau, args.grid_nmodes)
    cfg = solver.SolverConfig(tol=args.tol, maxIter=args.max_iter)
    result = solver.contraction_solve(glued, cfg)
    sig = solver.sigma_r(args.R, args.epsilon)
    final = result.trace.perStep[-1]
    results = [
        reports.result_entry("steps_used", result.stepsUsed, args.max_iter,
                             "pass" if result.converged else "fail"),
        reports.result_entry("final_res1_sup", final.res1Sup, args.tol,
                             "pass" if final.res1Sup <= args.tol else "fail"),
        reports.result_entry("gamma_sup", final.gammaNorm, sig,
                             "pass" if final.gammaNorm <= sig else "fail"),
    ]
    csv_payload = (
        ["step", "gamma_norm", "res1_sup", "ratio"],
        [
            (s.stepIndex, s.gammaNorm, s.res1Sup, s.contractionRatio)
            for s in result.trace.perStep
        ],
    )
    return results, csv_payload


def _cmd_sweep(args):
    r_values = [float(tok) for tok in str(args.R_list).split(",") if tok]
    if not r_values:
        raise InvalidInput("--R-list must contain at least one radius")
    results = []
    if args.eigen:
        rows = []
        for r in r_values:
            glued = _glued_pair(args.C, r, args.grid_ntau, args.grid_nmodes)
            op = linearized.linearize(glued)
            lam = linearized.smallest_eigenvalue(op)
            t_len = -math.log(r)
            rows.append((t_len, r, lam, lam * t_len**2))
        products = [row[3] for row in rows]
        ok = all(p > 0 for p in products) and max(products) / min(products) <= 10.0
        results.append(
            reports.result_entry(
                "lambda_min_times_T2",
                products,
                "positive, max/min <= 10",
                "pass" if ok else "fail",
            )
        )
        return results, (["T", "R", "lambda_min", "lambda_min_times_T2"], rows)
    rows = []
    grids = CylinderGrid.matched_sweep(r_values, args.grid_ntau, args.grid_nmodes)
    for r, grid in zip(r_values, grids):
        glued = _glued_pair(args.C, r, grid.nTau, args.grid_nmodes)
        rep = hitchin_residual(glued)
        rows.append((r, -math.log(r), rep.res1Sup, rep.res1L2, rep.res2Sup, float("nan")))
    slope = float("nan")
    if len(rows) >= 2:
        xs = np.log([row[0] for row in rows])
        ys = np.log([row[2] for row in rows])
        slope = float(np.polyfit(xs, ys, 1)[0])
        rows = [row[:5] + (slope,) for row in rows]
    ok = 0.15 <= slope <= 0.45 if not math.isnan(slope) else False
    results.append(
        reports.result_entry("res1_loglog_slope", slope, [0.15, 0.45],
                             "pass" if ok else "fail")
    )
    return results, (["R", "T", "res1_sup", "res1_l2", "res2_sup", "fitted_slope"], rows)


def _cmd_classify(args):
    cls = invariants.classify_hybrid(args.g1, args.g2, args.s)
    results = [
        reports.result_entry(
            "component_class",
            {
                "genusTotal": cls.genusTotal,
                "toledo": cls.toledo,
                "degL": cls.degL,
                "exceptional": cls.exceptional,
                "w1Zero": cls.w1Zero,
            },
            None,
            "pass",
        )
    ]
    return results, None


def _cmd_census(args):
    census = invariants.component_census(args.genus)
    coverage = invariants.coverage_sweep(args.genus)
    complete = all(entry["complete"] for entry in coverage.values())
    results = [
        reports.result_entry(
            "census",
            {"total": census.total, "exceptional": census.exceptional},
            None,
            "pass",
        ),
        reports.result_entry(
            "coverage_complete", complete, None, "pass" if complete else "fail"
        ),
    ]
    return results, None


_HANDLERS = {
    "verify-algebra": _cmd_verify_algebra,
    "verify-model": _cmd_verify_model,
    "kernel": _cmd_kernel,
    "glue": _cmd_glue,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "classify": _cmd_classify,
    "census": _cmd_census,
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        params = {
            key: value
            for key, value in sorted(vars(args).items())
            if key not in ("command", "out", "csv", "config") and value is not None
        }
        results, csv_payload = _HANDLERS[args.command](args)
        envelope = reports.make_envelope(args.command, params, results)
        text = reports.envelope_to_json(envelope)
        sys.stdout.write(text)
        if getattr(args, "out", None):
            reports.write_json(args.out, envelope)
        if getattr(args, "csv", None):
            if csv_payload is None:
                raise InvalidInput(f"command {args.command} produces no CSV artifact")
            reports.write_csv(args.csv, *csv_payload)
        return 0 if reports.overall_verdict(results) == "pass" else 2
    except HglueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
