"""Acceptance suite: one criterion per test, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines; each test also enforces its runtime budget.
"""

import math
import time
from fractions import Fraction

import numpy as np

from hglue import _discrete, algebra, invariants, linearized, model, solver
from hglue.approximate import (
    ApproxConfig,
    GluingError,
    build_side_approx,
    glue_pairs,
    hitchin_residual,
    synthesize_side_data,
)
from hglue.constants import FITTED_LIPSCHITZ_COEFF, SYMPLECTIC_J
from hglue.geometry import CylinderGrid, PlumbingData
from hglue.linearized import linearize, random_interior_gauge, smallest_eigenvalue

from conftest import make_glued


def _finish(num, slug, problems, t0, budget):
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < budget
    print(f"criterion {num} ({slug}): {'PASS' if ok else 'FAIL'} "
          f"[{elapsed:.2f}s / {budget:.0f}s]")
    assert not problems, "; ".join(problems)
    assert elapsed < budget, f"runtime {elapsed:.2f}s over budget {budget}s"


def _sp4_defect(x):
    return float(np.max(np.abs(x.T @ SYMPLECTIC_J + SYMPLECTIC_J @ x)))


def test_criterion_1_embedding_algebra_identities():
    t0 = time.perf_counter()
    problems = []
    rng = np.random.default_rng(101)
    for i in range(100):
        m1, m2 = algebra.random_traceless(rng), algebra.random_traceless(rng)
        a1, a2 = algebra.random_traceless(rng), algebra.random_traceless(rng)
        b1, b2 = algebra.random_traceless(rng), algebra.random_traceless(rng)

        img1, img2 = algebra.phi_irr_star(m1), algebra.phi_irr_star(m2)
        br = algebra.phi_irr_star(m1 @ m2 - m2 @ m1)
        scale = max(1.0, float(np.max(np.abs(br))))
        if np.max(np.abs(algebra.bracket(img1, img2) - br)) > 1e-9 * scale:
            problems.append(f"irr bracket homomorphism failed at draw {i}")
        p1 = algebra.psi_star(a1, b1)
        p2 = algebra.psi_star(a2, b2)
        pbr = algebra.psi_star(a1 @ a2 - a2 @ a1, b1 @ b2 - b2 @ b1)
        if np.max(np.abs(algebra.bracket(p1, p2) - pbr)) > 1e-9:
            problems.append(f"product bracket homomorphism failed at draw {i}")

        for img in (img1, img2, p1, p2):
            if _sp4_defect(img) > 1e-12 * max(1.0, float(np.max(np.abs(img)))):
                problems.append(f"image left sp(4) at draw {i}")

        n_m = algebra.frobenius_norm(m1) ** 2
        n_img = algebra.frobenius_norm(img1) ** 2
        if abs(n_img - 10.0 * n_m) > 1e-10 * 10.0 * n_m:
            problems.append(f"tenfold norm scaling failed at draw {i}")
        n_pair = algebra.frobenius_norm(a1) ** 2 + algebra.frobenius_norm(b1) ** 2
        if abs(algebra.frobenius_norm(p1) ** 2 - n_pair) > 1e-10 * n_pair:
            problems.append(f"additive norm identity failed at draw {i}")
        if problems:
            break
    _finish(1, "embedding-algebra-identities", problems, t0, 1.0)


def test_criterion_2_group_homomorphism():
    t0 = time.perf_counter()
    problems = []
    rng = np.random.default_rng(202)
    j = SYMPLECTIC_J
    for i in range(100):
        g1, g2 = algebra.random_unimodular(rng), algebra.random_unimodular(rng)
        lhs = algebra.phi_irr_group(g1 @ g2)
        rhs = algebra.phi_irr_group(g1) @ algebra.phi_irr_group(g2)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        if np.max(np.abs(lhs - rhs)) > 1e-9 * scale:
            problems.append(f"group homomorphism failed at draw {i}")
        big = algebra.phi_irr_group(g1)
        if np.max(np.abs(big.T @ j @ big - j)) > 1e-9 * scale:
            problems.append(f"symplectic form not preserved at draw {i}")
        if problems:
            break
    _finish(2, "group-homomorphism", problems, t0, 1.0)


def test_criterion_3_mode_kernel_table():
    t0 = time.perf_counter()
    problems = []
    for c in (0.01, 0.5, 1.0, 3.0):
        dims = linearized.kernel_dimensions(c, -16, 16, rel_tol=1e-10)
        for jj, dim in dims.items():
            want = 4 if jj == 0 else 0
            if dim != want:
                problems.append(f"C={c}, j={jj}: kernel dim {dim} != {want}")
    _finish(3, "mode-kernel-table", problems, t0, 1.0)


def test_criterion_4_model_residual_order_two():
    t0 = time.perf_counter()
    problems = []
    for s in (0.3, 0.5, 0.7):
        res = []
        for spacing in (64, 128):
            y = np.linspace(1.0, 6.0, 5 * spacing + 1)  # dy = 1/spacing
            res.append(
                model.scalar_reduction_residual(model.h_1s(s, y), 1.0, s**2 / 4.0, y)
            )
        ratio = res[0] / res[1]
        if not 3.5 <= ratio <= 4.5:
            problems.append(f"s={s}: refinement ratio {ratio:.3f} outside [3.5, 4.5]")
    _finish(4, "model-residual-order-two", problems, t0, 5.0)


def test_criterion_5_approximation_error_law():
    t0 = time.perf_counter()
    problems = []
    radii = [0.2, 0.1, 0.05, 0.025]
    cfg = ApproxConfig(R=radii[0])
    if (cfg.deltaPrime, cfg.deltaDoublePrime) != (0.4, 0.3):
        problems.append("configured exponents moved off (0.4, 0.3)")
    sups = []
    for grid in CylinderGrid.matched_sweep(radii, 96, 1):
        pair = make_glued(grid.rNeck, grid.nTau, 1, grid=grid)
        rep = hitchin_residual(pair)
        sups.append(rep.res1Sup)
        rel2 = rep.res2Sup / float(np.max(np.abs(pair.phiField)))
        if rel2 > 1e-10:
            problems.append(f"R={grid.rNeck}: res2 relative sup {rel2:.2e} above floor")
    slope = float(np.polyfit(np.log(radii), np.log(sups), 1)[0])
    lo, hi = 0.5 * cfg.deltaDoublePrime, 1.5 * cfg.deltaDoublePrime
    if not (slope > 0 and lo <= slope <= hi):
        problems.append(f"log-log slope {slope:.4f} outside [{lo}, {hi}]")
    _finish(5, "approximation-error-law", problems, t0, 30.0)


def test_criterion_6_eigenvalue_scaling():
    t0 = time.perf_counter()
    problems = []
    lengths = [4.0, 6.0, 8.0, 10.0, 12.0]
    products = []
    first_pair = first_op = None
    for half_len in lengths:
        pair = make_glued(math.exp(-half_len), 256, 2)
        op = linearize(pair)
        if first_pair is None:
            first_pair, first_op = pair, op
        lam = smallest_eigenvalue(op)
        products.append(lam * half_len**2)
    if not all(p > 0 for p in products):
        problems.append(f"nonpositive eigenvalue product in {products}")
    spread = max(products) / min(products)
    if spread > 10.0:
        problems.append(f"lambda_min * T^2 spread {spread:.2f} exceeds 10")

    m = first_op.matrix
    d = (m - m.T).tocoo()
    dmax = float(np.max(np.abs(d.data))) if d.nnz else 0.0
    if dmax > 1e-10 * float(np.max(np.abs(m.data))):
        problems.append(f"operator asymmetry {dmax:.2e}")

    # quadratic-form identity against independently stenciled stage fields
    grid = first_pair.grid
    dmat = _discrete.theta_diff_matrix(grid.nTheta)
    a = first_pair.aField
    a_dag = np.conj(np.swapaxes(a, -1, -2))
    phi = first_pair.phiField
    rng = np.random.default_rng(606)
    for i in range(50):
        gamma = random_interior_gauge(grid, rng, scale=0.5).gamma
        x = first_op.field_to_vector(gamma)
        lhs = float(x @ (first_op.matrix @ x))
        u = _discrete.dbar_coeff_dirichlet(gamma, grid.dTau, dmat) + (
            a @ gamma - gamma @ a
        )
        v = _discrete.dzeta_coeff_dirichlet(gamma, grid.dTau, dmat) - (
            a_dag @ gamma - gamma @ a_dag
        )
        pg = phi @ gamma - gamma @ phi
        rhs = 2.0 * float(np.sum(np.abs(u) ** 2)) + 2.0 * float(
            np.sum(np.abs(v) ** 2)
        ) + 4.0 * float(np.sum(np.abs(pg) ** 2))
        if abs(lhs - rhs) > 1e-8 * max(1.0, abs(rhs)):
            problems.append(f"quadratic-form identity defect at direction {i}")
            break
    _finish(6, "eigenvalue-scaling", problems, t0, 120.0)


def test_criterion_7_contraction_solve():
    t0 = time.perf_counter()
    problems = []
    pair = make_glued(0.1, 128, 1)
    res = solver.contraction_solve(pair)
    if not res.converged or res.stepsUsed > 20:
        problems.append(f"no convergence within 20 steps (used {res.stepsUsed})")
    final = res.trace.perStep[-1].res1Sup
    if final >= 1e-8:
        problems.append(f"final residual {final:.2e} not below 1e-8")
    if not res.withinBall:
        problems.append("corrector left the uniqueness ball")
    if _discrete.field_sup(res.gauge.gamma) > res.sigmaR:
        problems.append("gauge norm exceeds sigma_R")

    grid = pair.grid
    starts = [
        random_interior_gauge(grid, np.random.default_rng(seed), scale=1e-3)
        for seed in (11, 22)
    ]
    runs = [solver.contraction_solve(pair, gamma0=g) for g in starts]
    diff = float(np.max(np.abs(runs[0].gauge.gamma - runs[1].gauge.gamma)))
    if diff > 1e-7:
        problems.append(f"two in-ball starts disagree by {diff:.2e}")

    worst, radius = solver.lipschitz_estimate(
        pair, np.random.default_rng(707), n_pairs=50, radius=0.1
    )
    if not (0.0 < worst <= FITTED_LIPSCHITZ_COEFF * radius):
        problems.append(f"Lipschitz ratio {worst:.4f} outside linear-in-r bound")
    _finish(7, "contraction-solve", problems, t0, 120.0)


def test_criterion_8_invariant_arithmetic():
    t0 = time.perf_counter()
    problems = []
    for g in range(0, 7):
        for s in range(1, 7):
            want = Fraction(2 * g - 2 + s)
            for maker in (
                invariants.model_bundle_irreducible,
                invariants.model_bundle_product,
            ):
                got = invariants.parabolic_degree(maker(g, s))
                if got != want:
                    problems.append(f"{maker.__name__}({g},{s}) degree {got} != {want}")
    for g1 in range(1, 5):
        for g2 in range(1, 5):
            for s in range(1, 5):
                cls = invariants.classify_hybrid(g1, g2, s)
                deg = cls.degL
                g = cls.genusTotal
                if deg != 2 * g1 + s - 2:
                    problems.append(f"degL formula failed at ({g1},{g2},{s})")
                if not (s <= deg <= 2 * g - s - 2):
                    problems.append(f"degL range failed at ({g1},{g2},{s})")
    census = invariants.component_census(2)
    if (census.total, census.exceptional) != (48, 1):
        problems.append(f"genus-2 census ({census.total}, {census.exceptional})")
    for g, row in invariants.coverage_sweep(8).items():
        if row["attained"] != row["expected"] or len(row["attained"]) != 2 * g - 3:
            problems.append(f"coverage incomplete at genus {g}")
    _finish(8, "invariant-arithmetic", problems, t0, 1.0)


def test_criterion_9_gluing_compatibility():
    t0 = time.perf_counter()
    problems = []
    r_neck, c_param = 0.1, 1.0
    grid = CylinderGrid.from_radius(r_neck, 64, 1)
    cfg = ApproxConfig(R=r_neck, C=c_param)
    lm, rm = model.sp4_model_left(c_param), model.sp4_model_right(c_param)
    if not model.models_opposite(lm, rm):
        problems.append("matched models are not exact negatives")
    left = build_side_approx(synthesize_side_data(grid, lm, cfg), lm, cfg)
    right = build_side_approx(synthesize_side_data(grid, rm, cfg), rm, cfg)
    plumbing = PlumbingData.default_for_radius(r_neck)
    try:
        glued = glue_pairs(left, right, plumbing)
        half = grid.nTau // 2
        seam_gap = float(np.max(np.abs(glued.phiField[half] - rm.higgsCoeff)))
        if seam_gap != 0.0:
            problems.append(f"seam mismatch {seam_gap:.2e} is not exactly zero")
    except GluingError as exc:
        problems.append(f"matched gluing rejected: {exc}")

    cfg2 = ApproxConfig(R=r_neck, C=1.01)
    rm2 = model.sp4_model_right(1.01)
    right2 = build_side_approx(synthesize_side_data(grid, rm2, cfg2), rm2, cfg2)
    try:
        glue_pairs(left, right2, plumbing)
        problems.append("mismatched models were glued without error")
    except GluingError:
        pass
    _finish(9, "gluing-compatibility", problems, t0, 1.0)
