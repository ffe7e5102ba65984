"""Contraction-mapping correction of approximate solutions.

The complex gauge orbit of a pair is parametrized by hermitian directions
gamma; expanding the curvature residual along the orbit gives

    res1(orbit(gamma)) = res1(pair) + L gamma + Q(gamma)

with L the assembled linearization and Q the quadratic remainder written
out in :func:`quadratic_remainder`.  A corrected pair is found by the
chord iteration gamma <- gamma - L^{-1} res1(orbit(gamma)), which is the
Picard iteration for the fixed point of T(gamma) = -L^{-1}(res1 + Q(gamma))
and converges geometrically from small initial residuals.  The radius
sigma_R = |log R|^{-2-eps} / c bounds the ball in which the corrected
solution is unique; starting data whose scaled residual exceeds the frozen
basin threshold is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _discrete
from .algebra import bracket, sp4_project
from .approximate import (
    GaugeField,
    HiggsPairField,
    apply_complex_gauge,
    hitchin_residual,
    _gauge_exponentials,
)
from .constants import (
    DEFAULT_EPSILON,
    FITTED_BASIN_THRESHOLD,
    FITTED_SIGMA_PREFACTOR,
)
from .errors import BasinError, ConvergenceError, InvalidInput
from .linearized import inverse_apply, linearize

__all__ = [
    "SolverConfig",
    "StepRecord",
    "IterationTrace",
    "SolveResult",
    "sigma_r",
    "quadratic_remainder",
    "contraction_solve",
    "fixed_point_gap",
    "h2_norm",
    "lipschitz_estimate",
]


@dataclass(frozen=True)
class SolverConfig:
    """Iteration parameters for the corrective solve."""

    tol: float = 1e-8
    maxIter: int = 20
    epsilonBall: float = 0.1
    sigmaR: float = None
    allowDamping: bool = False

    def __post_init__(self):
        if self.tol <= 0 or self.maxIter < 1:
            raise InvalidInput("tol must be positive and maxIter at least 1")
        if not (0.0 < self.epsilonBall <= 1.0):
            raise InvalidInput("epsilonBall must lie in (0, 1]")


@dataclass(frozen=True)
class StepRecord:
    stepIndex: int
    gammaNorm: float
    res1Sup: float
    contractionRatio: float = None


@dataclass
class IterationTrace:
    perStep: list = field(default_factory=list)
    damped: bool = False
    notes: str = ""


@dataclass
class SolveResult:
    gauge: GaugeField
    corrected: HiggsPairField
    trace: IterationTrace
    sigmaR: float
    converged: bool
    withinBall: bool
    stepsUsed: int


def sigma_r(r_neck, epsilon=DEFAULT_EPSILON):
    """Radius of the uniqueness ball at neck radius R."""
    if not (0.0 < r_neck < 1.0):
        raise InvalidInput(f"neck radius must lie in (0, 1), got {r_neck}")
    return abs(math.log(r_neck)) ** (-2.0 - epsilon) / FITTED_SIGMA_PREFACTOR


def _adjoint(x):
    return np.conj(np.swapaxes(x, -1, -2))


def quadratic_remainder(gauge, pair):
    """Quadratic remainder Q(gamma) of the orbit expansion, as a field.

    Assembles the connection and Higgs remainders

        ra01 = g^-1 (dbar g + [alpha, g]) - u(gamma)
        ra10 = -(dzeta g - [alpha^dag, g]) g^-1 + v(gamma)
        rphi = g^-1 phi g - [phi, gamma] - phi

    and combines their covariant derivatives with the square terms of the
    expansion; on interior rows the result agrees with
    res1(orbit(gamma)) - res1(pair) - (linear term) to rounding, since all
    three use the same stencils.
    """
    grid = pair.grid
    dmat = _discrete.theta_diff_matrix(grid.nTheta)
    dtau = grid.dTau
    gamma = gauge.gamma
    a = pair.aField
    a_dag = _adjoint(a)
    phi = pair.phiField
    phi_dag = _adjoint(phi)
    g, ginv = _gauge_exponentials(gauge)

    u = _discrete.dbar_coeff_dirichlet(gamma, dtau, dmat) + bracket(a, gamma)
    v = _discrete.dzeta_coeff_dirichlet(gamma, dtau, dmat) - bracket(a_dag, gamma)

    eye = np.broadcast_to(np.eye(4, dtype=complex), g.shape)
    dbar_g = _discrete.dbar_coeff_dirichlet(g - eye, dtau, dmat)
    dzeta_g = _discrete.dzeta_coeff_dirichlet(g - eye, dtau, dmat)
    # The Maurer-Cartan pieces carry the same exact algebra projection as
    # the orbit map, so the expansion identity holds to rounding.
    mc01 = sp4_project(ginv @ dbar_g)
    mc10 = sp4_project(dzeta_g @ ginv)
    ra01 = mc01 + ginv @ a @ g - a - u
    ra10 = -mc10 + a_dag - g @ a_dag @ ginv + v
    rphi = ginv @ phi @ g - bracket(phi, gamma) - phi

    w01 = u + ra01
    w10 = -v + ra10
    p_term = bracket(phi, gamma) + rphi

    qc = (
        _discrete.dzeta_coeff(ra01, dtau, dmat)
        - bracket(a_dag, ra01)
        - _discrete.dbar_coeff(ra10, dtau, dmat)
        - bracket(a, ra10)
        - bracket(phi_dag, rphi)
        + bracket(phi, _adjoint(rphi))
        + bracket(w10, w01)
        + bracket(p_term, _adjoint(p_term))
    )
    return -2.0 * qc


def _gamma_from_vector(op, vec):
    return GaugeField(op.grid, op.vector_to_field(vec), kind="hermitian", dirichletBoundary=True)


def contraction_solve(pair, cfg=None, gamma0=None):
    """Correct an approximate solution by the chord iteration.

    The linearization is assembled once at the input pair; each step
    evaluates the curvature residual on the current orbit point and applies
    the inverse.  Raises BasinError when the scaled initial residual
    exceeds the frozen threshold (unless damping is allowed, in which case
    half-steps are taken until the iterate re-enters the basin, recorded on
    the trace), and ConvergenceError with the trace attached when the
    iteration budget is exhausted.
    """
    cfg = cfg or SolverConfig()
    grid = pair.grid
    log_r2 = math.log(grid.rNeck) ** 2
    sigma = cfg.sigmaR if cfg.sigmaR is not None else sigma_r(grid.rNeck)
    trace = IterationTrace()

    base_rep = hitchin_residual(pair)
    scaled = base_rep.res1Sup * log_r2
    damping_left = 0
    if scaled > FITTED_BASIN_THRESHOLD:
        if not cfg.allowDamping:
            raise BasinError(
                f"scaled initial residual {scaled:.3e} exceeds basin threshold "
                f"{FITTED_BASIN_THRESHOLD:.3e}"
            )
        trace.damped = True
        trace.notes = "damped steps engaged outside the basin"
        damping_left = 10

    op = linearize(pair)
    if gamma0 is None:
        x = np.zeros(op.size)
    else:
        x = op.field_to_vector(gamma0.gamma)

    prev_res = None
    for step in range(cfg.maxIter + 1):
        gauge = _gamma_from_vector(op, x)
        current = apply_complex_gauge(gauge, pair)
        rep = hitchin_residual(current)
        gamma_norm = _discrete.field_sup(gauge.gamma)
        ratio = rep.res1Sup / prev_res if prev_res not in (None, 0.0) else None
        trace.perStep.append(
            StepRecord(
                stepIndex=step,
                gammaNorm=gamma_norm,
                res1Sup=rep.res1Sup,
                contractionRatio=ratio,
            )
        )
        prev_res = rep.res1Sup

        correction = inverse_apply(op, rep.res1Field)
        step_size = _discrete.field_sup(correction.gamma)
        if rep.res1Sup < cfg.tol and (step == 0 or step_size < 10.0 * cfg.tol):
            return SolveResult(
                gauge=gauge,
                corrected=current,
                trace=trace,
                sigmaR=sigma,
                converged=True,
                withinBall=gamma_norm <= sigma,
                stepsUsed=step,
            )
        factor = 1.0
        if damping_left > 0 and rep.res1Sup * log_r2 > FITTED_BASIN_THRESHOLD:
            factor = 0.5
            damping_left -= 1
        x = x - factor * op.field_to_vector(correction.gamma)

    raise ConvergenceError(
        f"no convergence within {cfg.maxIter} steps (last res1Sup {prev_res:.3e})",
        trace=trace,
    )


def fixed_point_gap(pair, result, op=None):
    """Sup-norm gap ||T(gamma*) - gamma*|| at the converged correction.

    T(gamma) = -L^{-1}(res1(pair) + Q(gamma)); on the exact fixed point of
    the chord iteration the gap reflects only rounding and the convergence
    tolerance, so it is small compared to sigma_R.
    """
    op = op or linearize(pair)
    base = hitchin_residual(pair).res1Field
    q_field = quadratic_remainder(result.gauge, pair)
    t_gamma = inverse_apply(op, base + q_field)
    return _discrete.field_sup(-t_gamma.gamma - result.gauge.gamma)


def h2_norm(field_or_gauge, grid):
    """Discrete second-order Sobolev norm over interior rows."""
    f = field_or_gauge.gamma if hasattr(field_or_gauge, "gamma") else field_or_gauge
    dmat = _discrete.theta_diff_matrix(grid.nTheta)
    dt = _discrete.apply_d_tau(f, grid.dTau)
    dth = _discrete.apply_d_theta(f, matrix=dmat)
    dtt = _discrete.apply_d_tau(dt, grid.dTau)
    dtth = _discrete.apply_d_theta(dt, matrix=dmat)
    dthth = _discrete.apply_d_theta(dth, matrix=dmat)
    total = 0.0
    for g in (f, dt, dth, dtt, dtth, dthth):
        total += _discrete.interior_l2(g, grid.dTau, grid.dTheta) ** 2
    return math.sqrt(total)


def lipschitz_estimate(pair, rng, n_pairs=50, radius=0.1):
    """Empirical Lipschitz ratio of the quadratic remainder on a ball.

    Draws random interior-supported direction pairs of the given ball
    radius (measured in the discrete second-order norm) and returns the
    largest ratio ||Q(g1) - Q(g0)||_L2 / ||g1 - g0||_H2 together with the
    ball radius, for comparison against coeff * radius.
    """
    from .linearized import random_interior_gauge

    grid = pair.grid
    worst = 0.0
    for _ in range(n_pairs):
        g0 = random_interior_gauge(grid, rng, scale=1.0)
        g1 = random_interior_gauge(grid, rng, scale=1.0)
        s0 = radius / max(h2_norm(g0, grid), 1e-30)
        s1 = radius / max(h2_norm(g1, grid), 1e-30)
        f0 = GaugeField(grid, s0 * g0.gamma, kind="hermitian", dirichletBoundary=True)
        f1 = GaugeField(grid, s1 * g1.gamma, kind="hermitian", dirichletBoundary=True)
        q0 = quadratic_remainder(f0, pair)
        q1 = quadratic_remainder(f1, pair)
        diff_q = _discrete.interior_l2(q1 - q0, grid.dTau, grid.dTheta)
        diff_g = h2_norm(f1.gamma - f0.gamma, grid)
        if diff_g > 0:
            worst = max(worst, diff_q / diff_g)
    return worst, radius
