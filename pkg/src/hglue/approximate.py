"""Approximate solutions over the plumbed neck.

Fields live on a cylinder grid and are stored as coefficient arrays: a pair
(alpha, phi) of shape (nTau + 1, nTheta, 4, 4) encodes the connection
A = alpha d(zeta_bar) - alpha^dagger d(zeta) and the Higgs field
Phi = phi d(zeta) in a fixed unitary frame.  The two coupled equations are

    res2 = dbar(phi) + [alpha, phi]                      (holomorphicity)
    res1 = -2 ( dzeta(alpha) + dbar(alpha^dagger)
                + [alpha, alpha^dagger] + [phi, phi^dagger] )   (curvature)

with the -2 factor converting the d(zeta) ^ d(zeta_bar) coefficient into
the function paired with the area form.  Equations and norms are evaluated
on interior grid rows; the two boundary rows carry Dirichlet data.

Side data decays toward a constant diagonal model at the deep end of the
cylinder along a nilpotent tower: a square-zero generator K of the
block-unitary subalgebra produces deviation directions M1 = -[K, phi0] and
M2 = [K, [K, phi0]] (the tower terminates: [K, M2] = 0), and geometric
axial profiles are exact eigenfunctions of the centered difference stencil,
so the holomorphicity equation is satisfied to machine precision on
interior rows.  Cutting off with the radial profile chi and regluing two
opposite sides across the neck produces the approximate solution whose
curvature residual concentrates in the two mixing annuli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _discrete
from .algebra import bracket, embed_h_from_gl2, sp4_diag, sp4_project
from .constants import (
    FIELD_MEMBERSHIP_TOL,
    FIXTURE_AMPLITUDE_DEFAULT,
    PATTERN_TOL,
)
from .errors import DimensionError, GluingError, InvalidInput
from .geometry import cutoff_chi

_KEEP = object()

__all__ = [
    "ApproxConfig",
    "HiggsPairField",
    "GaugeField",
    "ResidualReport",
    "FixtureChannel",
    "model_field",
    "tower_generators",
    "synthesize_side_data",
    "hitchin_residual",
    "build_side_approx",
    "glue_pairs",
    "apply_complex_gauge",
]


@dataclass(frozen=True)
class ApproxConfig:
    """Gluing parameters: neck radius and decay/weight exponents.

    Requires 0 < deltaDoublePrime < deltaPrime < 1/2 and 0 < R < 1.
    """

    R: float
    deltaPrime: float = 0.4
    deltaDoublePrime: float = 0.3
    C: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.R < 1.0):
            raise InvalidInput(f"R must lie in (0, 1), got {self.R}")
        if not (0.0 < self.deltaDoublePrime < self.deltaPrime < 0.5):
            raise InvalidInput(
                "exponents must satisfy 0 < deltaDoublePrime < deltaPrime < 1/2, "
                f"got deltaPrime={self.deltaPrime}, deltaDoublePrime={self.deltaDoublePrime}"
            )
        if self.C == 0:
            raise InvalidInput("model parameter C must be nonzero")


def _block_pattern_defect(phi):
    """Max deviation of trailing 4x4 blocks from the [[S, Q], [Q, -S^T]] pattern."""
    p = phi[..., :2, :2]
    q = phi[..., :2, 2:]
    r = phi[..., 2:, :2]
    anti = np.max(np.abs(p - np.swapaxes(p, -1, -2)))
    offd = np.max(np.abs(q - r))
    return max(anti, offd)


class HiggsPairField:
    """Discretized pair (alpha, phi) on a cylinder grid, plus frame metric.

    ``aField`` must be pointwise symplectic-compatible; ``phiField`` must in
    addition sit in the off-block pattern of the involution splitting
    whenever the frame metric is the identity (constructions produce such
    frames; complex-gauge orbits carry a transported metric and the pattern
    lives in the transported frame instead).
    """

    def __init__(self, grid, aField, phiField, metric=None):
        from .constants import SYMPLECTIC_J

        self.grid = grid
        self.aField = np.asarray(aField, dtype=complex)
        self.phiField = np.asarray(phiField, dtype=complex)
        shape = (grid.nTau + 1, grid.nTheta, 4, 4)
        for name, arr in (("aField", self.aField), ("phiField", self.phiField)):
            if arr.shape != shape:
                raise DimensionError(f"{name} must have shape {shape}, got {arr.shape}")
        self.metric = None if metric is None else np.asarray(metric, dtype=complex)
        if self.metric is not None:
            if self.metric.shape != shape:
                raise DimensionError(f"metric must have shape {shape}")
            herm = np.max(np.abs(self.metric - np.conj(np.swapaxes(self.metric, -1, -2))))
            if herm > FIELD_MEMBERSHIP_TOL:
                raise InvalidInput("metric must be pointwise hermitian")
            eigs = np.linalg.eigvalsh(self.metric)
            if np.min(eigs) <= 0:
                raise InvalidInput("metric must be pointwise positive definite")
        scale = max(1.0, float(np.max(np.abs(self.aField))), float(np.max(np.abs(self.phiField))))
        for name, arr in (("aField", self.aField), ("phiField", self.phiField)):
            xt = np.swapaxes(arr, -1, -2)
            defect = np.max(np.abs(xt @ SYMPLECTIC_J + SYMPLECTIC_J @ arr))
            if defect > FIELD_MEMBERSHIP_TOL * scale:
                raise InvalidInput(
                    f"{name} leaves the symplectic algebra pointwise (defect {defect:.3e})"
                )
        if self.metric is None:
            defect = _block_pattern_defect(self.phiField)
            if defect > PATTERN_TOL * scale:
                raise InvalidInput(
                    f"phiField leaves the off-block pattern (defect {defect:.3e})"
                )

    def copy_with(self, aField=None, phiField=None, metric=_KEEP):
        """Copy, replacing selected payload arrays (sentinel keeps metric)."""
        return HiggsPairField(
            self.grid,
            self.aField if aField is None else aField,
            self.phiField if phiField is None else phiField,
            self.metric if metric is _KEEP else metric,
        )


class GaugeField:
    """Pointwise gauge direction gamma on a cylinder grid.

    ``kind`` is "hermitian" (complex-orbit directions; exponentials are
    positive self-adjoint frame changes) or "antihermitian" (unitary
    directions).  With ``dirichletBoundary`` the two boundary rows must
    vanish, as for corrections produced by the solver.
    """

    def __init__(self, grid, gamma, kind="hermitian", dirichletBoundary=False):
        self.grid = grid
        self.gamma = np.asarray(gamma, dtype=complex)
        shape = (grid.nTau + 1, grid.nTheta, 4, 4)
        if self.gamma.shape != shape:
            raise DimensionError(f"gamma must have shape {shape}, got {self.gamma.shape}")
        if kind not in ("hermitian", "antihermitian"):
            raise InvalidInput(f"unknown gauge kind {kind!r}")
        self.kind = kind
        self.dirichletBoundary = bool(dirichletBoundary)
        scale = max(1.0, float(np.max(np.abs(self.gamma))))
        adj = np.conj(np.swapaxes(self.gamma, -1, -2))
        defect = np.max(np.abs(self.gamma - adj if kind == "hermitian" else self.gamma + adj))
        if defect > FIELD_MEMBERSHIP_TOL * scale:
            raise InvalidInput(f"gamma is not {kind} (defect {defect:.3e})")
        if self.dirichletBoundary:
            edge = max(float(np.max(np.abs(self.gamma[0]))), float(np.max(np.abs(self.gamma[-1]))))
            if edge > FIELD_MEMBERSHIP_TOL * scale:
                raise InvalidInput("gamma must vanish on the boundary rows")


@dataclass(frozen=True)
class ResidualReport:
    """Residual fields of the two equations and their interior norms."""

    res1Field: np.ndarray
    res2Field: np.ndarray
    res1Sup: float
    res2Sup: float
    res1L2: float
    res2L2: float


@dataclass(frozen=True)
class FixtureChannel:
    """One decay channel of synthesized side data: angular mode and weight."""

    mode: int = 0
    weight: complex = 1.0


def model_field(grid, model):
    """Constant pair equal to the given model everywhere on the grid."""
    shape = (grid.nTau + 1, grid.nTheta, 4, 4)
    a = np.broadcast_to(model.connectionCoeff, shape).copy()
    phi = np.broadcast_to(model.higgsCoeff, shape).copy()
    return HiggsPairField(grid, a, phi)


def tower_generators(model):
    """Square-zero generator K and tower directions (M1, M2) at a model.

    K is the image of the 2x2 elementary nilpotent under the block-unitary
    embedding; M1 = -[K, phi0] and M2 = [K, [K, phi0]] span the deviation
    directions, and the tower terminates: [K, M2] = 0 exactly.
    """
    k2 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    K = embed_h_from_gl2(k2)
    phi0 = model.higgsCoeff
    M1 = -bracket(K, phi0)
    M2 = bracket(K, bracket(K, phi0))
    return K, M1, M2


def _mu(order, delta, d_tau):
    """Centered-difference eigenvalue of the profile exp(order*delta*tau)."""
    return math.sinh(order * delta * d_tau) / d_tau


def _profiles(grid, cfg, channels, amplitude):
    """Per-channel geometric profiles c_i and their dbar eigenvalues."""
    tau = grid.tau_nodes()
    theta = grid.theta_nodes()
    dp = cfg.deltaPrime
    radial = np.exp(dp * (tau - grid.tMax))
    out = []
    for ch in channels:
        if 2 * abs(ch.mode) > grid.nModes:
            raise InvalidInput(
                f"channel mode {ch.mode} too high: quadratic terms need "
                f"2|mode| <= nModes = {grid.nModes}"
            )
        c = (amplitude * ch.weight) * radial[:, None] * np.exp(1j * ch.mode * theta)[None, :]
        lam1 = 0.5 * (_mu(1, dp, grid.dTau) - ch.mode)
        out.append((ch, c, lam1))
    return out


def _lam2(grid, cfg, mode_sum):
    lam = 0.5 * (_mu(2, cfg.deltaPrime, grid.dTau) - mode_sum)
    if abs(lam) < 1e-8:
        raise InvalidInput(f"resonant quadratic channel at combined mode {mode_sum}")
    return lam


def synthesize_side_data(grid, model, cfg, channels=None, kind="higgs", amplitude=None):
    """Exact side data decaying toward the model at the deep end.

    ``kind="higgs"`` populates the nilpotent tower: first-order deviation
    f M1 with f a sum of geometric profiles, second-order completion g M2
    chosen so the discrete holomorphicity residual vanishes identically on
    interior rows, and connection coefficient alpha = (dbar f) K.
    ``kind="connection"`` perturbs only alpha along diagonal directions
    commuting with the model, so every commutator coupling vanishes and the
    holomorphicity residual stays identically zero (the curvature residual
    keeps the abelian derivative term).
    """
    if abs(grid.rNeck - cfg.R) > 1e-12 * max(1.0, cfg.R):
        raise InvalidInput("grid neck radius and config R must agree")
    if channels is None:
        channels = (FixtureChannel(mode=0, weight=1.0),)
    amp = FIXTURE_AMPLITUDE_DEFAULT if amplitude is None else float(amplitude)
    shape = (grid.nTau + 1, grid.nTheta, 4, 4)
    profs = _profiles(grid, cfg, channels, amp)

    if kind == "connection":
        dirs = [sp4_diag(1.0, 0.0), sp4_diag(0.0, 1.0)]
        a = np.zeros(shape, dtype=complex)
        for idx, (ch, c, lam1) in enumerate(profs):
            a += c[:, :, None, None] * dirs[idx % 2]
        phi = np.broadcast_to(model.higgsCoeff, shape).copy()
        return HiggsPairField(grid, a, phi)

    if kind != "higgs":
        raise InvalidInput(f"unknown fixture kind {kind!r}")

    K, M1, M2 = tower_generators(model)
    f = np.zeros(shape[:2], dtype=complex)
    nu = np.zeros(shape[:2], dtype=complex)
    g = np.zeros(shape[:2], dtype=complex)
    for i, (ch, c, lam1) in enumerate(profs):
        f += c
        nu += lam1 * c
        for i2, (ch2, c2, lam1b) in enumerate(profs):
            if i2 < i:
                continue
            lam_pair = _lam2(grid, cfg, ch.mode + ch2.mode)
            coeff = (lam1 if i2 == i else lam1 + lam1b) / lam_pair
            g += coeff * c * c2
    phi = (
        np.broadcast_to(model.higgsCoeff, shape).astype(complex)
        + f[:, :, None, None] * M1
        + g[:, :, None, None] * M2
    )
    a = nu[:, :, None, None] * K
    return HiggsPairField(grid, a, phi)


def _theta_matrix(grid):
    return _discrete.theta_diff_matrix(grid.nTheta)


def _adjoint(x):
    return np.conj(np.swapaxes(x, -1, -2))


def hitchin_residual(pair):
    """Evaluate both coupled equations and report interior norms.

    The returned fields cover all rows (boundary rows use one-sided
    stencils and are excluded from the norms).
    """
    grid = pair.grid
    dmat = _theta_matrix(grid)
    a = pair.aField
    phi = pair.phiField
    a_dag = _adjoint(a)
    phi_dag = _adjoint(phi)
    res2 = _discrete.dbar_coeff(phi, grid.dTau, dmat) + bracket(a, phi)
    curl = (
        _discrete.dzeta_coeff(a, grid.dTau, dmat)
        + _discrete.dbar_coeff(a_dag, grid.dTau, dmat)
        + bracket(a, a_dag)
        + bracket(phi, phi_dag)
    )
    res1 = -2.0 * curl
    return ResidualReport(
        res1Field=res1,
        res2Field=res2,
        res1Sup=_discrete.interior_sup(res1),
        res2Sup=_discrete.interior_sup(res2),
        res1L2=_discrete.interior_l2(res1, grid.dTau, grid.dTheta),
        res2L2=_discrete.interior_l2(res2, grid.dTau, grid.dTheta),
    )


def _scalar_dbar(c, grid, dmat):
    dt = np.gradient(c, grid.dTau, axis=0, edge_order=2)
    dth = c @ dmat.T
    return 0.5 * (dt + 1j * dth)


def _project_pointwise(field, directions):
    """Least-squares coefficients of trailing-blocks onto given directions.

    Returns (coeffs, residual_sup): coeffs has one trailing axis per
    direction; residual_sup measures what the span fails to explain.
    """
    basis = np.stack([d.reshape(-1) for d in directions], axis=1)
    pinv = np.linalg.pinv(basis)
    flat = field.reshape(field.shape[:-2] + (16,))
    coeffs = np.einsum("kv,...v->...k", pinv, flat)
    recon = np.einsum("...k,vk->...v", coeffs, basis)
    resid = float(np.max(np.abs(flat - recon)))
    return coeffs, resid


def build_side_approx(exact_side, model, cfg):
    """Interpolate exact side data to the model across the mixing annulus.

    Recognizes the deviation family of the side data (tower coefficients
    for the Higgs part, generator coefficients for the connection part),
    scales first-order coefficients by (1 - chi) and second-order ones by
    (1 - chi)^2, and rebuilds the connection coefficient as the discrete
    dbar of the scaled first-order profile so the holomorphicity equation
    stays exact wherever the cutoff is locally constant.  The output equals
    the input in the outer plateau and the model in the deep plateau.
    """
    grid = exact_side.grid
    if abs(grid.rNeck - cfg.R) > 1e-12 * max(1.0, cfg.R):
        raise InvalidInput("grid neck radius and config R must agree")
    K, M1, M2 = tower_generators(model)
    dirs_a = [K, sp4_diag(1.0, 0.0), sp4_diag(0.0, 1.0)]
    shape = exact_side.phiField.shape
    scale = max(1.0, float(np.max(np.abs(exact_side.phiField))))

    dphi = exact_side.phiField - model.higgsCoeff
    coeff_phi, resid_phi = _project_pointwise(dphi, [M1, M2])
    if resid_phi > FIELD_MEMBERSHIP_TOL * scale:
        raise InvalidInput(
            f"side Higgs data leaves the recognized deviation family (defect {resid_phi:.3e})"
        )
    da = exact_side.aField - model.connectionCoeff
    coeff_a, resid_a = _project_pointwise(da, dirs_a)
    if resid_a > FIELD_MEMBERSHIP_TOL * scale:
        raise InvalidInput(
            f"side connection data leaves the recognized deviation family (defect {resid_a:.3e})"
        )
    f_raw = coeff_phi[..., 0]
    g_raw = coeff_phi[..., 1]
    diag_raw = coeff_a[..., 1:]
    coeff_scale = max(
        float(np.max(np.abs(f_raw))),
        float(np.max(np.abs(g_raw))),
        float(np.max(np.abs(coeff_a))),
        1e-300,
    )
    floor = 1e-9 * coeff_scale
    has_higgs = max(float(np.max(np.abs(f_raw))), float(np.max(np.abs(g_raw)))) > floor
    has_diag = float(np.max(np.abs(diag_raw))) > floor
    if has_higgs and has_diag:
        raise InvalidInput("mixed tower and diagonal side data cannot be interpolated")

    chi = cutoff_chi(grid.side_radii(), cfg.R)
    keep = (1.0 - chi)[:, None]
    dmat = _theta_matrix(grid)

    f_t = keep * f_raw
    g_t = keep**2 * g_raw
    phi_out = (
        np.broadcast_to(model.higgsCoeff, shape).astype(complex)
        + f_t[:, :, None, None] * M1
        + g_t[:, :, None, None] * M2
    )
    nu_t = _scalar_dbar(f_t, grid, dmat)
    # boundary rows carry data, not equations: keep the plain scaled profile
    nu_t[0] = (keep[0] * coeff_a[..., 0][0])
    nu_t[-1] = (keep[-1] * coeff_a[..., 0][-1])
    a_out = nu_t[:, :, None, None] * K
    if has_diag:
        diag_t = keep[..., None] * diag_raw
        a_out = a_out + np.einsum("pqk,kij->pqij", diag_t, np.stack(dirs_a[1:]))
    return HiggsPairField(grid, a_out, phi_out)


def glue_pairs(left, right, plumbing):
    """Glue two side approximations across the neck into one cylinder field.

    The glued coordinate zeta covers [-tMax, tMax] x S^1; the left side is
    pulled back through z = R^2 exp(-zeta) (axial reversal, angular
    reflection, and coefficient negation, since dz/z = -d zeta) and the
    right side through w = R^2 exp(zeta) (identity transport).  Both sides
    must plateau to exactly opposite models at their deep ends; the seam at
    the cylinder middle then lies in a constant region and the glued field
    satisfies the holomorphicity equation wherever the sides did.
    """
    gl, gr = left.grid, right.grid
    if (gl.tMax, gl.nTau, gl.nModes, gl.rNeck) != (gr.tMax, gr.nTau, gr.nModes, gr.rNeck):
        raise InvalidInput("side grids must be identical for gluing")
    if abs(plumbing.R1 - gl.rNeck) > 1e-9 * gl.rNeck:
        raise InvalidInput("plumbing annulus must sit at the grid neck radius")
    n = gl.nTau
    half = n // 2
    ntheta = gl.nTheta
    scale = max(1.0, float(np.max(np.abs(left.phiField))), float(np.max(np.abs(right.phiField))))

    # Deep-end models must be constant and exactly opposite.
    probe_rows = range(4)
    worst = 0.0
    for p in probe_rows:
        worst = max(
            worst,
            float(np.max(np.abs(left.phiField[p] - left.phiField[0, 0]))),
            float(np.max(np.abs(right.phiField[p] - right.phiField[0, 0]))),
            float(np.max(np.abs(left.aField[p]))),
            float(np.max(np.abs(right.aField[p]))),
        )
    if worst > 1e-10 * scale:
        raise GluingError(
            f"sides do not plateau to constant models at the deep end (defect {worst:.3e})",
            mismatch=worst,
        )
    mismatch = float(np.max(np.abs(left.phiField[0, 0] + right.phiField[0, 0])))
    if mismatch > 1e-10 * scale:
        raise GluingError(
            f"deep-end models are not opposite (mismatch {mismatch:.3e})", mismatch=mismatch
        )

    flip = (ntheta - np.arange(ntheta)) % ntheta
    a = np.empty_like(left.aField)
    phi = np.empty_like(left.phiField)
    for k in range(half + 1):
        m = half - k
        a[k] = -left.aField[m][flip]
        phi[k] = -left.phiField[m][flip]
    for k in range(half, n + 1):
        m = k - half
        a[k] = right.aField[m]
        phi[k] = right.phiField[m]
    return HiggsPairField(gl, a, phi)


def _gauge_exponentials(gauge):
    """Pointwise (exp(gamma), exp(-gamma)) via the spectral decomposition."""
    gamma = gauge.gamma
    if gauge.kind == "hermitian":
        w, v = np.linalg.eigh(gamma)
        e = np.exp(w)
    else:
        w, v = np.linalg.eigh(1j * gamma)
        e = np.exp(-1j * w)
    vh = np.conj(np.swapaxes(v, -1, -2))
    g = (v * e[..., None, :]) @ vh
    ginv = (v * (1.0 / e)[..., None, :]) @ vh
    return g, ginv


def apply_complex_gauge(gauge, pair):
    """Act on a pair by the exponential of a gauge direction.

    alpha -> g^-1 alpha g + g^-1 dbar(g), phi -> g^-1 phi g, and the frame
    metric picks up g^dagger (.) g.  Unitary (antihermitian) directions
    leave the metric unchanged.
    """
    if (gauge.grid.tMax, gauge.grid.nTau, gauge.grid.nModes) != (
        pair.grid.tMax,
        pair.grid.nTau,
        pair.grid.nModes,
    ):
        raise InvalidInput("gauge and pair must live on the same grid")
    grid = pair.grid
    dmat = _theta_matrix(grid)
    g, ginv = _gauge_exponentials(gauge)
    # g - I vanishes on the Dirichlet rows and extends by zero, so its
    # derivative uses the same ghost-centered stencil as the linearization.
    # The Maurer-Cartan term g^-1 dbar(g) is algebra-valued in the continuum
    # but picks up off-algebra stencil truncation; project it back exactly.
    eye = np.broadcast_to(np.eye(4, dtype=complex), g.shape)
    dbar_g = _discrete.dbar_coeff_dirichlet(g - eye, grid.dTau, dmat)
    a_new = ginv @ pair.aField @ g + sp4_project(ginv @ dbar_g)
    phi_new = ginv @ pair.phiField @ g
    if gauge.kind == "antihermitian":
        metric_new = pair.metric
    else:
        base = pair.metric if pair.metric is not None else np.broadcast_to(
            np.eye(4, dtype=complex), pair.phiField.shape
        )
        gh = np.conj(np.swapaxes(g, -1, -2))
        metric_new = gh @ base @ g
    return HiggsPairField(grid, a_new, phi_new, metric=metric_new)
