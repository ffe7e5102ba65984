"""Linearization of the curvature equation along the complex gauge orbit.

The second variation of the curvature residual at a pair (alpha, phi), in
hermitian gauge directions gamma, is assembled as a sparse symmetric
positive semidefinite matrix in real coordinates: each grid point carries
the ten coordinates of a hermitian symplectic-compatible matrix in an
orthonormal basis, the axial derivative uses the centered stencil with
ghost-zero Dirichlet rows, and the angular derivative is spectral.  With

    u(gamma) = dbar(gamma) + [alpha, gamma]
    v(gamma) = dzeta(gamma) - [alpha^dagger, gamma]

the assembled matrix satisfies the exact discrete energy identity

    <L gamma, gamma> = 2||u||^2 + 2||v||^2 + 4||[phi, gamma]||^2,

which is the squared covariant derivative (both form components carry a
factor 2 from the cylinder metric) plus twice the squared Higgs bracket.
Interior rows are unknowns; boundary rows are held at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import _discrete
from .algebra import bracket, hermitian_basis
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidInput,
    SingularOperatorError,
)

__all__ = [
    "channel_weights",
    "mode_block",
    "kernel_dimensions",
    "hermitian_coords",
    "coords_to_field",
    "LinearizedOperator",
    "linearize",
    "linear_term",
    "smallest_eigenvalue",
    "inverse_apply",
    "random_interior_gauge",
]

_HBASIS = hermitian_basis()
_HSTACK = np.stack(_HBASIS)


def channel_weights(c_param):
    """Bracket weights of the ten basis channels at the diagonal model.

    The model Higgs coefficient diag(3C, C, -3C, -C) acts on the basis by
    [phi0, H_k] = d_k * (partner of H_k); the two diagonal channels have
    weight zero.
    """
    c = float(c_param)
    return np.array([0.0, 0.0, 2 * c, -2 * c, 6 * c, 4 * c, 2 * c, -6 * c, -4 * c, -2 * c])


def mode_block(j, c_param):
    """First-order model system per channel at angular frequency j.

    Returns an array of shape (10, 2, 2); each channel contributes the
    block [[-j/2, d], [d, j/2]] whose determinant -(j^2/4 + d^2) vanishes
    only for j = 0 on the weight-zero diagonal channels.
    """
    ds = channel_weights(c_param)
    blocks = np.zeros((10, 2, 2))
    blocks[:, 0, 0] = -0.5 * j
    blocks[:, 1, 1] = 0.5 * j
    blocks[:, 0, 1] = ds
    blocks[:, 1, 0] = ds
    return blocks


def kernel_dimensions(c_param, j_min=-16, j_max=16, rel_tol=1e-10):
    """Complex kernel dimension of the model mode system per frequency.

    Singular values below rel_tol times the largest singular value over the
    whole sweep count as zero.  At j = 0 the two weightless diagonal
    channels contribute two complex dimensions each.
    """
    if j_min > j_max:
        raise InvalidInput("empty frequency range")
    js = range(j_min, j_max + 1)
    all_blocks = {j: mode_block(j, c_param) for j in js}
    smax = max(
        (np.linalg.svd(b, compute_uv=False).max() for b in all_blocks.values()),
        default=0.0,
    )
    if smax == 0.0:
        smax = 1.0
    out = {}
    for j, blocks in all_blocks.items():
        dim = 0
        for b in blocks:
            svals = np.linalg.svd(b, compute_uv=False)
            dim += int(np.sum(svals <= rel_tol * smax))
        out[j] = dim
    return out


def hermitian_coords(field, tol=1e-8):
    """Real coordinates of a pointwise hermitian field in the basis.

    Raises InvalidInput when the field is not hermitian (relative to its
    own scale) since the coordinates would silently drop the rest.
    """
    field = np.asarray(field, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(field))))
    defect = np.max(np.abs(field - np.conj(np.swapaxes(field, -1, -2))))
    if defect > tol * scale:
        raise InvalidInput(f"field is not pointwise hermitian (defect {defect:.3e})")
    return np.einsum("...ij,kji->...k", field, _HSTACK).real


def coords_to_field(coords):
    """Inverse of :func:`hermitian_coords`."""
    return np.einsum("...k,kij->...ij", np.asarray(coords, dtype=float), _HSTACK)


def _coords20(field):
    """20 real coordinates of an arbitrary symplectic-compatible field."""
    tr = np.einsum("...ij,kji->...k", np.asarray(field, dtype=complex), _HSTACK)
    return np.concatenate([tr.real, tr.imag], axis=-1)


def _bracket_blocks(w_field):
    """Per-point 20x10 real blocks of gamma -> [W, gamma] on hermitian coords."""
    adw = np.einsum("pqab,kbc->pqkac", w_field, _HSTACK) - np.einsum(
        "kab,pqbc->pqkac", _HSTACK, w_field
    )
    tr = np.einsum("pqkij,lji->pqlk", adw, _HSTACK)
    return np.concatenate([tr.real, tr.imag], axis=2)


def _block_diag_bsr(blocks):
    """Block-diagonal sparse matrix from (nblocks, r, c) data."""
    nb, r, c = blocks.shape
    return sp.bsr_matrix(
        (blocks, np.arange(nb), np.arange(nb + 1)), shape=(nb * r, nb * c)
    ).tocsr()


def _ghost_centered_matrix(n_rows, n_interior, d_tau):
    """Centered d_tau on all rows from interior values, zeros beyond ends."""
    rows, cols, vals = [], [], []
    w = 0.5 / d_tau
    for p in range(n_rows):
        if p <= n_interior - 1:
            rows.append(p)
            cols.append(p)
            vals.append(w)
        if 0 <= p - 2 <= n_interior - 1:
            rows.append(p)
            cols.append(p - 2)
            vals.append(-w)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n_rows, n_interior))


def _pad_matrix(n_rows, n_interior):
    rows = np.arange(1, n_interior + 1)
    cols = np.arange(n_interior)
    vals = np.ones(n_interior)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n_rows, n_interior))


@dataclass
class LinearizedOperator:
    """Assembled linearization at a pair, acting on interior gauge coords."""

    grid: object
    matrix: sp.csr_matrix
    stageU: sp.csr_matrix
    stageV: sp.csr_matrix
    stageK: sp.csr_matrix
    nInterior: int

    _lambda_min: float = None
    _lu = None

    @property
    def size(self):
        return self.matrix.shape[0]

    def field_to_vector(self, field):
        """Interior coordinates of a hermitian field, flattened."""
        coords = hermitian_coords(field)
        return coords[1:-1].reshape(-1)

    def vector_to_field(self, vec):
        """Hermitian field from interior coordinates, zero boundary rows."""
        grid = self.grid
        coords = np.zeros((grid.nTau + 1, grid.nTheta, 10))
        coords[1:-1] = np.asarray(vec, dtype=float).reshape(grid.nTau - 1, grid.nTheta, 10)
        return coords_to_field(coords)

    def stage_values(self, vec):
        """(u, v, [phi, gamma]) 20-coordinate stage outputs for a vector."""
        return self.stageU @ vec, self.stageV @ vec, self.stageK @ vec


def linearize(pair):
    """Assemble the linearized operator at a pair as a sparse matrix."""
    grid = pair.grid
    n_rows = grid.nTau + 1
    n_int = grid.nTau - 1
    ntheta = grid.nTheta
    d1 = _ghost_centered_matrix(n_rows, n_int, grid.dTau)
    pad = _pad_matrix(n_rows, n_int)
    dtheta = sp.csr_matrix(_discrete.theta_diff_matrix(ntheta))
    i10 = sp.identity(10, format="csr")
    i_t10 = sp.identity(ntheta * 10, format="csr")

    dt_full = sp.kron(d1, i_t10, format="csr")
    pad_full = sp.kron(pad, i_t10, format="csr")
    th_full = sp.kron(sp.identity(n_rows, format="csr"), sp.kron(dtheta, i10), format="csr")

    lift_top = sp.csr_matrix(
        (np.ones(10), (np.arange(10), np.arange(10))), shape=(20, 10)
    )
    lift_bot = sp.csr_matrix(
        (np.ones(10), (np.arange(10, 20), np.arange(10))), shape=(20, 10)
    )
    npts = n_rows * ntheta
    lh = sp.kron(sp.identity(npts, format="csr"), lift_top, format="csr")
    li = sp.kron(sp.identity(npts, format="csr"), lift_bot, format="csr")

    a_dag = np.conj(np.swapaxes(pair.aField, -1, -2))
    bd_a = _block_diag_bsr(_bracket_blocks(pair.aField).reshape(npts, 20, 10))
    bd_adag = _block_diag_bsr(_bracket_blocks(a_dag).reshape(npts, 20, 10))
    bd_phi = _block_diag_bsr(_bracket_blocks(pair.phiField).reshape(npts, 20, 10))

    theta_stage = th_full @ pad_full
    stage_u = 0.5 * (lh @ dt_full) + 0.5 * (li @ theta_stage) + bd_a @ pad_full
    stage_v = 0.5 * (lh @ dt_full) - 0.5 * (li @ theta_stage) - bd_adag @ pad_full
    stage_k = bd_phi @ pad_full

    matrix = (
        2.0 * (stage_u.T @ stage_u)
        + 2.0 * (stage_v.T @ stage_v)
        + 4.0 * (stage_k.T @ stage_k)
    ).tocsr()
    return LinearizedOperator(
        grid=grid,
        matrix=matrix,
        stageU=stage_u.tocsr(),
        stageV=stage_v.tocsr(),
        stageK=stage_k.tocsr(),
        nInterior=n_int,
    )


def linear_term(gauge, pair):
    """Pointwise display form of the linearized curvature residual.

    For a hermitian direction gamma returns the hermitian field

        -2 ( dzeta(u) - [a^dag, u] + dbar(v) + [a, v]
             + [[phi, gamma], phi^dag] + [phi, [phi, gamma]^dag] )

    evaluated with the same discrete stencils as the residual; it matches
    the derivative of the curvature residual along the orbit.
    """
    grid = pair.grid
    dmat = _discrete.theta_diff_matrix(grid.nTheta)
    gamma = gauge.gamma
    a = pair.aField
    a_dag = np.conj(np.swapaxes(a, -1, -2))
    phi = pair.phiField
    phi_dag = np.conj(np.swapaxes(phi, -1, -2))
    u = _discrete.dbar_coeff_dirichlet(gamma, grid.dTau, dmat) + bracket(a, gamma)
    v = _discrete.dzeta_coeff_dirichlet(gamma, grid.dTau, dmat) - bracket(a_dag, gamma)
    pg = bracket(phi, gamma)
    pg_dag = np.conj(np.swapaxes(pg, -1, -2))
    lc = (
        _discrete.dzeta_coeff(u, grid.dTau, dmat)
        - bracket(a_dag, u)
        + _discrete.dbar_coeff(v, grid.dTau, dmat)
        + bracket(a, v)
        + bracket(pg, phi_dag)
        + bracket(phi, pg_dag)
    )
    return -2.0 * lc


def smallest_eigenvalue(op, maxiter=500, tol=1e-10):
    """Smallest eigenvalue of the assembled operator.

    Small problems use a dense solve; larger ones use shift-invert Lanczos
    at zero.  Raises ConvergenceError when the iteration cap is exhausted.
    """
    m = op.matrix
    n = m.shape[0]
    if n <= 600:
        return float(np.linalg.eigvalsh(m.toarray())[0])
    try:
        vals = spla.eigsh(
            m, k=1, sigma=0.0, which="LM", maxiter=maxiter, tol=tol,
            return_eigenvectors=False,
        )
    except spla.ArpackNoConvergence as exc:
        raise ConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc
    return float(vals[0])


def _ensure_factorization(op):
    if op._lu is None:
        op._lu = spla.splu(op.matrix.tocsc())
    return op._lu


def inverse_apply(op, rhs_field, rel_tol=1e-10, lambda_floor=1e-9):
    """Solve L gamma = rhs for an interior-supported hermitian direction.

    The right-hand side is a hermitian field on the full grid; its interior
    coordinates drive a direct sparse solve with iterative refinement.  The
    operator must be safely positive (smallest eigenvalue above the floor),
    and the solution is checked against the spectral bound
    ||gamma|| <= ||rhs|| / lambda_min.
    """
    from .approximate import GaugeField

    lam = op._lambda_min
    if lam is None:
        lam = smallest_eigenvalue(op)
        op._lambda_min = lam
    if lam <= lambda_floor:
        raise SingularOperatorError(
            f"operator smallest eigenvalue {lam:.3e} at or below floor {lambda_floor:.3e}"
        )
    b = op.field_to_vector(rhs_field)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return GaugeField(op.grid, op.vector_to_field(np.zeros(op.size)), dirichletBoundary=True)
    lu = _ensure_factorization(op)
    x = lu.solve(b)
    for _ in range(5):
        r = b - op.matrix @ x
        if np.linalg.norm(r) <= rel_tol * bnorm:
            break
        x = x + lu.solve(r)
    else:
        raise SingularOperatorError("iterative refinement failed to reach tolerance")
    xnorm = float(np.linalg.norm(x))
    if xnorm > (1.0 + 1e-6) * bnorm / lam:
        raise SingularOperatorError(
            "solution violates the spectral bound; factorization is unreliable"
        )
    return GaugeField(op.grid, op.vector_to_field(x), kind="hermitian", dirichletBoundary=True)


def random_interior_gauge(grid, rng, scale=1.0, max_mode=1):
    """Smooth random hermitian direction vanishing near the boundary rows.

    Coordinates are low-frequency trigonometric profiles in both directions
    with a squared-sine axial envelope, so the direction and its stencil
    footprint vanish at the Dirichlet rows.
    """
    tau = grid.tau_nodes()
    theta = grid.theta_nodes()
    env = np.sin(math.pi * (tau + grid.tMax) / (2.0 * grid.tMax)) ** 2
    coords = np.zeros((grid.nTau + 1, grid.nTheta, 10))
    max_mode = min(max_mode, grid.nModes)
    for k in range(10):
        prof = rng.standard_normal() * np.ones_like(tau)
        prof += rng.standard_normal() * np.sin(math.pi * (tau + grid.tMax) / (2.0 * grid.tMax))
        ang = rng.standard_normal() * np.ones_like(theta)
        for j in range(1, max_mode + 1):
            ang += rng.standard_normal() * np.cos(j * theta) + rng.standard_normal() * np.sin(
                j * theta
            )
        coords[:, :, k] = (env * prof)[:, None] * ang[None, :]
    coords *= scale / max(1.0, float(np.max(np.abs(coords))))
    from .approximate import GaugeField

    return GaugeField(grid, coords_to_field(coords), kind="hermitian", dirichletBoundary=True)
