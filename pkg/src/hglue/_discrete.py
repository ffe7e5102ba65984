"""Discrete calculus on cylinder grids.

Axial derivatives use centered second-order differences on interior rows
and one-sided second-order stencils on the two boundary rows (the latter
only affect reported boundary values, never the interior equations).
Angular derivatives use the exact spectral differentiation matrix on an odd
equispaced grid.  Complex derivative coefficients follow the convention
dbar = (d_tau + i d_theta) / 2 and dzeta = (d_tau - i d_theta) / 2.

Fields are arrays of shape (nTau + 1, nTheta, 4, 4) (or 2x2 for scalar
experiments); derivative helpers act on the leading two axes.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError

__all__ = [
    "theta_diff_matrix",
    "apply_d_tau",
    "apply_d_tau_dirichlet",
    "apply_d_theta",
    "dbar_coeff",
    "dzeta_coeff",
    "dbar_coeff_dirichlet",
    "dzeta_coeff_dirichlet",
    "interior_sup",
    "interior_l2",
    "field_sup",
]


def theta_diff_matrix(n_theta):
    """Spectral differentiation matrix on an odd equispaced circle grid.

    Real antisymmetric; exact on trigonometric polynomials of degree up to
    (n_theta - 1) / 2.
    """
    if n_theta < 3 or n_theta % 2 == 0:
        raise DimensionError(f"angular grid size must be odd and >= 3, got {n_theta}")
    k = np.arange(n_theta)
    diff = k[:, None] - k[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.where(
            diff == 0,
            0.0,
            0.5 * (-1.0) ** diff / np.sin(np.pi * diff / n_theta),
        )
    return d


def apply_d_tau(field, d_tau):
    """Axial derivative along axis 0: centered interior, one-sided ends."""
    field = np.asarray(field)
    if field.shape[0] < 3:
        raise DimensionError("need at least 3 axial rows")
    return np.gradient(field, d_tau, axis=0, edge_order=2)


def apply_d_tau_dirichlet(field, d_tau):
    """Axial derivative for fields that extend by zero beyond the ends.

    Centered differences everywhere, with the off-grid ghost rows taken to
    vanish.  This is the convention used when differentiating gauge
    parameters (and gauge transforms minus the identity), which are pinned
    to zero on the boundary rows; using it keeps discrete differentiation
    of such fields an exact linear map with a fixed matrix representation.
    """
    field = np.asarray(field)
    if field.shape[0] < 3:
        raise DimensionError("need at least 3 axial rows")
    out = np.empty_like(field, dtype=np.result_type(field, 1.0))
    out[1:-1] = (field[2:] - field[:-2]) / (2.0 * d_tau)
    out[0] = field[1] / (2.0 * d_tau)
    out[-1] = -field[-2] / (2.0 * d_tau)
    return out


def apply_d_theta(field, n_theta=None, matrix=None):
    """Angular derivative along axis 1 via the spectral matrix."""
    field = np.asarray(field)
    d = matrix if matrix is not None else theta_diff_matrix(field.shape[1] if n_theta is None else n_theta)
    if d.shape[0] != field.shape[1]:
        raise DimensionError(
            f"angular matrix size {d.shape[0]} does not match grid {field.shape[1]}"
        )
    return np.einsum("qs,ps...->pq...", d, field)


def dbar_coeff(field, d_tau, theta_matrix=None):
    """Coefficient of the antiholomorphic derivative: (d_tau + i d_theta)/2."""
    return 0.5 * (apply_d_tau(field, d_tau) + 1j * apply_d_theta(field, matrix=theta_matrix))


def dzeta_coeff(field, d_tau, theta_matrix=None):
    """Coefficient of the holomorphic derivative: (d_tau - i d_theta)/2."""
    return 0.5 * (apply_d_tau(field, d_tau) - 1j * apply_d_theta(field, matrix=theta_matrix))


def dbar_coeff_dirichlet(field, d_tau, theta_matrix=None):
    """Antiholomorphic derivative for fields extending by zero axially."""
    return 0.5 * (
        apply_d_tau_dirichlet(field, d_tau) + 1j * apply_d_theta(field, matrix=theta_matrix)
    )


def dzeta_coeff_dirichlet(field, d_tau, theta_matrix=None):
    """Holomorphic derivative for fields extending by zero axially."""
    return 0.5 * (
        apply_d_tau_dirichlet(field, d_tau) - 1j * apply_d_theta(field, matrix=theta_matrix)
    )


def _pointwise_frobenius(field):
    field = np.asarray(field)
    if field.ndim < 4:
        raise DimensionError("expected a field of shape (rows, angles, n, n)")
    return np.sqrt(np.sum(np.abs(field) ** 2, axis=(-2, -1)))


def interior_sup(field):
    """Max pointwise Frobenius norm over interior rows (boundary excluded)."""
    return float(np.max(_pointwise_frobenius(field)[1:-1]))


def interior_l2(field, d_tau, d_theta):
    """Discrete L2 norm over interior rows with uniform cell weights."""
    sq = _pointwise_frobenius(field)[1:-1] ** 2
    return float(np.sqrt(np.sum(sq) * d_tau * d_theta))


def field_sup(field):
    """Max pointwise Frobenius norm over all rows."""
    return float(np.max(_pointwise_frobenius(field)))
