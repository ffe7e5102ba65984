"""Closed-form reference solutions on the half-infinite tube.

A one-parameter family of scalar metrics h_{1,s} solves the reduced
self-duality equation (log h)'' = (s^4/16) h^2 - h^{-2} on y >= 1, built
from the auxiliary exponential profile B_s.  The associated equivariant
harmonic map into the hyperbolic plane has an explicit first coordinate.
On the matrix side, a constant diagonal pair (zero connection coefficient,
diagonal Higgs coefficient) gives the exact local solution near a puncture;
the irreducible and product embeddings of the 2x2 diagonal model produce
the two 4x4 models that the gluing construction matches against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import phi_irr_star, psi_star
from .errors import DomainError, InvalidInput

__all__ = [
    "ModelFamilyParam",
    "b_s",
    "h_1s",
    "harmonic_map_model",
    "scalar_reduction_residual",
    "sl2_model_pair",
    "ModelHiggsPair",
    "sp4_model_left",
    "sp4_model_right",
    "models_opposite",
]


@dataclass(frozen=True)
class ModelFamilyParam:
    """Parameter of the scalar model family; requires 0 < sNeck < 1."""

    sNeck: float

    def __post_init__(self):
        if not (0.0 < self.sNeck < 1.0):
            raise InvalidInput(f"sNeck must lie in (0, 1), got {self.sNeck}")


def _check_y(y):
    y = np.asarray(y, dtype=float)
    if np.any(y < 1.0 - 1e-12):
        raise DomainError("model profiles are defined for y >= 1")
    return y


def b_s(s, y):
    """Auxiliary profile B_s(y) = ((1-s)/(1+s)) exp(2 s (1 - y)) on y >= 1."""
    ModelFamilyParam(s)
    y = _check_y(y)
    return ((1.0 - s) / (1.0 + s)) * np.exp(2.0 * s * (1.0 - y))


def h_1s(s, y):
    """Scalar model metric h_{1,s}(y) = (2/s)(1 - sqrt B)/(1 + sqrt B)."""
    root = np.sqrt(b_s(s, y))
    return (2.0 / s) * (1.0 - root) / (1.0 + root)


def harmonic_map_model(s, x, y):
    """Coordinates (u, v) of the model equivariant harmonic map.

    u(y) = (1/s) arcsin((1 - B)/(1 + B)) increases from its boundary value
    toward the asymptote pi/(2s); the second coordinate is v = x.
    """
    bb = b_s(s, y)
    u = (1.0 / s) * np.arcsin((1.0 - bb) / (1.0 + bb))
    v = np.asarray(x, dtype=float) + 0.0 * u
    return u, v


def scalar_reduction_residual(h, p_coeff, q_coeff, y_grid):
    """Sup of |(log h)'' - |q|^2 h^2 + |p|^2 h^{-2}| over interior nodes.

    ``h`` may be an array of samples on the uniform grid ``y_grid`` or a
    callable evaluated on it.  The second derivative is the centered second
    difference, so smooth exact solutions show O(dy^2) residuals.
    """
    y = np.asarray(y_grid, dtype=float)
    if y.ndim != 1 or y.size < 3:
        raise InvalidInput("y_grid must be a 1d grid with at least 3 nodes")
    dy = np.diff(y)
    if np.max(np.abs(dy - dy[0])) > 1e-9 * abs(dy[0]):
        raise InvalidInput("y_grid must be uniform")
    hv = np.asarray(h(y) if callable(h) else h, dtype=float)
    if hv.shape != y.shape:
        raise InvalidInput("h samples must match the grid")
    if np.any(hv <= 0.0):
        raise DomainError("metric samples must be positive")
    lh = np.log(hv)
    d2 = (lh[2:] - 2.0 * lh[1:-1] + lh[:-2]) / dy[0] ** 2
    core = hv[1:-1]
    res = d2 - abs(q_coeff) ** 2 * core**2 + abs(p_coeff) ** 2 * core**-2
    return float(np.max(np.abs(res)))


@dataclass(frozen=True)
class ModelHiggsPair:
    """Constant-coefficient pair: connection and Higgs 4x4 coefficients."""

    connectionCoeff: np.ndarray
    higgsCoeff: np.ndarray
    cParam: float


def sl2_model_pair(c_param):
    """Constant 2x2 diagonal model: zero connection, Higgs diag(C, -C)."""
    if c_param == 0:
        raise InvalidInput("model parameter C must be nonzero")
    phi = np.diag([c_param, -c_param]).astype(complex)
    return np.zeros((2, 2), dtype=complex), phi


def sp4_model_left(c_param):
    """Irreducible 4x4 model with Higgs coefficient diag(3C, C, -3C, -C)."""
    _, phi2 = sl2_model_pair(c_param)
    phi = phi_irr_star(phi2)
    return ModelHiggsPair(
        connectionCoeff=np.zeros((4, 4), dtype=complex),
        higgsCoeff=phi,
        cParam=float(c_param),
    )


def sp4_model_right(c_param):
    """Product-type 4x4 model opposite to :func:`sp4_model_left`."""
    a2 = np.diag([-3.0 * c_param, 3.0 * c_param]).astype(complex)
    b2 = np.diag([-1.0 * c_param, 1.0 * c_param]).astype(complex)
    phi = psi_star(a2, b2)
    return ModelHiggsPair(
        connectionCoeff=np.zeros((4, 4), dtype=complex),
        higgsCoeff=phi,
        cParam=float(c_param),
    )


def models_opposite(left, right, tol=1e-12):
    """True when the two constant models are exact negatives of each other."""
    da = np.max(np.abs(left.connectionCoeff + right.connectionCoeff))
    dp = np.max(np.abs(left.higgsCoeff + right.higgsCoeff))
    return bool(max(da, dp) <= tol)
