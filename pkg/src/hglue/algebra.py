"""Linear algebra of the rank-two symplectic Lie algebra.

Everything here is exact 4x4 (or 2x2) complex matrix algebra: membership in
sp(4, C), the splitting of that algebra under the block unitary subalgebra,
and the two standard embeddings of 2x2 data into 4x4 matrices -- an
irreducible (symmetric-cube) one and a product/diagonal one.  No grids or
discretizations appear at this level.

Block conventions.  With the symplectic form J = [[0, I], [-I, 0]], an
element of sp(4, C) has block shape

    x = [[P, Q], [R, -P^T]],   Q = Q^T,  R = R^T.

The subalgebra fixed by the block-unitary involution consists of the x with
P antisymmetric and R = -Q ("h part"); its complement has P symmetric and
R = Q ("m part").  The h part is isomorphic, as an associative matrix
algebra, to 2x2 complex matrices via [[A, B], [-B, A]] <-> A + iB.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import EXACT_TOL, SYMPLECTIC_J
from .errors import DimensionError, InvalidInput

__all__ = [
    "SP4_TOL",
    "bracket",
    "compact_tau",
    "in_sp4",
    "require_sp4",
    "sp4_project",
    "CartanSplit",
    "cartan_split",
    "in_m_complex",
    "in_h_complex",
    "embed_h_from_gl2",
    "project_gl2_from_h",
    "phi_irr_group",
    "phi_irr_star",
    "psi_star",
    "sp4_diag",
    "hermitian_basis",
    "random_traceless",
    "random_unimodular",
    "frobenius_norm",
]

SP4_TOL = EXACT_TOL


def _as_square(x, n, name="argument"):
    a = np.asarray(x, dtype=complex)
    if a.shape != (n, n):
        raise DimensionError(f"{name} must be {n}x{n}, got shape {a.shape}")
    return a


def bracket(a, b):
    """Matrix commutator [a, b] = ab - ba for equal-size square arrays."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"first argument is not square: shape {a.shape}")
    if a.shape[-2:] != b.shape[-2:]:
        raise DimensionError(f"incompatible shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def compact_tau(x):
    """Compact real structure: x -> -x^dagger (antilinear involution)."""
    x = np.asarray(x, dtype=complex)
    return -np.conj(np.swapaxes(x, -1, -2))


def in_sp4(x, tol=SP4_TOL):
    """True when x^T J + J x vanishes entrywise to the given tolerance."""
    x = np.asarray(x, dtype=complex)
    if x.shape[-2:] != (4, 4):
        raise DimensionError(f"expected trailing 4x4 blocks, got shape {x.shape}")
    xt = np.swapaxes(x, -1, -2)
    defect = xt @ SYMPLECTIC_J + SYMPLECTIC_J @ x
    return bool(np.max(np.abs(defect)) <= tol)


def require_sp4(x, tol=SP4_TOL, name="matrix"):
    if not in_sp4(x, tol=tol):
        raise InvalidInput(f"{name} is not symplectic-compatible to tolerance {tol}")
    return np.asarray(x, dtype=complex)


def sp4_project(x):
    """Orthogonal projection onto sp(4, C): x -> (x + J x^T J) / 2.

    Elements of the algebra satisfy x = J x^T J exactly, so they are fixed;
    the complement is removed.  Commutes with the conjugate transpose and
    acts blockwise on batched input.  Used to strip discretization junk
    from quantities that are algebra-valued in the continuum.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape[-2:] != (4, 4):
        raise DimensionError(f"expected trailing 4x4 blocks, got shape {x.shape}")
    xt = np.swapaxes(x, -1, -2)
    return 0.5 * (x + SYMPLECTIC_J @ xt @ SYMPLECTIC_J)


@dataclass(frozen=True)
class CartanSplit:
    """Decomposition x = h_part + m_part under the block-unitary involution."""

    h_part: np.ndarray
    m_part: np.ndarray


def cartan_split(x):
    """Split an sp(4, C) element into its h and m parts.

    The h part has antisymmetric upper-left block and lower-left equal to
    minus the upper-right; the m part has symmetric upper-left block and
    equal off-diagonal blocks.  The two parts sum back to x exactly.
    """
    x = _as_square(x, 4)
    require_sp4(x, name="cartan_split input")
    p = x[:2, :2]
    q = x[:2, 2:]
    r = x[2:, :2]
    p_h = 0.5 * (p - p.T)
    p_m = 0.5 * (p + p.T)
    q_h = 0.5 * (q - r)
    q_m = 0.5 * (q + r)
    h_part = np.block([[p_h, q_h], [-q_h, -p_h.T]])
    m_part = np.block([[p_m, q_m], [q_m, -p_m.T]])
    return CartanSplit(h_part=h_part, m_part=m_part)


def in_h_complex(x, tol=SP4_TOL):
    """True when x lies in the block-unitary subalgebra of sp(4, C)."""
    x = _as_square(x, 4)
    if not in_sp4(x, tol=tol):
        return False
    p = x[:2, :2]
    q = x[:2, 2:]
    r = x[2:, :2]
    return bool(max(np.max(np.abs(p + p.T)), np.max(np.abs(q + r))) <= tol)


def in_m_complex(x, tol=SP4_TOL):
    """True when x lies in the complement of the block-unitary subalgebra.

    Elements have the block pattern [[S, Q], [Q, -S]] with S, Q symmetric.
    """
    x = _as_square(x, 4)
    if not in_sp4(x, tol=tol):
        return False
    p = x[:2, :2]
    q = x[:2, 2:]
    r = x[2:, :2]
    return bool(max(np.max(np.abs(p - p.T)), np.max(np.abs(q - r))) <= tol)


def embed_h_from_gl2(k):
    """Embed a 2x2 complex matrix into the block-unitary subalgebra.

    Splitting k = A + iB into antisymmetric and symmetric parts, the map
    k -> [[A, B], [-B, A]] is a complex-linear Lie-algebra isomorphism onto
    the h part of sp(4, C).  Square-zero inputs have square-zero images:
    the symmetric and antisymmetric parts of k^2 vanish separately, and
    those are exactly the two blocks of the image squared.
    """
    k = _as_square(k, 2, name="gl2 element")
    a = 0.5 * (k - k.T)
    b = (k + k.T) / 2j
    return np.block([[a, b], [-b, a]])


def project_gl2_from_h(x, tol=SP4_TOL):
    """Inverse of :func:`embed_h_from_gl2` on the h part."""
    x = _as_square(x, 4)
    if not in_h_complex(x, tol=tol):
        raise InvalidInput("matrix is not in the block-unitary subalgebra")
    a = x[:2, :2]
    b = x[:2, 2:]
    return a + 1j * b


def phi_irr_group(g, tol=1e-9):
    """Irreducible 4x4 image of a unimodular 2x2 matrix.

    Rows follow the ordered basis in which diag(a, 1/a) maps to
    diag(a^3, a, a^-3, a^-1).  Raises InvalidInput unless det g = 1.
    """
    g = _as_square(g, 2, name="group element")
    a, b = g[0, 0], g[0, 1]
    c, d = g[1, 0], g[1, 1]
    det = a * d - b * c
    if abs(det - 1.0) > tol:
        raise InvalidInput(f"determinant must be 1, got {det}")
    s3 = np.sqrt(3.0)
    return np.array(
        [
            [a**3, -s3 * a**2 * b, -(b**3), -s3 * a * b**2],
            [-s3 * a**2 * c, 2 * a * b * c + a**2 * d, s3 * b**2 * d, 2 * a * b * d + b**2 * c],
            [-(c**3), s3 * c**2 * d, d**3, s3 * c * d**2],
            [-s3 * a * c**2, 2 * a * c * d + b * c**2, s3 * b * d**2, 2 * b * c * d + a * d**2],
        ],
        dtype=complex,
    )


def phi_irr_star(m, tol=1e-9):
    """Derivative at the identity of :func:`phi_irr_group` on traceless input."""
    m = _as_square(m, 2, name="sl2 element")
    if abs(m[0, 0] + m[1, 1]) > tol:
        raise InvalidInput("input must be traceless")
    a, b, c = m[0, 0], m[0, 1], m[1, 0]
    s3 = np.sqrt(3.0)
    return np.array(
        [
            [3 * a, -s3 * b, 0, 0],
            [-s3 * c, a, 0, 2 * b],
            [0, 0, -3 * a, s3 * c],
            [0, 2 * c, s3 * b, -a],
        ],
        dtype=complex,
    )


def psi_star(m1, m2, tol=1e-9):
    """Product-type embedding of a pair of traceless 2x2 matrices.

    Interleaves the two inputs on complementary index pairs (1,3) and (2,4);
    it is an isometric Lie-algebra map for the Frobenius norm, and sends
    (diag(1,-1), diag(1,-1)) to diag(1, 1, -1, -1).
    """
    m1 = _as_square(m1, 2, name="first sl2 element")
    m2 = _as_square(m2, 2, name="second sl2 element")
    for m, name in ((m1, "first"), (m2, "second")):
        if abs(m[0, 0] + m[1, 1]) > tol:
            raise InvalidInput(f"{name} input must be traceless")
    a, b, c = m1[0, 0], m1[0, 1], m1[1, 0]
    e, f, g = m2[0, 0], m2[0, 1], m2[1, 0]
    return np.array(
        [
            [a, 0, b, 0],
            [0, e, 0, f],
            [c, 0, -a, 0],
            [0, g, 0, -e],
        ],
        dtype=complex,
    )


def sp4_diag(a, d):
    """Diagonal sp(4, C) element diag(a, d, -a, -d)."""
    return np.diag([a, d, -a, -d]).astype(complex)


def hermitian_basis():
    """Orthonormal real basis of the hermitian elements of sp(4, C).

    Ten matrices H_k, hermitian and symplectic-compatible, orthonormal for
    the real inner product Re tr(X Y^dagger).  Together with their i-fold
    multiples they give a real basis of all of sp(4, C).
    """
    e = np.zeros((4, 4), dtype=complex)

    def unit(i, j):
        m = e.copy()
        m[i, j] = 1.0
        return m

    d1 = np.diag([1.0, 0.0, -1.0, 0.0]).astype(complex)
    d2 = np.diag([0.0, 1.0, 0.0, -1.0]).astype(complex)
    generators = [
        unit(0, 1) - unit(3, 2),  # upper-left block, off-diagonal
        unit(0, 2),               # upper-right block, corner
        unit(0, 3) + unit(1, 2),  # upper-right block, anti-diagonal
        unit(1, 3),               # upper-right block, other corner
    ]
    basis = [d1 / np.sqrt(2.0), d2 / np.sqrt(2.0)]
    for x in generators:
        h1 = x + x.conj().T
        h2 = 1j * (x - x.conj().T)
        basis.append(h1 / frobenius_norm(h1))
        basis.append(h2 / frobenius_norm(h2))
    return basis


def frobenius_norm(x):
    """Frobenius norm over the trailing two axes."""
    x = np.asarray(x)
    return np.sqrt(np.sum(np.abs(x) ** 2, axis=(-2, -1)))


def random_traceless(rng, scale=1.0):
    """Random traceless 2x2 complex matrix with iid gaussian entries."""
    m = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    m[1, 1] = -m[0, 0]
    return m


def random_unimodular(rng, scale=0.5):
    """Random 2x2 complex matrix of determinant one (exponential of traceless)."""
    from scipy.linalg import expm

    return expm(random_traceless(rng, scale=scale))
