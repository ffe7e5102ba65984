"""
Two embeddings of sl(2) data into sp(4)
=======================================

The package models surface-group representations through two Lie-algebra
embeddings: an irreducible one coming from the 4-dimensional symplectic
representation of SL(2), and a product one that interleaves two copies of
sl(2) on complementary index pairs.  This script exercises both maps and
prints the identities that make them usable as exact building blocks.
"""

import numpy as np

from hglue import algebra
from hglue.constants import SYMPLECTIC_J

rng = np.random.default_rng(7)

# --- the irreducible embedding scales the Killing norm by exactly 10 ----
m = algebra.random_traceless(rng)
img = algebra.phi_irr_star(m)
print("traceless 2x2 input:")
print(np.array_str(m, precision=4))
print("irreducible 4x4 image:")
print(np.array_str(img, precision=4))
print("norm^2 ratio (should be 10):",
      algebra.frobenius_norm(img) ** 2 / algebra.frobenius_norm(m) ** 2)

# the image satisfies X^T J + J X = 0, the defining relation of sp(4)
defect = np.max(np.abs(img.T @ SYMPLECTIC_J + SYMPLECTIC_J @ img))
print("sp(4) relation defect:", defect)

# --- the product embedding is an isometry on pairs -----------------------
a, b = algebra.random_traceless(rng), algebra.random_traceless(rng)
pimg = algebra.psi_star(a, b)
print("\nproduct image of a pair of traceless matrices:")
print(np.array_str(pimg, precision=4))
print("norm^2 difference (should be 0):",
      algebra.frobenius_norm(pimg) ** 2
      - algebra.frobenius_norm(a) ** 2 - algebra.frobenius_norm(b) ** 2)

# --- both are bracket homomorphisms --------------------------------------
m2 = algebra.random_traceless(rng)
lhs = algebra.bracket(algebra.phi_irr_star(m), algebra.phi_irr_star(m2))
rhs = algebra.phi_irr_star(m @ m2 - m2 @ m)
print("\nirreducible bracket-homomorphism defect:", np.max(np.abs(lhs - rhs)))

# --- and the irreducible one integrates to the group level ---------------
g1, g2 = algebra.random_unimodular(rng), algebra.random_unimodular(rng)
gh = algebra.phi_irr_group(g1 @ g2) - algebra.phi_irr_group(g1) @ algebra.phi_irr_group(g2)
print("group-level homomorphism defect:", np.max(np.abs(gh)))

# --- Cartan split: diagonal-block part h and off-block part m ------------
x = algebra.phi_irr_star(algebra.random_traceless(rng))
split = algebra.cartan_split(x)
print("\nCartan split reassembly defect:",
      np.max(np.abs(split.h_part + split.m_part - x)))
print("h-part stays in h:", algebra.in_h_complex(split.h_part))
print("m-part stays in m:", algebra.in_m_complex(split.m_part))
