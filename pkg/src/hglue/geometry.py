"""Cylinder grids, plumbing annuli, and the cutoff profile.

A long finite cylinder [-T, T] x S^1 discretizes the neck region of a
complex connected sum: the side chart r = exp(tau_side - T) identifies it
with an annulus r in [R^2, 1] around a puncture (R = exp(-T) the neck
radius), the two boundary rows carry Dirichlet data, and the mixing annulus
r in [3R/4, R] is where model and side data are interpolated by a smooth
cutoff.  PlumbingData records a standard annular identification w = lam / z
between two punctured disks, with log-derivative relation dw/w = -dz/z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInput

__all__ = [
    "CylinderGrid",
    "PlumbingData",
    "plumbing_map",
    "log_form_relation_check",
    "cutoff_chi",
    "CutoffProfile",
    "cutoff_growth",
    "CoordinateMaps",
    "coordinate_maps",
]

# Radial extent of the mixing annulus, as a fraction of the neck radius.
MIX_INNER_FRACTION = 0.75


@dataclass(frozen=True)
class CylinderGrid:
    """Uniform grid on the finite cylinder [-tMax, tMax] x S^1.

    nTau even intervals in the axial direction (nTau + 1 node rows, the
    first and last being Dirichlet boundary rows), and an odd number
    2*nModes + 1 of equispaced angular nodes so that spectral angular
    differentiation is exact through frequency nModes.  The half-length is
    tied to the neck radius by tMax = -log(rNeck).
    """

    tMax: float
    nTau: int
    nModes: int
    rNeck: float

    def __post_init__(self):
        if self.nTau < 8 or self.nTau % 2 != 0:
            raise InvalidInput(f"nTau must be an even integer >= 8, got {self.nTau}")
        if self.nModes < 1:
            raise InvalidInput(f"nModes must be >= 1, got {self.nModes}")
        if not (0.0 < self.rNeck < 1.0):
            raise InvalidInput(f"rNeck must lie in (0, 1), got {self.rNeck}")
        if abs(self.tMax + math.log(self.rNeck)) > 1e-12 * max(1.0, self.tMax):
            raise InvalidInput(
                f"tMax must equal -log(rNeck): tMax={self.tMax}, rNeck={self.rNeck}"
            )

    @classmethod
    def from_radius(cls, r_neck, n_tau, n_modes):
        return cls(tMax=-math.log(r_neck), nTau=n_tau, nModes=n_modes, rNeck=r_neck)

    @classmethod
    def from_half_length(cls, t_max, n_tau, n_modes):
        return cls(tMax=t_max, nTau=n_tau, nModes=n_modes, rNeck=math.exp(-t_max))

    @property
    def dTau(self):
        return 2.0 * self.tMax / self.nTau

    @property
    def nTheta(self):
        return 2 * self.nModes + 1

    @property
    def dTheta(self):
        return 2.0 * math.pi / self.nTheta

    def tau_nodes(self):
        return np.linspace(-self.tMax, self.tMax, self.nTau + 1)

    def theta_nodes(self):
        return 2.0 * math.pi * np.arange(self.nTheta) / self.nTheta

    def side_radii(self):
        """Side-chart radii r = exp(tau - tMax), from rNeck^2 up to 1."""
        return np.exp(self.tau_nodes() - self.tMax)

    @classmethod
    def matched_sweep(cls, r_values, n_tau_base, n_modes):
        """Grids over several neck radii sharing one axial resolution.

        The coarsest cylinder (largest radius) gets ``n_tau_base`` intervals
        and fixes the axial step; longer cylinders get proportionally more
        intervals (rounded to even), so sweep quantities are compared at
        identical resolution and row offsets from the boundary.
        """
        if not r_values:
            raise InvalidInput("need at least one neck radius")
        t_base = -math.log(max(r_values))
        d_tau = 2.0 * t_base / n_tau_base
        grids = []
        for r in r_values:
            t_len = -math.log(r)
            n = max(8, 2 * round(t_len / d_tau))
            grids.append(cls.from_radius(r, n, n_modes))
        return grids


@dataclass(frozen=True)
class PlumbingData:
    """Annular identification w = lam / z between two punctured disks.

    The first disk carries the annulus r1 <= |z| <= R1, the second
    r2 <= |w| <= R2; consistency demands equal moduli R1/r1 = R2/r2 and
    |lam| = r2 R1 = r1 R2 so the map exchanges the two annuli.
    """

    lam: complex
    r1: float
    R1: float
    r2: float
    R2: float

    def __post_init__(self):
        if self.lam == 0:
            raise InvalidInput("plumbing parameter lam must be nonzero")
        for name, lo, hi in (("first", self.r1, self.R1), ("second", self.r2, self.R2)):
            if not (0.0 < lo < hi):
                raise InvalidInput(f"{name} annulus radii must satisfy 0 < inner < outer")
        mod1 = self.R1 / self.r1
        mod2 = self.R2 / self.r2
        if abs(mod1 - mod2) > 1e-12 * max(mod1, mod2):
            raise InvalidInput(f"annulus moduli differ: {mod1} vs {mod2}")
        lam_mag = abs(self.lam)
        target = self.r2 * self.R1
        if abs(lam_mag - target) > 1e-12 * max(lam_mag, target):
            raise InvalidInput(f"|lam| must equal r2*R1 = r1*R2: {lam_mag} vs {target}")

    @classmethod
    def default_for_radius(cls, r_neck):
        """Standard mixing-annulus plumbing data at neck radius R."""
        inner = MIX_INNER_FRACTION * r_neck
        return cls(lam=inner * r_neck, r1=inner, R1=r_neck, r2=inner, R2=r_neck)


def plumbing_map(data, z):
    """Apply w = lam / z on the first annulus; DomainError outside it."""
    z = complex(z)
    if z == 0:
        raise DomainError("plumbing map is undefined at the puncture z = 0")
    mag = abs(z)
    if mag < data.r1 * (1 - 1e-12) or mag > data.R1 * (1 + 1e-12):
        raise DomainError(f"|z| = {mag} outside annulus [{data.r1}, {data.R1}]")
    return data.lam / z


def log_form_relation_check(data, n_samples=16, map_override=None, rel_tol=1e-8):
    """Verify dw/w = -dz/z for the (possibly overridden) plumbing map.

    Differentiates the map by centered differences at ``n_samples`` points
    on the circle |z| = sqrt(r1 R1) and compares w'/w against -1/z in
    relative terms.  Returns False as soon as one sample violates the
    tolerance, so a corrupted map override is detected.
    """
    f = map_override if map_override is not None else (lambda z: data.lam / z)
    rho = math.sqrt(data.r1 * data.R1)
    for k in range(n_samples):
        z = rho * np.exp(2j * math.pi * k / n_samples)
        h = 1e-6 * abs(z)
        w = f(z)
        if w == 0:
            return False
        dw = (f(z + h) - f(z - h)) / (2.0 * h)
        lhs = dw / w
        rhs = -1.0 / z
        if abs(lhs - rhs) > rel_tol * abs(rhs):
            return False
    return True


def _smoothstep(u):
    """Quintic smoothstep: 0 at u <= 0, 1 at u >= 1, C^2 across both ends."""
    u = np.clip(u, 0.0, 1.0)
    return u**3 * (6.0 * u**2 - 15.0 * u + 10.0)


def cutoff_chi(r, r_neck):
    """Radial cutoff: 1 on r <= 3R/4, 0 on r >= R, quintic in log r between.

    The transition variable is logarithmic in r, so derivative bounds with
    respect to t = log r are independent of the neck radius.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("radii must be positive")
    width = math.log(1.0 / MIX_INNER_FRACTION)
    u = (np.log(r) - math.log(MIX_INNER_FRACTION * r_neck)) / width
    return 1.0 - _smoothstep(u)


@dataclass(frozen=True)
class CutoffProfile:
    """Cutoff summary: neck radius and sup of |chi'| + |chi''| in t = log r."""

    rNeck: float
    growthConstant: float


def cutoff_growth(r_neck, n_probe=4097):
    """Measure the growth constant of the cutoff at a given neck radius."""
    width = math.log(1.0 / MIX_INNER_FRACTION)
    u = np.linspace(0.0, 1.0, n_probe)
    s1 = 30.0 * u**2 * (u - 1.0) ** 2
    s2 = 60.0 * u * (u - 1.0) * (2.0 * u - 1.0)
    sup = float(np.max(np.abs(s1) / width + np.abs(s2) / width**2))
    return CutoffProfile(rNeck=float(r_neck), growthConstant=sup)


@dataclass(frozen=True)
class CoordinateMaps:
    """Forward/backward maps between cylinder and side-chart coordinates."""

    grid: CylinderGrid

    def to_disk(self, tau, theta):
        """(tau, theta) -> z = exp((tau - tMax) + i theta) in the side chart."""
        tau = np.asarray(tau, dtype=float)
        if np.any(np.abs(tau) > self.grid.tMax * (1 + 1e-12)):
            raise DomainError("tau outside the cylinder")
        return np.exp((tau - self.grid.tMax) + 1j * np.asarray(theta, dtype=float))

    def to_cylinder(self, z):
        """z -> (tau, theta) with tau = tMax + log|z|, theta = arg z mod 2pi."""
        z = np.asarray(z, dtype=complex)
        if np.any(z == 0):
            raise DomainError("the puncture z = 0 has no cylinder coordinate")
        tau = self.grid.tMax + np.log(np.abs(z))
        if np.any(np.abs(tau) > self.grid.tMax * (1 + 1e-9) + 1e-9):
            raise DomainError("point outside the annulus covered by the cylinder")
        theta = np.mod(np.angle(z), 2.0 * math.pi)
        return tau, theta


def coordinate_maps(grid):
    """Coordinate maps attached to a cylinder grid."""
    return CoordinateMaps(grid=grid)
