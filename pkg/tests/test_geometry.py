"""Tests for cylinder grids, plumbing data, cutoffs, and coordinate maps."""

import math

import numpy as np
import pytest

from hglue import geometry
from hglue.errors import DomainError, InvalidInput


def test_grid_validation():
    geometry.CylinderGrid.from_radius(0.1, 8, 1)
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid.from_radius(0.1, 7, 1)  # odd
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid.from_radius(0.1, 6, 1)  # too small
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid.from_radius(0.1, 8, 0)
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid.from_radius(1.5, 8, 1)
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid(tMax=1.0, nTau=8, nModes=1, rNeck=0.5)  # mismatch


def test_grid_geometry_accessors():
    g = geometry.CylinderGrid.from_radius(0.1, 64, 3)
    assert g.tMax == pytest.approx(-math.log(0.1), rel=1e-15)
    assert g.nTheta == 7
    assert g.dTau == pytest.approx(2 * g.tMax / 64)
    assert g.dTheta == pytest.approx(2 * math.pi / 7)
    t = g.tau_nodes()
    assert t.shape == (65,)
    assert t[0] == -g.tMax and t[-1] == g.tMax
    th = g.theta_nodes()
    assert th.shape == (7,)
    assert np.allclose(np.diff(th), g.dTheta)
    g2 = geometry.CylinderGrid.from_half_length(g.tMax, 64, 3)
    assert g2.tMax == g.tMax and g2.nTau == g.nTau and g2.nModes == g.nModes
    assert g2.rNeck == pytest.approx(g.rNeck, rel=1e-15)


def test_side_radii_ascend_from_rneck_squared():
    g = geometry.CylinderGrid.from_radius(0.2, 32, 1)
    r = g.side_radii()
    assert r[0] == pytest.approx(0.2**2, rel=1e-12)
    assert r[-1] == pytest.approx(1.0, rel=1e-12)
    assert np.all(np.diff(r) > 0)


def test_matched_sweep_shares_axial_step():
    grids = geometry.CylinderGrid.matched_sweep([0.2, 0.1, 0.05, 0.025], 96, 1)
    assert grids[0].nTau == 96  # coarsest cylinder fixes the step
    base = grids[0].dTau
    for g in grids:
        assert g.nTau % 2 == 0 and g.nTau >= 8
        assert abs(g.dTau - base) < 0.01 * base  # equal up to even rounding
    with pytest.raises(InvalidInput):
        geometry.CylinderGrid.matched_sweep([], 96, 1)


def test_plumbing_default_and_validation():
    d = geometry.PlumbingData.default_for_radius(0.2)
    assert d.lam == pytest.approx(0.75 * 0.2 * 0.2)
    assert (d.r1, d.R1, d.r2, d.R2) == (0.75 * 0.2, 0.2, 0.75 * 0.2, 0.2)
    with pytest.raises(InvalidInput):
        geometry.PlumbingData(lam=0.0, r1=0.1, R1=0.2, r2=0.1, R2=0.2)
    with pytest.raises(InvalidInput):
        geometry.PlumbingData(lam=0.02, r1=0.2, R1=0.1, r2=0.1, R2=0.2)
    with pytest.raises(InvalidInput):
        geometry.PlumbingData(lam=0.02, r1=0.1, R1=0.2, r2=0.1, R2=0.3)
    with pytest.raises(InvalidInput):
        geometry.PlumbingData(lam=0.05, r1=0.1, R1=0.2, r2=0.1, R2=0.2)


def test_plumbing_map_is_involutive_on_symmetric_data():
    d = geometry.PlumbingData.default_for_radius(0.3)
    rng = np.random.default_rng(7)
    for _ in range(20):
        rho = rng.uniform(d.r1, d.R1)
        z = rho * np.exp(2j * math.pi * rng.uniform())
        w = geometry.plumbing_map(d, z)
        assert d.r2 * (1 - 1e-12) <= abs(w) <= d.R2 * (1 + 1e-12)
        assert abs(geometry.plumbing_map(d, w) - z) < 1e-14
    with pytest.raises(DomainError):
        geometry.plumbing_map(d, 0.0)
    with pytest.raises(DomainError):
        geometry.plumbing_map(d, d.R1 * 2.0)


def test_log_form_relation():
    d = geometry.PlumbingData.default_for_radius(0.2)
    assert geometry.log_form_relation_check(d)
    # a corrupted identification violates dw/w = -dz/z
    assert not geometry.log_form_relation_check(
        d, map_override=lambda z: d.lam / z + 0.01 * d.lam
    )
    assert not geometry.log_form_relation_check(d, map_override=lambda z: d.lam / z**2)


def test_cutoff_chi_plateaus_and_midpoint():
    R = 0.37
    assert geometry.cutoff_chi(0.75 * R, R) == 1.0
    assert geometry.cutoff_chi(R, R) == 0.0
    assert geometry.cutoff_chi(0.1 * R, R) == 1.0
    assert geometry.cutoff_chi(2.0 * R, R) == 0.0
    # quintic smoothstep is centered in log r
    rmid = 0.75 * R * math.sqrt(4.0 / 3.0)
    assert geometry.cutoff_chi(rmid, R) == pytest.approx(0.5, abs=1e-12)
    r = np.geomspace(0.75 * R, R, 200)
    chi = geometry.cutoff_chi(r, R)
    assert np.all(np.diff(chi) <= 0)
    with pytest.raises(DomainError):
        geometry.cutoff_chi(np.array([0.1, -0.2]), R)


def test_cutoff_growth_constant():
    prof = geometry.cutoff_growth(0.1)
    assert prof.rNeck == 0.1
    # independent dense-grid maximization of |chi'| + |chi''| in t = log r
    w = math.log(4.0 / 3.0)
    u = np.linspace(0.0, 1.0, 400001)
    s1 = 30.0 * u**2 * (u - 1.0) ** 2
    s2 = 60.0 * u * (u - 1.0) * (2.0 * u - 1.0)
    dense = float(np.max(np.abs(s1) / w + np.abs(s2) / w**2))
    assert prof.growthConstant == pytest.approx(dense, rel=1e-6)
    assert prof.growthConstant == pytest.approx(72.7388, rel=1e-4)
    # the bound is radius-independent because the variable is logarithmic
    assert geometry.cutoff_growth(0.5).growthConstant == prof.growthConstant


def test_coordinate_maps_round_trip():
    g = geometry.CylinderGrid.from_radius(0.15, 32, 2)
    maps = geometry.coordinate_maps(g)
    rng = np.random.default_rng(3)
    tau = rng.uniform(-g.tMax, g.tMax, size=25)
    theta = rng.uniform(0.0, 2 * math.pi, size=25)
    z = maps.to_disk(tau, theta)
    assert np.all(np.abs(z) <= 1 + 1e-12) and np.all(np.abs(z) >= 0.15**2 - 1e-12)
    t2, th2 = maps.to_cylinder(z)
    assert np.max(np.abs(t2 - tau)) < 1e-12
    assert np.max(np.abs(np.mod(th2 - theta + math.pi, 2 * math.pi) - math.pi)) < 1e-12
    assert maps.to_disk(g.tMax, 0.0) == pytest.approx(1.0)
    assert maps.to_disk(-g.tMax, 0.0) == pytest.approx(0.15**2)
    with pytest.raises(DomainError):
        maps.to_disk(2 * g.tMax, 0.0)
    with pytest.raises(DomainError):
        maps.to_cylinder(np.array([0.0 + 0.0j]))
    with pytest.raises(DomainError):
        maps.to_cylinder(np.array([2.0 + 0.0j]))
