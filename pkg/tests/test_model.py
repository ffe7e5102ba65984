"""Tests for the closed-form tube models and their 4x4 matrix versions."""

import numpy as np
import pytest

from hglue import algebra, model
from hglue.errors import DomainError, InvalidInput


def test_family_param_validation():
    model.ModelFamilyParam(0.5)
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(InvalidInput):
            model.ModelFamilyParam(bad)


def test_b_s_boundary_value_and_decay():
    s = 0.5
    assert model.b_s(s, 1.0) == pytest.approx((1 - s) / (1 + s), abs=1e-15)
    y = np.linspace(1.0, 20.0, 80)
    b = model.b_s(s, y)
    assert np.all(np.diff(b) < 0)
    assert b[-1] < 1e-7  # (1/3) e^{-19}
    with pytest.raises(DomainError):
        model.b_s(s, 0.5)
    with pytest.raises(InvalidInput):
        model.b_s(1.2, 2.0)


def test_h_1s_frozen_boundary_value():
    # at y=1 the ratio telescopes to (1 - sqrt(1/3))/(1 + sqrt(1/3)) = 2 - sqrt(3)
    assert model.h_1s(0.5, 1.0) == pytest.approx(4.0 * (2.0 - np.sqrt(3.0)), rel=1e-14)


def test_h_1s_monotone_and_asymptote():
    rng = np.random.default_rng(11)
    y = np.linspace(1.0, 40.0, 400)
    for _ in range(20):
        s = rng.uniform(0.05, 0.95)
        h = model.h_1s(s, y)
        assert np.all(h > 0)
        assert np.all(np.diff(h) >= 0)  # saturates to 2/s in floats at the tail
        assert np.all(np.diff(h[: len(h) // 2]) > 0)
        # |h - 2/s| <= (2/s) * 2 sqrt(B) / (1 + sqrt(B)) at the last node
        gap = 2.0 * np.sqrt(model.b_s(s, y[-1]))
        assert abs(h[-1] - 2.0 / s) <= (2.0 / s) * gap + 1e-12


def test_harmonic_map_model_values():
    s = 0.5
    u, v = model.harmonic_map_model(s, 0.7, 1.0)
    assert u == pytest.approx(np.arcsin(s) / s, rel=1e-14)  # = pi/3 here
    assert v == pytest.approx(0.7)
    y = np.linspace(1.0, 25.0, 200)
    u, v = model.harmonic_map_model(s, 0.0, y)
    assert np.all(np.diff(u) >= 0)
    assert np.all(np.diff(u[: len(u) // 2]) > 0)
    assert abs(u[-1] - np.pi / (2 * s)) < 1e-4
    assert v.shape == y.shape


def test_scalar_reduction_residual_converges_quadratically():
    # the family solves (log h)'' = (s^4/16) h^2 - h^{-2}; the centered
    # second difference leaves an O(dy^2) discretization remainder
    for s in (0.3, 0.5, 0.7):
        res = []
        for n in (200, 400):
            y = np.linspace(1.0, 6.0, n + 1)
            res.append(
                model.scalar_reduction_residual(model.h_1s(s, y), 1.0, s**2 / 4.0, y)
            )
        assert res[0] < 3e-4
        assert 3.5 < res[0] / res[1] < 4.5


def test_scalar_reduction_residual_accepts_callable():
    y = np.linspace(1.0, 5.0, 301)
    r1 = model.scalar_reduction_residual(lambda yy: model.h_1s(0.4, yy), 1.0, 0.04, y)
    r2 = model.scalar_reduction_residual(model.h_1s(0.4, y), 1.0, 0.04, y)
    assert r1 == r2


def test_scalar_reduction_residual_rejects_bad_grids():
    good_h = np.ones(5)
    with pytest.raises(InvalidInput):
        model.scalar_reduction_residual(good_h, 1.0, 1.0, np.array([1.0, 2.0]))
    with pytest.raises(InvalidInput):
        model.scalar_reduction_residual(
            np.ones(4), 1.0, 1.0, np.array([1.0, 2.0, 4.0, 5.0])
        )
    with pytest.raises(InvalidInput):
        model.scalar_reduction_residual(np.ones(4), 1.0, 1.0, np.linspace(1, 2, 5))
    with pytest.raises(DomainError):
        model.scalar_reduction_residual(
            np.array([1.0, -1.0, 1.0, 1.0, 1.0]), 1.0, 1.0, np.linspace(1, 2, 5)
        )


def test_sl2_model_pair():
    a, phi = model.sl2_model_pair(2.0)
    assert np.array_equal(a, np.zeros((2, 2), dtype=complex))
    assert np.array_equal(phi, np.diag([2.0, -2.0]).astype(complex))
    with pytest.raises(InvalidInput):
        model.sl2_model_pair(0.0)


def test_sp4_model_left_frozen():
    pair = model.sp4_model_left(1.5)
    assert np.array_equal(pair.connectionCoeff, np.zeros((4, 4), dtype=complex))
    assert np.array_equal(
        pair.higgsCoeff, np.diag([4.5, 1.5, -4.5, -1.5]).astype(complex)
    )
    assert algebra.in_sp4(pair.higgsCoeff)
    assert pair.cParam == 1.5


def test_sp4_model_right_is_exact_negative():
    for c in (0.3, 1.0, -2.0):
        left = model.sp4_model_left(c)
        right = model.sp4_model_right(c)
        assert np.array_equal(right.higgsCoeff, -left.higgsCoeff)
        assert algebra.in_sp4(right.higgsCoeff)
        assert model.models_opposite(left, right)


def test_models_opposite_detects_mismatch():
    left = model.sp4_model_left(1.0)
    right = model.sp4_model_right(1.0 + 1e-6)
    assert not model.models_opposite(left, right)
    assert model.models_opposite(left, right, tol=1e-2)
