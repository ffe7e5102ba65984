"""Shared fixtures: reference glued pairs and their linearizations."""

import numpy as np
import pytest

from hglue.approximate import (
    ApproxConfig,
    build_side_approx,
    glue_pairs,
    synthesize_side_data,
)
from hglue.geometry import CylinderGrid, PlumbingData
from hglue.model import sp4_model_left, sp4_model_right


def make_glued(r_neck, n_tau, n_modes, c_param=1.0, amplitude=None, grid=None):
    """Build both side approximations and glue them across the neck."""
    if grid is None:
        grid = CylinderGrid.from_radius(r_neck, n_tau, n_modes)
    cfg = ApproxConfig(R=r_neck, C=c_param)
    left_model = sp4_model_left(c_param)
    right_model = sp4_model_right(c_param)
    left = build_side_approx(
        synthesize_side_data(grid, left_model, cfg, amplitude=amplitude), left_model, cfg
    )
    right = build_side_approx(
        synthesize_side_data(grid, right_model, cfg, amplitude=amplitude), right_model, cfg
    )
    return glue_pairs(left, right, PlumbingData.default_for_radius(r_neck))


@pytest.fixture(scope="session")
def glued_small():
    """Reference glued pair: R = 0.1, 64 axial intervals, one angular mode."""
    return make_glued(0.1, 64, 1)


@pytest.fixture(scope="session")
def op_small(glued_small):
    from hglue.linearized import linearize

    return linearize(glued_small)


@pytest.fixture()
def rng():
    return np.random.default_rng(0)
