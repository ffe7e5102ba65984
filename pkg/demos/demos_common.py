"""Shared builder for the demo scripts: synthesize both sides and glue."""

from hglue import approximate as ap
from hglue import model
from hglue.geometry import CylinderGrid, PlumbingData


def build_glued(r_neck, n_tau, n_modes, c_param=1.0, grid=None):
    grid = grid or CylinderGrid.from_radius(r_neck, n_tau, n_modes)
    cfg = ap.ApproxConfig(R=r_neck, C=c_param)
    lm, rm = model.sp4_model_left(c_param), model.sp4_model_right(c_param)
    left = ap.build_side_approx(ap.synthesize_side_data(grid, lm, cfg), lm, cfg)
    right = ap.build_side_approx(ap.synthesize_side_data(grid, rm, cfg), rm, cfg)
    return ap.glue_pairs(left, right, PlumbingData.default_for_radius(r_neck))
