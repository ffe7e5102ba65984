"""Numerical and symbolic laboratory for glued symplectic Higgs pairs.

Submodules:

* :mod:`hglue.algebra` -- exact 4x4 symplectic Lie algebra and embeddings
* :mod:`hglue.model` -- closed-form tube solutions and diagonal models
* :mod:`hglue.geometry` -- cylinder grids, plumbing data, cutoff profile
* :mod:`hglue.approximate` -- side data, gluing, residuals, gauge action
* :mod:`hglue.linearized` -- assembled linearization and its inverse
* :mod:`hglue.solver` -- contraction-mapping correction
* :mod:`hglue.invariants` -- exact parabolic degrees and component census
* :mod:`hglue.cli` -- command-line entry points
"""

from . import algebra, geometry, invariants, model
from .errors import (
    BasinError,
    ConvergenceError,
    DimensionError,
    DomainError,
    GluingError,
    HglueError,
    InvalidInput,
    IoError,
    SingularOperatorError,
)

__version__ = "0.1.0"

__all__ = [
    "algebra",
    "geometry",
    "invariants",
    "model",
    "HglueError",
    "DimensionError",
    "InvalidInput",
    "DomainError",
    "GluingError",
    "ConvergenceError",
    "SingularOperatorError",
    "BasinError",
    "IoError",
    "__version__",
]
