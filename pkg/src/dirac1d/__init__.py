"""Solver and diagnostics for 1D nonlinear massless Dirac systems."""

from .field import Bump, FromFile, Gaussian, GridSpec, SpinorField, Zero, init_field
from .models import (
    Model,
    coupling_constant_c,
    eval_G,
    federbusch,
    glimm_constants,
    gross_neveu,
    preset,
    thirring,
)
from .solver import SolverConfig, Trajectory, evolve, step

__all__ = [
    "Bump",
    "FromFile",
    "Gaussian",
    "GridSpec",
    "Model",
    "SolverConfig",
    "SpinorField",
    "Trajectory",
    "Zero",
    "coupling_constant_c",
    "eval_G",
    "evolve",
    "federbusch",
    "glimm_constants",
    "gross_neveu",
    "init_field",
    "preset",
    "step",
    "thirring",
]

__version__ = "0.1.0"
