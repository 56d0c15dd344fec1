"""Plane-wave eigenfunctions of constant-coefficient operators."""

from inradius_lab.fields.eigenfield import (
    PlaneWaveTerm, RecipeTerm, SpectralScale, Eigenfunction,
    solve_frequencies, synth, eval_field, eval_derivative, residual,
    gradient_sup_bound, local_gradient_bound,
)
from inradius_lab.fields.io import parse_field, format_field, read_field, write_field

__all__ = [
    "PlaneWaveTerm", "RecipeTerm", "SpectralScale", "Eigenfunction",
    "solve_frequencies", "synth", "eval_field", "eval_derivative", "residual",
    "gradient_sup_bound", "local_gradient_bound",
    "parse_field", "format_field", "read_field", "write_field",
]
