"""Bounded-overlap covers, good balls and lattice-point counts."""

from inradius_lab.coverlat.cover import CoverResult, vitali_cover, overlap_bound, read_points
from inradius_lab.coverlat.good_ball import GoodBall, good_ball, ball_offsets, window_sums
from inradius_lab.coverlat.lattice import (
    LatticeCount, UniformBound, count_lattice, brute_force_count, lattice_uniform_bound,
    perturbation_radius, enumeration_radius,
)

__all__ = [
    "CoverResult", "vitali_cover", "overlap_bound", "read_points",
    "GoodBall", "good_ball", "ball_offsets", "window_sums",
    "LatticeCount", "UniformBound", "count_lattice", "brute_force_count",
    "lattice_uniform_bound", "perturbation_radius", "enumeration_radius",
]
