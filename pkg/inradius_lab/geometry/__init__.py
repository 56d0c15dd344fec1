"""Domains, r-interiors, grids and midpoint quadrature."""

from inradius_lab.geometry.domains import (
    Domain, Box, Ball, register_domain, get_domain_class, parse_domain, format_domain,
    r_interior, dist_to_complement, ball_volume,
)
from inradius_lab.geometry.grid import Grid, auto_spacing
from inradius_lab.geometry.quadrature import (
    MassReport, sample_field, sample_abs2, l2_mass, l2_mass_sampled, mass_report,
    RefinementStudy, refinement_study,
)

__all__ = [
    "Domain", "Box", "Ball", "register_domain", "get_domain_class", "parse_domain",
    "format_domain", "r_interior", "dist_to_complement", "ball_volume",
    "Grid", "auto_spacing",
    "MassReport", "sample_field", "sample_abs2", "l2_mass", "l2_mass_sampled", "mass_report",
    "RefinementStudy", "refinement_study",
]
