"""Midpoint-rule L2 masses on cell-centre grids."""

import logging
import math
from typing import TYPE_CHECKING, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from inradius_lab.errors import ArgumentError, ZeroFieldError
from inradius_lab.geometry.domains import Domain
from inradius_lab.geometry.grid import Grid

if TYPE_CHECKING:
    from inradius_lab.fields.eigenfield import Eigenfunction

logger = logging.getLogger(__name__)


class MassReport(BaseModel):
    """N = ||psi||^2 on Omega, M = ||psi||^2 on Omega_{-r}, and sqrt(M/N)."""

    r: float
    total: float = Field(ge=0)
    interior: float = Field(ge=0)
    ratio_sqrt: float = Field(ge=0, le=1)

    @property
    def boundary_fraction(self) -> float:
        return 1.0 - self.interior / self.total


def sample_field(ef: "Eigenfunction", grid: Grid) -> np.ndarray:
    """psi at every cell centre inside the grid's domain; zero elsewhere."""
    return grid.scatter(ef.evaluate(grid.cells), fill=0j)


def sample_abs2(ef: "Eigenfunction", grid: Grid) -> np.ndarray:
    return np.abs(sample_field(ef, grid)) ** 2


def l2_mass_sampled(abs2: np.ndarray, grid: Grid, region: Optional[Domain]) -> float:
    """h^d times the sum of sampled |psi|^2 over the cells whose centres lie in ``region``.

    Summation runs over a contiguous row-major copy, so numpy's pairwise reduction makes
    the result independent of how the samples were produced.
    """
    if region is None:
        return 0.0
    mask = grid.mask if region == grid.domain else grid.region_mask(region)
    return grid.cell_volume * float(np.sum(abs2[mask]))


def l2_mass(ef: "Eigenfunction", region: Optional[Domain], grid: Grid) -> float:
    """||psi||^2 over ``region`` by the midpoint rule on ``grid``."""
    if region is not None and region.dim != grid.dim:
        raise ArgumentError("region and grid have different dimensions")
    return l2_mass_sampled(sample_abs2(ef, grid), grid, region)


def mass_report(
    ef: "Eigenfunction",
    dom: Domain,
    r: float,
    grid: Grid,
    abs2: Optional[np.ndarray] = None,
) -> MassReport:
    """Total and r-interior masses of psi and the factor sqrt(M/N).

    Args:
        ef: The field
        dom: Omega
        r: The interior depth (r_lambda)
        grid: Grid over Omega
        abs2: Pre-sampled |psi|^2 on ``grid``, if already available

    Returns:
        A MassReport

    Raises:
        ZeroFieldError: If N = 0
    """
    if abs2 is None:
        abs2 = sample_abs2(ef, grid)
    total = l2_mass_sampled(abs2, grid, dom)
    if total == 0.0:
        raise ZeroFieldError("the field has zero L2 mass on the domain")
    interior_domain = dom.r_interior(r)
    interior = l2_mass_sampled(abs2, grid, interior_domain)
    if interior == 0.0:
        logger.debug("empty or massless interior at r=%.4g", r)
    ratio = min(1.0, math.sqrt(interior / total))
    return MassReport(r=r, total=total, interior=interior, ratio_sqrt=ratio)


class RefinementStudy(BaseModel):
    spacings: List[float]
    masses: List[float]
    observed_order: Optional[float] = None


def refinement_study(
    ef: "Eigenfunction", region: Domain, domain: Domain, h: float, levels: int = 3
) -> RefinementStudy:
    """Masses at h, h/2, h/4, ... and the observed convergence order.

    The order is log2 of the ratio of successive differences; the midpoint rule on a
    box aligned with the grid gives about 2.
    """
    if levels < 2:
        raise ArgumentError("a refinement study needs at least two levels")
    spacings = [h / 2**k for k in range(levels)]
    masses = [l2_mass(ef, region, Grid.for_domain(domain, s)) for s in spacings]
    order = None
    if levels >= 3:
        d1 = abs(masses[-3] - masses[-2])
        d2 = abs(masses[-2] - masses[-1])
        if d1 > 0 and d2 > 0:
            order = math.log2(d1 / d2)
    return RefinementStudy(spacings=spacings, masses=masses, observed_order=order)
