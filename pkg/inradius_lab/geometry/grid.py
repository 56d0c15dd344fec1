"""Uniform cell-centre grids over a domain's bounding box."""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from inradius_lab.errors import ArgumentError
from inradius_lab.geometry.domains import Domain

logger = logging.getLogger(__name__)

DEFAULT_CELLS_PER_R = 16
DEFAULT_MAX_CELLS = 4_000_000


def _cells_along(width: float, h: float) -> int:
    ratio = width / h
    nearest = round(ratio)
    if nearest >= 1 and abs(ratio - nearest) <= 1e-9 * max(1.0, ratio):
        return int(nearest)
    return max(1, int(math.floor(ratio)))


class Grid(BaseModel):
    """Cell centres ``origin + (i + 1/2) h`` of a row-major lattice.

    ``mask`` marks the centres strictly inside ``domain``; the lattice block is centred
    in the bounding box when h does not divide a side.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    domain: Domain
    spacing: float
    origin: Tuple[float, ...]
    shape: Tuple[int, ...]
    mask: np.ndarray

    @classmethod
    def for_domain(cls, domain: Domain, h: float) -> "Grid":
        """Build the grid of spacing ``h`` covering ``domain``."""
        if not h > 0:
            raise ArgumentError(f"grid spacing must be positive, got {h}")
        lo, hi = domain.bounding_box()
        widths = hi - lo
        shape = tuple(_cells_along(float(w), h) for w in widths)
        origin = tuple(float(a + (w - n * h) / 2.0) for a, w, n in zip(lo, widths, shape))
        grid = cls(domain=domain, spacing=float(h), origin=origin, shape=shape,
                   mask=np.ones(shape, dtype=bool))
        mask = domain.contains(grid.full_centers().reshape(-1, domain.dim)).reshape(shape)
        if not mask.any():
            raise ArgumentError(f"no cell centre of spacing {h} lies inside {domain.to_spec()}")
        logger.debug("grid %s, h=%.4g, %d cells inside", shape, h, int(mask.sum()))
        return grid.model_copy(update={"mask": mask})

    def restrict(self, region: Domain) -> "Grid":
        """Same lattice, masked to the cells whose centres lie in ``region``."""
        inside = region.contains(self.full_centers().reshape(-1, self.dim)).reshape(self.shape)
        return self.model_copy(update={"domain": region, "mask": self.mask & inside})

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def n_cells(self) -> int:
        return int(self.mask.sum())

    def axes(self) -> List[np.ndarray]:
        return [o + (np.arange(n) + 0.5) * self.spacing for o, n in zip(self.origin, self.shape)]

    def full_centers(self) -> np.ndarray:
        """Centres of every lattice cell, shape ``shape + (d,)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def indices(self, mask: Optional[np.ndarray] = None) -> np.ndarray:
        """Row-major lattice indices of the masked cells, shape (n, d)."""
        return np.argwhere(self.mask if mask is None else mask)

    def centers_of(self, indices: np.ndarray) -> np.ndarray:
        return np.asarray(self.origin) + (np.asarray(indices) + 0.5) * self.spacing

    @property
    def cells(self) -> np.ndarray:
        """Centres of the cells inside the domain, row-major."""
        return self.centers_of(self.indices())

    def region_mask(self, region: Optional[Domain]) -> np.ndarray:
        """Cells inside the grid's domain whose centres also lie in ``region``."""
        if region is None:
            return np.zeros(self.shape, dtype=bool)
        inside = region.contains(self.full_centers().reshape(-1, self.dim)).reshape(self.shape)
        return self.mask & inside

    def scatter(self, values: np.ndarray, fill=0.0) -> np.ndarray:
        """Place per-cell values (row-major over the mask) into a full lattice array."""
        out = np.full(self.shape, fill, dtype=np.asarray(values).dtype)
        out[self.mask] = values
        return out


def auto_spacing(
    domain: Domain,
    r: float,
    cells_per_r: int = DEFAULT_CELLS_PER_R,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> float:
    """h = r / cells_per_r, snapped to divide the shortest bounding-box side, capped.

    Args:
        domain: The domain to grid
        r: The length scale to resolve (r_lambda)
        cells_per_r: Cells per length r
        max_cells: Upper bound on the number of lattice cells

    Returns:
        The spacing h
    """
    lo, hi = domain.bounding_box()
    widths = hi - lo
    shortest = float(widths.min())
    h = r / cells_per_r
    h = shortest / math.ceil(shortest / h - 1e-9)
    total = float(np.prod(np.ceil(widths / h)))
    if total > max_cells:
        coarse = (float(np.prod(widths)) / max_cells) ** (1.0 / domain.dim)
        n = max(1, math.floor(shortest / coarse))
        while n > 1 and float(np.prod(np.ceil(widths * n / shortest - 1e-9))) > max_cells:
            n -= 1
        h = shortest / n
        logger.info("grid capped at %d cells: h = %.4g instead of %.4g", max_cells, h, r / cells_per_r)
    return h
