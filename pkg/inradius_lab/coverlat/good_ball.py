"""Selection of a cover ball carrying a fixed share of its dilate's mass."""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from inradius_lab.coverlat.cover import overlap_bound, vitali_cover
from inradius_lab.errors import ArgumentError, GuaranteeViolationError
from inradius_lab.geometry.domains import Domain
from inradius_lab.geometry.grid import Grid

logger = logging.getLogger(__name__)

_GATHER_CHUNK = 1 << 22


class GoodBall(BaseModel):
    """x_{j0} with inner_mass / outer_mass >= M / (2 N_d total_mass).

    Masses are midpoint sums of f over the cells whose centres lie strictly inside
    B(center, r/2) (inner) and B(center, r) (outer).
    """

    center: Tuple[float, ...]
    center_index: Tuple[int, ...]
    r: float = Field(gt=0)
    inner_mass: float = Field(ge=0)
    outer_mass: float = Field(ge=0)
    ratio: float
    guarantee: float
    interior_mass: float = Field(ge=0)
    total_mass: float = Field(ge=0)
    cover_size: int
    max_overlap: int


def ball_offsets(dim: int, radius: float) -> np.ndarray:
    """Integer vectors o with |o| < radius, in row-major order."""
    reach = int(math.ceil(radius))
    axes = [np.arange(-reach, reach + 1)] * dim
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    return grid[np.sum(grid * grid, axis=1) < radius * radius]


def window_sums(values: np.ndarray, centers: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Sums of ``values`` over ``centers[i] + offsets``; indices off the lattice read 0."""
    pad = int(np.abs(offsets).max()) if len(offsets) else 0
    padded = np.pad(values, pad)
    out = np.empty(len(centers), dtype=np.float64)
    per = max(1, _GATHER_CHUNK // max(1, len(offsets)))
    for start in range(0, len(centers), per):
        block = centers[start:start + per]
        idx = block[:, None, :] + offsets[None, :, :] + pad
        out[start:start + per] = padded[tuple(np.moveaxis(idx, -1, 0))].sum(axis=1)
    return out


def good_ball(f_grid: np.ndarray, grid: Grid, E: Optional[Domain], r: float) -> Optional[GoodBall]:
    """Pick the cover ball maximising inner/outer mass of f.

    The cover is built on the grid cells inside E, in lattice units so that distances
    are exact. Returns None when E holds no mass (the vacuous case).

    Args:
        f_grid: Non-negative samples on the full lattice (zero outside the domain)
        grid: The grid
        E: The region holding the candidate centres (the r-interior), or None if empty
        r: The ball radius

    Returns:
        The good ball, or None

    Raises:
        GuaranteeViolationError: If the best ratio falls below M / (2 N_d total)
    """
    if not r > 0:
        raise ArgumentError(f"good_ball radius must be positive, got {r}")
    values = np.asarray(f_grid, dtype=np.float64)
    if values.shape == (grid.n_cells,):
        values = grid.scatter(values)
    elif values.shape != grid.shape:
        raise ArgumentError(f"samples of shape {values.shape} do not match the grid {grid.shape}")
    values = np.where(grid.mask, values, 0.0)
    if np.any(values < 0):
        raise ArgumentError("good_ball needs a non-negative density")
    total = grid.cell_volume * float(np.sum(values[grid.mask]))
    e_mask = grid.region_mask(E)
    interior = grid.cell_volume * float(np.sum(values[e_mask]))
    if interior == 0.0:
        logger.warning("no mass in the r-interior; the good-ball selection is vacuous")
        return None

    q = r / grid.spacing
    indices = grid.indices(e_mask)
    cover = vitali_cover(indices, q)
    centers = indices[cover.center_indices]
    inner = grid.cell_volume * window_sums(values, centers, ball_offsets(grid.dim, q / 2.0))
    outer = grid.cell_volume * window_sums(values, centers, ball_offsets(grid.dim, q))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(outer > 0, inner / outer, 0.0)
    j = int(np.argmax(ratios))

    n_d = overlap_bound(grid.dim)
    guarantee = interior / (2.0 * n_d * total)
    if ratios[j] < guarantee:
        raise GuaranteeViolationError(
            f"best mass ratio {ratios[j]:.6g} below the guarantee {guarantee:.6g}"
        )
    center_index = tuple(int(i) for i in centers[j])
    ball = GoodBall(
        center=tuple(float(c) for c in grid.centers_of(centers[j])),
        center_index=center_index,
        r=r,
        inner_mass=float(inner[j]),
        outer_mass=float(outer[j]),
        ratio=float(ratios[j]),
        guarantee=guarantee,
        interior_mass=interior,
        total_mass=total,
        cover_size=len(centers),
        max_overlap=cover.max_overlap,
    )
    logger.debug("good ball at %s: ratio %.4g >= %.4g over %d centres",
                 ball.center, ball.ratio, guarantee, len(centers))
    return ball
