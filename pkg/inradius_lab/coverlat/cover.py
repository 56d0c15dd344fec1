"""Greedy bounded-overlap covers."""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.spatial import cKDTree

from inradius_lab.errors import ArgumentError, ContractError, ParseError

logger = logging.getLogger(__name__)

_QUERY_INFLATE = 1.0 + 1e-9


def overlap_bound(dim: int) -> int:
    """N_d = 5^d: r-balls about centres pairwise r/2 apart overlap at most this often."""
    return 5**dim


class CoverResult(BaseModel):
    """Centres x_j whose r/4-balls are disjoint and whose r/2-balls cover the input."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    centers: np.ndarray
    center_indices: List[int]
    r: float = Field(gt=0)
    max_overlap: int = Field(ge=0)
    overlap_bound: int

    def check(self, points: np.ndarray) -> None:
        """Assert the covering, packing and overlap properties exactly.

        Raises:
            ContractError: If any of the three fails
        """
        points = np.asarray(points, dtype=np.float64)
        half = self.r / 2.0
        tree = cKDTree(self.centers)
        nearest, _ = tree.query(points)
        if np.any(nearest >= half):
            raise ContractError(f"a point lies {nearest.max():.6g} from every centre (r/2 = {half})")
        if len(self.centers) > 1:
            gaps, _ = tree.query(self.centers, k=2)
            if np.any(gaps[:, 1] < half):
                raise ContractError(f"two centres are {gaps[:, 1].min():.6g} apart (< r/2 = {half})")
        if self.max_overlap > self.overlap_bound:
            raise ContractError(f"overlap {self.max_overlap} exceeds {self.overlap_bound}")


def vitali_cover(points: Sequence[Sequence[float]], r: float, compute_overlap: bool = True) -> CoverResult:
    """Greedy maximal family of points pairwise at least r/2 apart, scanned in input order.

    Args:
        points: Points of shape (n, d)
        r: The cover radius
        compute_overlap: Whether to count the largest number of r-balls about centres
            containing a single input point

    Returns:
        The cover
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if len(pts) == 0:
        raise ArgumentError("vitali_cover needs at least one point")
    if not r > 0:
        raise ArgumentError(f"cover radius must be positive, got {r}")
    half = r / 2.0
    tree = cKDTree(pts)
    covered = np.zeros(len(pts), dtype=bool)
    accepted: List[int] = []
    for i in range(len(pts)):
        if covered[i]:
            continue
        accepted.append(i)
        near = np.asarray(tree.query_ball_point(pts[i], half * _QUERY_INFLATE), dtype=np.int64)
        if len(near):
            near = near[np.linalg.norm(pts[near] - pts[i], axis=1) < half]
            covered[near] = True
        covered[i] = True

    centers = pts[accepted]
    max_overlap = 1
    if compute_overlap:
        counts = cKDTree(centers).query_ball_point(pts, r, return_length=True)
        max_overlap = int(np.max(counts))
    logger.debug("cover of %d points: %d centres, overlap %d", len(pts), len(accepted), max_overlap)
    return CoverResult(centers=centers, center_indices=accepted, r=r, max_overlap=max_overlap,
                       overlap_bound=overlap_bound(pts.shape[1]))


def read_points(path: str) -> np.ndarray:
    """Whitespace-separated point list, one point per line; '#' starts a comment."""
    rows: List[Tuple[float, ...]] = []
    with open(path, "r") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append(tuple(float(v) for v in line.split()))
            except ValueError as e:
                raise ParseError(str(e), lineno) from e
    if not rows:
        raise ArgumentError(f"{path} contains no points")
    if len({len(row) for row in rows}) != 1:
        raise ArgumentError(f"{path} mixes points of different dimension")
    return np.array(rows)
