"""Certified and measured inner radii of the nonvanishing set of a field."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy import ndimage

from inradius_lab.certify.lemmas import InradiusCertificate
from inradius_lab.errors import ArgumentError
from inradius_lab.fields.eigenfield import Eigenfunction, gradient_sup_bound, local_gradient_bound
from inradius_lab.geometry.domains import Domain
from inradius_lab.geometry.grid import Grid

logger = logging.getLogger(__name__)

DEFAULT_TAU_REL = 1e-6
REAL_FIELD_RTOL = 1e-9
CAP_LADDER = tuple(range(-4, 5))


class CertifiedInradius(BaseModel):
    """The certified part of a SigmaEstimate."""

    value: float = Field(ge=0)
    center: Tuple[float, ...]
    lipschitz: float = Field(ge=0)
    spacing: float
    certificate: Optional[InradiusCertificate] = None


class MeasuredInradius(BaseModel):
    """The measured part of a SigmaEstimate."""

    value: float = Field(ge=0)
    center: Tuple[float, ...]
    zero_threshold: float = Field(ge=0)
    spacing: float
    marked_cells: int = 0
    sign_change_cells: int = 0


class SigmaEstimate(BaseModel):
    """Certified lower bound and grid estimate of inrad(Sigma), Sigma = {psi != 0}."""

    certified_inradius: float = Field(ge=0)
    certified_center: Tuple[float, ...]
    measured_inradius: float = Field(ge=0)
    measured_center: Tuple[float, ...]
    zero_threshold: float = Field(ge=0)
    lipschitz: float = Field(ge=0)
    spacing: float
    certificate: Optional[InradiusCertificate] = None

    def consistent(self, slack_cells: float = 2.0) -> bool:
        return self.certified_inradius <= self.measured_inradius + slack_cells * self.spacing


def _cell_samples(ef: Eigenfunction, grid: Grid, samples: Optional[np.ndarray]) -> np.ndarray:
    if samples is None:
        return ef.evaluate(grid.cells)
    samples = np.asarray(samples)
    if samples.shape == grid.shape:
        return samples[grid.mask]
    if samples.shape != (grid.n_cells,):
        raise ArgumentError(f"samples of shape {samples.shape} do not match the grid")
    return samples


def certified_inradius(
    ef: Eigenfunction,
    dom: Domain,
    grid: Grid,
    samples: Optional[np.ndarray] = None,
    length_scale: Optional[float] = None,
) -> CertifiedInradius:
    """Largest certified nonvanishing ball centred at a grid cell.

    For each cell x and cap s <= dist(x, dom^c) the ball of radius
    min(|psi(x)| / 2L(x, s), s) avoids the zero set, where L(x, s) bounds |grad psi| on
    B(x, s). The caps are the boundary distance itself and length_scale * 2^k / 4 for
    k = -4..4; the global bound over ``dom`` is always one of the candidates.

    Args:
        ef: The field
        dom: The domain
        grid: Grid over ``dom``
        samples: psi at the grid cells (full lattice array or per-cell vector), if known
        length_scale: Base of the cap ladder, r_lambda by default

    Returns:
        The best certificate; value 0 and no certificate if psi vanishes at every cell
    """
    cells = grid.cells
    modulus = np.abs(_cell_samples(ef, grid, samples))
    dist = dom.distance_to_boundary(cells)
    global_L = gradient_sup_bound(ef, dom)

    if not np.any(modulus > 0):
        logger.warning("field vanishes at every grid cell; certified inradius is 0")
        return CertifiedInradius(value=0.0, center=tuple(cells[0]), lipschitz=global_L,
                                 spacing=grid.spacing)

    if length_scale is None and ef.lam != 0:
        length_scale = ef.scale.r_lambda

    def candidate(L: np.ndarray, cap: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(L > 0, modulus / (2.0 * L), np.inf)
        return np.where(modulus > 0, np.minimum(ratio, cap), 0.0)

    best_L = np.full(len(cells), global_L)
    best_cap = dist.copy()
    best = candidate(best_L, best_cap)

    caps = [dist]
    if length_scale is not None:
        caps.extend(np.minimum(length_scale * 2.0**k / 4.0, dist) for k in CAP_LADDER)
    for cap in caps:
        L = local_gradient_bound(ef, cells, cap)
        rho = candidate(L, cap)
        better = rho > best
        best = np.where(better, rho, best)
        best_L = np.where(better, L, best_L)
        best_cap = np.where(better, cap, best_cap)

    i = int(np.argmax(best))
    center = tuple(float(c) for c in cells[i])
    value = float(best[i])
    certificate = None
    if value > 0 and best_L[i] > 0:
        certificate = InradiusCertificate(center=center, radius=value, amplitude=float(modulus[i]),
                                          lipschitz=float(best_L[i]),
                                          boundary_dist=float(best_cap[i]))
    logger.debug("certified inradius %.6g at %s (L=%.4g)", value, center, float(best_L[i]))
    return CertifiedInradius(value=value, center=center, lipschitz=global_L,
                             spacing=grid.spacing, certificate=certificate)


def zero_distance(marked: np.ndarray, spacing: float) -> np.ndarray:
    """Exact Euclidean distance from every lattice cell to the nearest marked cell centre.

    Returns inf everywhere when nothing is marked.
    """
    if not marked.any():
        return np.full(marked.shape, np.inf)
    return ndimage.distance_transform_edt(~marked, sampling=spacing)


def real_part_up_to_phase(values: np.ndarray) -> Optional[np.ndarray]:
    """Re(conj(p) psi) when the samples are real up to one global phase p, else None.

    p is the phase of the largest sample; the imaginary part left after the rotation must
    stay below 1e-9 of the largest modulus.
    """
    values = np.asarray(values, dtype=np.complex128)
    if values.size == 0:
        return None
    k = int(np.argmax(np.abs(values)))
    peak = abs(values[k])
    if peak == 0:
        return None
    rotated = values * np.conj(values[k] / peak)
    if np.max(np.abs(rotated.imag)) > REAL_FIELD_RTOL * peak:
        return None
    return rotated.real


def sign_change_cells(real_values: np.ndarray, grid: Grid) -> np.ndarray:
    """Per-cell mask of cells with an axis neighbour of the opposite sign.

    A real continuous field vanishes on the segment between two such centres, so every
    flagged cell lies within one spacing of a zero.
    """
    full = grid.scatter(np.asarray(real_values, dtype=np.float64))
    flagged = np.zeros(grid.shape, dtype=bool)
    for axis in range(grid.dim):
        lo = [slice(None)] * grid.dim
        hi = [slice(None)] * grid.dim
        lo[axis] = slice(None, -1)
        hi[axis] = slice(1, None)
        lo, hi = tuple(lo), tuple(hi)
        change = (full[lo] * full[hi] < 0) & grid.mask[lo] & grid.mask[hi]
        flagged[lo] |= change
        flagged[hi] |= change
    return flagged[grid.mask]


def measured_inradius(
    ef: Eigenfunction,
    dom: Domain,
    grid: Grid,
    tau: Optional[float] = None,
    samples: Optional[np.ndarray] = None,
    tau_rel: float = DEFAULT_TAU_REL,
) -> MeasuredInradius:
    """Grid estimate of inrad(Sigma): cells with |psi| <= tau count as zeros.

    When the samples are real up to a global phase, the two cells on either side of every
    sign change count as zeros as well.

    Args:
        ef: The field
        dom: The domain
        grid: Grid over ``dom``
        tau: Absolute zero threshold; ``tau_rel`` times the largest sample by default
        samples: psi at the grid cells, if known
        tau_rel: Relative threshold used when ``tau`` is None

    Returns:
        The largest distance from a cell to the marked cells or the complement of ``dom``
    """
    if tau is not None and tau < 0:
        raise ArgumentError(f"zero threshold must be non-negative, got {tau}")
    values = _cell_samples(ef, grid, samples)
    modulus = np.abs(values)
    if tau is None:
        tau = tau_rel * float(modulus.max())
    cells = grid.cells
    marked_cells = modulus <= tau
    sign_changes = 0
    real = real_part_up_to_phase(values)
    if real is not None:
        flagged = sign_change_cells(real, grid)
        sign_changes = int(np.count_nonzero(flagged & ~marked_cells))
        marked_cells = marked_cells | flagged
    marked = grid.scatter(marked_cells, fill=False)
    to_zero = zero_distance(marked, grid.spacing)[grid.mask]
    reach = np.minimum(to_zero, dom.distance_to_boundary(cells))
    reach = np.where(marked_cells, 0.0, np.maximum(reach, 0.0))
    i = int(np.argmax(reach))
    value = float(reach[i])
    logger.debug("measured inradius %.6g with %d marked cells (%d from sign changes)", value,
                 int(marked_cells.sum()), sign_changes)
    return MeasuredInradius(value=value, center=tuple(float(c) for c in cells[i]),
                            zero_threshold=float(tau), spacing=grid.spacing,
                            marked_cells=int(marked_cells.sum()),
                            sign_change_cells=sign_changes)


def estimate_sigma(
    ef: Eigenfunction,
    dom: Domain,
    grid: Grid,
    tau: Optional[float] = None,
    tau_rel: float = DEFAULT_TAU_REL,
    samples: Optional[np.ndarray] = None,
) -> SigmaEstimate:
    """Both inradius estimates from a single sampling of psi."""
    if samples is None:
        samples = ef.evaluate(grid.cells)
    certified = certified_inradius(ef, dom, grid, samples=samples)
    measured = measured_inradius(ef, dom, grid, tau=tau, samples=samples, tau_rel=tau_rel)
    return SigmaEstimate(
        certified_inradius=certified.value,
        certified_center=certified.center,
        measured_inradius=measured.value,
        measured_center=measured.center,
        zero_threshold=measured.zero_threshold,
        lipschitz=certified.lipschitz,
        spacing=grid.spacing,
        certificate=certified.certificate,
    )


def certificate_from_point(
    ef: Eigenfunction, center: Sequence[float], boundary_dist: float, lipschitz: float
) -> InradiusCertificate:
    """Nonvanishing certificate at an arbitrary point with a caller-supplied bound."""
    amplitude = abs(ef.evaluate(np.asarray(center, dtype=np.float64)))
    return InradiusCertificate.build(center, amplitude, lipschitz, boundary_dist)
