"""Nonvanishing balls from Lipschitz control, amplitude from L2 mass."""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from inradius_lab.errors import ArgumentError, CertificationError
from inradius_lab.fields.eigenfield import Eigenfunction
from inradius_lab.geometry.domains import ball_volume

logger = logging.getLogger(__name__)

PROBE_SHRINK = 1.0 - 1e-9
RESAMPLE_RTOL = 1e-6


def lipschitz_ball(eta: float, L: float, boundary_dist: float) -> float:
    """rho = min(eta / 2L, dist(x0, Omega^c)).

    Any G with |G(x0)| >= eta and Lipschitz constant L has |G| >= eta - L rho >= eta/2
    on B(x0, rho).
    """
    if not (eta > 0 and L > 0 and boundary_dist > 0):
        raise ArgumentError(f"lipschitz_ball needs positive inputs, got {eta}, {L}, {boundary_dist}")
    return min(eta / (2.0 * L), boundary_dist)


def sup_lower_bound(mass: float, ball_radius: float, d: int, volume: Optional[float] = None) -> float:
    """||u||_{L2(B(0,R))} / vol(B(0,R))^(1/2), a lower bound for sup |u| on the ball.

    Args:
        mass: The L2 norm (not its square) of u on the ball
        ball_radius: R
        d: Dimension
        volume: Overrides the Euclidean volume, e.g. with the quadrature volume of the
            cells used to compute ``mass``

    Returns:
        The lower bound
    """
    if mass < 0 or ball_radius <= 0:
        raise ArgumentError("sup_lower_bound needs mass >= 0 and R > 0")
    vol = ball_volume(d, ball_radius) if volume is None else volume
    return mass / math.sqrt(vol)


class InradiusCertificate(BaseModel):
    """B(center, radius) avoids the zero set: |psi(center)| = amplitude, Lipschitz
    constant ``lipschitz`` on the ball of radius ``boundary_dist`` about the centre."""

    center: Tuple[float, ...]
    radius: float = Field(gt=0)
    amplitude: float = Field(gt=0)
    lipschitz: float = Field(gt=0)
    boundary_dist: float = Field(gt=0)

    @classmethod
    def build(cls, center, amplitude: float, lipschitz: float, boundary_dist: float) -> "InradiusCertificate":
        radius = lipschitz_ball(amplitude, lipschitz, boundary_dist)
        return cls(center=tuple(float(c) for c in center), radius=radius, amplitude=amplitude,
                   lipschitz=lipschitz, boundary_dist=boundary_dist)

    def probe_points(self) -> np.ndarray:
        """The centre and the 2d axis extremes at radius (1 - 1e-9)."""
        c = np.asarray(self.center)
        offsets = np.vstack([np.zeros(len(c)), np.eye(len(c)), -np.eye(len(c))])
        return c + offsets * self.radius * PROBE_SHRINK

    def verify(self, ef: Eigenfunction) -> float:
        """Spot-check |psi| >= amplitude/2 at the probe points; returns min |psi|."""
        values = np.abs(ef.evaluate(self.probe_points()))
        floor = self.amplitude / 2.0
        if values.min() < floor:
            raise CertificationError(
                f"probe value {values.min():.6g} below the certified floor {floor:.6g}"
            )
        return float(values.min())


def sample_ball(rng: np.random.Generator, center, radius: float, n: int) -> np.ndarray:
    """n points uniformly distributed in B(center, radius)."""
    center = np.asarray(center, dtype=np.float64)
    d = len(center)
    directions = rng.standard_normal((n, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(0.0, 1.0, size=n) ** (1.0 / d)
    return center + directions * radii[:, None]


def resample_certificate(
    ef: Eigenfunction,
    certificate: InradiusCertificate,
    n: int = 10_000,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Dense re-sampling of |psi| inside the certified ball.

    Returns:
        The smallest sampled |psi|

    Raises:
        CertificationError: If any sample falls below amplitude/2 (1 - 1e-6)
    """
    return check_nonvanishing(ef, certificate.center, certificate.radius,
                              certificate.amplitude / 2.0, n=n, rng=rng)


def check_nonvanishing(
    ef: Eigenfunction,
    center,
    radius: float,
    floor: float,
    n: int = 10_000,
    rng: Optional[np.random.Generator] = None,
) -> float:
    """Sample |psi| at n random points of B(center, radius) against floor (1 - 1e-6)."""
    rng = np.random.default_rng(0) if rng is None else rng
    points = sample_ball(rng, center, radius, n)
    values = np.abs(ef.evaluate(points))
    floor = floor * (1.0 - RESAMPLE_RTOL)
    worst = int(np.argmin(values))
    if values[worst] < floor:
        raise CertificationError(
            f"|psi| = {values[worst]:.6g} at {tuple(points[worst])} inside a ball certified "
            f"above {floor:.6g}"
        )
    return float(values[worst])
