"""The constructive lower-bound argument, executed step by step on one field."""

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from inradius_lab.certify.lemmas import (
    InradiusCertificate,
    check_nonvanishing,
    resample_certificate,
    sup_lower_bound,
)
from inradius_lab.coverlat.cover import overlap_bound
from inradius_lab.coverlat.good_ball import GoodBall, ball_offsets, good_ball
from inradius_lab.errors import ArgumentError, ContractError, ResidualError
from inradius_lab.fields.eigenfield import Eigenfunction, gradient_sup_bound
from inradius_lab.geometry.domains import Ball, Domain, ball_volume
from inradius_lab.geometry.grid import Grid
from inradius_lab.geometry.quadrature import MassReport, mass_report, sample_abs2

logger = logging.getLogger(__name__)

DENSE_SAMPLES = 10_000
RHO_CAP = 0.25
GRADIENT_RADIUS = 0.75
_RESIDUAL_PROBES = 256
_CHECK_RTOL = 1e-9


def min_linear_lower_bound(a: float, b: float, t: float) -> float:
    """min(a, b) t, a lower bound for min(a t, b) when 0 <= t <= 1."""
    if not 0.0 <= t <= 1.0:
        raise ArgumentError(f"t must lie in [0, 1], got {t}")
    return min(a, b) * t


def assembled_constant(L: float, d: int, half_ball_volume: Optional[float] = None) -> float:
    """min{(2 L vol(B(0,1/2))^(1/2) (2 N_d)^(1/2))^-1, 1/4}.

    With this c, rho0 >= c sqrt(M/N) follows from the good-ball guarantee and the
    amplitude bound.
    """
    if not L > 0:
        return RHO_CAP
    vol = ball_volume(d, 0.5) if half_ball_volume is None else half_ball_volume
    first = 1.0 / (2.0 * L * math.sqrt(vol) * math.sqrt(2.0 * overlap_bound(d)))
    return min(first, RHO_CAP)


class ProofRun(BaseModel):
    """Every intermediate quantity of one run; ``status`` is "trivial" when M = 0."""

    status: Literal["ok", "trivial"]
    r: float = Field(gt=0)
    mass: MassReport
    good_ball: Optional[GoodBall] = None
    rescaled: Optional[Eigenfunction] = None
    mu: complex
    amplitude_point: Optional[Tuple[float, ...]] = None
    amplitude: Optional[float] = None
    amp_bound: Optional[float] = None
    amp_bound_euclidean: Optional[float] = None
    half_ball_volume: Optional[float] = None
    L_emp: Optional[float] = None
    L_grid: Optional[float] = None
    rho0: Optional[float] = None
    certificate: Optional[InradiusCertificate] = None
    center: Optional[Tuple[float, ...]] = None
    constructive_inradius: float = 0.0
    constructive_constant: Optional[float] = None
    min_sampled: Optional[float] = None


def _check_residual(u: Eigenfunction, points: np.ndarray) -> None:
    if len(points) > _RESIDUAL_PROBES:
        points = points[np.linspace(0, len(points) - 1, _RESIDUAL_PROBES).astype(np.int64)]
    errors = u.residual(points)
    tolerance = u.residual_tolerance(points)
    worst = int(np.argmax(errors - tolerance))
    if errors[worst] > tolerance[worst]:
        raise ResidualError(
            f"rescaled field violates H u = mu u: residual {errors[worst]:.3e} > {tolerance[worst]:.3e}"
        )


def run_proof_pipeline(
    ef: Eigenfunction,
    dom: Domain,
    grid: Grid,
    dense_samples: int = DENSE_SAMPLES,
    rng: Optional[np.random.Generator] = None,
    abs2: Optional[np.ndarray] = None,
) -> ProofRun:
    """Run the four steps of the lower-bound argument.

    1. good ball B(x0, r) for f = |psi|^2 over E = dom_{-r}, r = r_lambda
    2. u(y) = r^(d/2) psi(x0 + r y) / ||psi||_{L2(B(x0, r))}, checked against H u = mu u
    3. y0 = argmax of |u| over the lattice points of B(0, 1/2), checked against the
       L2 amplitude bound with the lattice volume of the half ball
    4. rho0 = min(|u(y0)| / 2 L, 1/4), L the analytic gradient bound over B(0, 3/4);
       the ball B(x0 + r y0, r rho0) is re-sampled densely

    Args:
        ef: The field (homogeneous symbol)
        dom: The domain
        grid: Grid over ``dom``
        dense_samples: Points used to re-sample the final ball
        rng: Random source for the re-sampling
        abs2: |psi|^2 on the full lattice, if already sampled

    Returns:
        The run

    Raises:
        ResidualError: If the rescaled field fails its eigenequation
        CertificationError: If a re-sampled value falls below the certified floor
        ContractError: If any intermediate inequality fails
    """
    rng = np.random.default_rng(0) if rng is None else rng
    scale = ef.scale
    r = scale.r_lambda
    d = ef.dim
    if abs2 is None:
        abs2 = sample_abs2(ef, grid)
    mass = mass_report(ef, dom, r, grid, abs2=abs2)

    ball = good_ball(abs2, grid, dom.r_interior(r), r)
    if ball is None:
        logger.warning("no mass at depth r=%.4g: the lower bound is trivial", r)
        return ProofRun(status="trivial", r=r, mass=mass, mu=scale.mu)
    x0 = np.asarray(ball.center)
    if dom.distance_to_boundary(x0)[0] < r * (1.0 - _CHECK_RTOL):
        raise ContractError(f"B({tuple(x0)}, {r}) is not contained in the domain")

    u = ef.rescaled(x0, r, math.sqrt(ball.outer_mass), lam=scale.mu)
    if abs(abs(u.lam) - 1.0) > 1e-15:
        raise ContractError(f"|mu| = {abs(u.lam)!r} differs from 1")

    step = grid.spacing / r
    offsets = ball_offsets(d, 0.5 / step)
    ys = offsets * step
    _check_residual(u, ys)
    modulus = np.abs(u.evaluate(ys))
    k = int(np.argmax(modulus))
    y0 = ys[k]
    amplitude = float(modulus[k])
    half_volume = len(ys) * step**d
    half_mass = math.sqrt(step**d * float(np.sum(modulus**2)))
    amp_bound = sup_lower_bound(half_mass, 0.5, d, volume=half_volume)
    if amplitude < amp_bound * (1.0 - _CHECK_RTOL):
        raise ContractError(f"|u(y0)| = {amplitude:.6g} below the L2 bound {amp_bound:.6g}")

    L_emp = gradient_sup_bound(u, Ball(center=(0.0,) * d, radius=GRADIENT_RADIUS))
    grid_points = ball_offsets(d, GRADIENT_RADIUS / step) * step
    L_grid = float(np.max(np.linalg.norm(u.gradient(grid_points), axis=1)))
    if L_emp > 0:
        certificate = InradiusCertificate.build(tuple(y0), amplitude, L_emp, RHO_CAP)
        rho0 = certificate.radius
        resample_certificate(u, certificate, n=dense_samples, rng=rng)
    else:
        certificate = None
        rho0 = RHO_CAP

    ratio = mass.ratio_sqrt
    guaranteed = min_linear_lower_bound(assembled_constant(L_emp, d, half_volume), RHO_CAP, ratio)
    if rho0 < guaranteed * (1.0 - _CHECK_RTOL):
        raise ContractError(f"rho0 = {rho0:.6g} below the assembled bound {guaranteed:.6g}")

    center = x0 + r * y0
    constructive = r * rho0
    floor = abs(ef.evaluate(center)) / 2.0
    min_sampled = check_nonvanishing(ef, center, constructive, floor, n=dense_samples, rng=rng)
    constant = constructive / (r * ratio) if ratio > 0 else None
    logger.debug("proof run: x0=%s y0=%s rho0=%.4g L=%.4g", tuple(x0), tuple(y0), rho0, L_emp)
    return ProofRun(
        status="ok",
        r=r,
        mass=mass,
        good_ball=ball,
        rescaled=u,
        mu=u.lam,
        amplitude_point=tuple(float(v) for v in y0),
        amplitude=amplitude,
        amp_bound=amp_bound,
        amp_bound_euclidean=sup_lower_bound(half_mass, 0.5, d),
        half_ball_volume=half_volume,
        L_emp=L_emp,
        L_grid=L_grid,
        rho0=rho0,
        certificate=certificate,
        center=tuple(float(v) for v in center),
        constructive_inradius=constructive,
        constructive_constant=constant,
        min_sampled=min_sampled,
    )
