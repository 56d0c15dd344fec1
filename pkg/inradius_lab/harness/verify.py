"""Checks for a single field: the inradius lower bound and its localized form."""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from inradius_lab.certify.inradius import DEFAULT_TAU_REL, estimate_sigma
from inradius_lab.errors import HypothesisViolationError, OrderingViolationError
from inradius_lab.fields.eigenfield import Eigenfunction
from inradius_lab.geometry.domains import Domain
from inradius_lab.geometry.grid import Grid
from inradius_lab.geometry.quadrature import l2_mass_sampled, mass_report
from inradius_lab.harness.pipeline import DENSE_SAMPLES, run_proof_pipeline

logger = logging.getLogger(__name__)

HYPOTHESIS_RTOL = 1e-12
_ORDER_RTOL = 1e-9


class SweepRecord(BaseModel):
    """One lambda of a sweep: both sides of the lower bound and the quality ratio Q.

    Numeric fields are None when the record failed (``status`` starts with "error").
    """

    model_config = ConfigDict(populate_by_name=True)

    lam: complex = Field(alias="lambda")
    r_lambda: float
    h: float
    status: str = "ok"
    region: str = ""
    mass_ratio: Optional[float] = None
    certified_inradius: Optional[float] = None
    measured_inradius: Optional[float] = None
    constructive_inradius: Optional[float] = None
    Q: Optional[float] = None
    boundary_mass_fraction: Optional[float] = None
    constructive_constant: Optional[float] = None
    certified_center: Optional[Tuple[float, ...]] = None
    measured_center: Optional[Tuple[float, ...]] = None
    mu: Optional[complex] = None

    @property
    def ok(self) -> bool:
        return not self.status.startswith("error")

    @classmethod
    def failed(cls, lam: complex, r_lambda: float, h: float, message: str) -> "SweepRecord":
        return cls(lam=lam, r_lambda=r_lambda, h=h, status=f"error: {message}")


def check_ordering(constructive: float, certified: float, measured: float, h: float) -> None:
    """constructive <= certified + 2h <= measured + 4h, up to rounding."""
    slack = _ORDER_RTOL * max(1.0, measured)
    if constructive > certified + 2.0 * h + slack:
        raise OrderingViolationError(
            f"constructive {constructive:.6g} exceeds certified {certified:.6g} + 2h"
        )
    if certified + 2.0 * h > measured + 4.0 * h + slack:
        raise OrderingViolationError(
            f"certified {certified:.6g} exceeds measured {measured:.6g} + 2h"
        )


def verify_theorem(
    ef: Eigenfunction,
    dom: Domain,
    grid: Grid,
    tau_rel: float = DEFAULT_TAU_REL,
    dense_samples: int = DENSE_SAMPLES,
    rng: Optional[np.random.Generator] = None,
) -> SweepRecord:
    """Measure inrad of the nonvanishing set against r_lambda sqrt(M/N) on one field.

    All measurements use ``ef.canonical(dom)``, so c psi and psi give the same record.

    Raises:
        ZeroFieldError: If the field has no mass on ``dom``
        OrderingViolationError: If constructive <= certified + 2h <= measured + 4h fails
    """
    field = ef.canonical(dom)
    r = field.scale.r_lambda
    samples = field.evaluate(grid.cells)
    abs2 = grid.scatter(np.abs(samples) ** 2)
    mass = mass_report(field, dom, r, grid, abs2=abs2)
    sigma = estimate_sigma(field, dom, grid, tau_rel=tau_rel, samples=samples)
    run = run_proof_pipeline(field, dom, grid, dense_samples=dense_samples, rng=rng, abs2=abs2)

    h = grid.spacing
    check_ordering(run.constructive_inradius, sigma.certified_inradius, sigma.measured_inradius, h)
    q = sigma.certified_inradius / (r * mass.ratio_sqrt) if mass.ratio_sqrt > 0 else None
    if q is not None and not q > 0:
        raise OrderingViolationError("Q vanishes although the interior carries mass")
    return SweepRecord(
        lam=field.lam,
        r_lambda=r,
        h=h,
        region=dom.to_spec(),
        mass_ratio=mass.ratio_sqrt,
        certified_inradius=sigma.certified_inradius,
        measured_inradius=sigma.measured_inradius,
        constructive_inradius=run.constructive_inradius,
        Q=q,
        boundary_mass_fraction=mass.boundary_fraction,
        constructive_constant=run.constructive_constant,
        certified_center=sigma.certified_center,
        measured_center=sigma.measured_center,
        mu=run.mu,
    )


def verify_localized(
    ef: Eigenfunction,
    dom: Domain,
    A: Domain,
    grid: Grid,
    tau_rel: float = DEFAULT_TAU_REL,
    dense_samples: int = DENSE_SAMPLES,
    rng: Optional[np.random.Generator] = None,
) -> SweepRecord:
    """verify_theorem with the domain replaced by an open subset A.

    Raises:
        HypothesisViolationError: If A is not inside ``dom`` or the field has (numerically)
            no mass on A
    """
    if not dom.contains_domain(A):
        raise HypothesisViolationError(f"{A.to_spec()} is not contained in {dom.to_spec()}")
    sub = grid.restrict(A)
    if sub.n_cells == 0:
        raise HypothesisViolationError(f"no grid cell lies in {A.to_spec()}")
    abs2 = grid.scatter(np.abs(ef.canonical(dom).evaluate(grid.cells)) ** 2)
    total = l2_mass_sampled(abs2, grid, dom)
    local = l2_mass_sampled(abs2, sub, A)
    if local == 0.0 or local <= HYPOTHESIS_RTOL * total:
        raise HypothesisViolationError(
            f"the field has no mass on {A.to_spec()} ({local:.3e} of {total:.3e})"
        )
    return verify_theorem(ef, A, sub, tau_rel=tau_rel, dense_samples=dense_samples, rng=rng)
