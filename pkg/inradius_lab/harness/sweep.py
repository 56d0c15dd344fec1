"""Lambda sweeps and the boundary-concentration monitor."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from inradius_lab.core import SweepConfig
from inradius_lab.errors import InradiusLabError
from inradius_lab.fields.eigenfield import SpectralScale, synth
from inradius_lab.harness.recipes import get_recipe_family
from inradius_lab.harness.verify import SweepRecord, verify_theorem

logger = logging.getLogger(__name__)

_MONITOR_RTOL = 1e-12


class CorollaryCheck(BaseModel):
    """sqrt(M/N) <= (measured + 2h) / (c_min r_lambda) for one record."""

    lam: complex
    mass_ratio: float
    bound: float
    holds: bool


class SweepResult(BaseModel):
    name: str
    records: List[SweepRecord]
    c_min: Optional[float] = None
    min_q: Optional[float] = None
    monitor: List[CorollaryCheck] = []

    @property
    def failures(self) -> List[SweepRecord]:
        return [record for record in self.records if not record.ok]


def sweep_record(config: SweepConfig, lam: complex, index: int) -> SweepRecord:
    """One record; errors are caught and recorded in ``status``."""
    sym = config.operator
    scale = SpectralScale.from_lambda(lam, sym.order)
    h = config.spacing_for(scale.r_lambda)
    try:
        family = get_recipe_family(config.recipe_family)
        recipe = family(sym, lam, **config.family_params())
        ef = synth(sym, lam, recipe)
        grid = config.grid_for(scale.r_lambda)
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, index]))
        record = verify_theorem(ef, config.domain, grid, tau_rel=config.tau_rel,
                                dense_samples=config.dense_samples, rng=rng)
        logger.info("lambda=%s: Q=%s, boundary fraction %.4g", lam, record.Q,
                    record.boundary_mass_fraction)
        return record
    except InradiusLabError as e:
        logger.warning("lambda=%s failed: %s", lam, e)
        return SweepRecord.failed(lam, scale.r_lambda, h, str(e))


def corollary_monitor(records: List[SweepRecord]) -> Tuple[Optional[float], List[CorollaryCheck]]:
    """c_min over the sweep and the contrapositive check on every successful record.

    The measured inradius carries a 2h grid-resolution slack in the bound.
    """
    constants = [r.constructive_constant for r in records if r.ok and r.constructive_constant]
    if not constants:
        return None, []
    c_min = min(constants)
    checks = []
    for record in records:
        if not record.ok or record.mass_ratio is None:
            continue
        bound = (record.measured_inradius + 2.0 * record.h) / (c_min * record.r_lambda)
        holds = record.mass_ratio <= bound * (1.0 + _MONITOR_RTOL)
        if not holds:
            logger.warning("monitor fails at lambda=%s: %.6g > %.6g", record.lam,
                           record.mass_ratio, bound)
        checks.append(CorollaryCheck(lam=record.lam, mass_ratio=record.mass_ratio,
                                     bound=bound, holds=holds))
    return c_min, checks


def sweep(config: SweepConfig) -> SweepResult:
    """Run ``verify_theorem`` for every lambda of the config, in lambda order.

    Records are computed on ``config.threads`` workers; each uses its own random stream
    derived from (seed, index), so the output does not depend on the thread count.
    """
    lams = config.lambdas()
    logger.info("sweep '%s': %d values of lambda", config.name, len(lams))
    _ = config.operator

    def work(item: Tuple[int, complex]) -> SweepRecord:
        index, lam = item
        return sweep_record(config, lam, index)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(work, enumerate(lams)))
    else:
        records = [work(item) for item in enumerate(lams)]

    c_min, checks = corollary_monitor(records)
    qs = [r.Q for r in records if r.ok and r.Q is not None]
    result = SweepResult(name=config.name, records=records, c_min=c_min,
                         min_q=min(qs) if qs else None, monitor=checks)
    if result.failures:
        logger.warning("%d of %d records failed", len(result.failures), len(records))
    return result
