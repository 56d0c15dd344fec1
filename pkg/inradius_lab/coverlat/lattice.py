"""Counting integer frequencies nearly resonant with lambda."""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import bisect

from inradius_lab.errors import ArgumentError, BudgetExceededError, ContractError, MarginShellError
from inradius_lab.symbols.base import Symbol, eval_symbol, estimate_ellipticity

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 0.5
DEFAULT_MARGIN = 2.0
DEFAULT_BUDGET = 10**8
R0_SEARCH_LIMIT = 1e6


class LatticeCount(BaseModel):
    """N_lambda = #{xi in Z^d : |P(xi) - lambda| <= |xi|^(m - 1 + delta)}."""

    model_config = ConfigDict(populate_by_name=True)

    lam: complex = Field(alias="lambda")
    delta: float = DEFAULT_DELTA
    enumeration_radius: float = Field(gt=0)
    r0: float
    c0: float
    margin: float
    count: int = Field(ge=0)
    witnesses: List[Tuple[int, ...]]


def _lower_order_size(sym: Symbol) -> float:
    return float(sum(abs(c) for c in sym.lower_order_part().values()))


def perturbation_radius(c0: float, c_low: float, m: int) -> float:
    """R0 with (c0/2) t^m >= C_low (1 + t)^(m-1) for all t >= R0 (R0 >= 1)."""
    def gap(t: float) -> float:
        return 0.5 * c0 * t**m - c_low * (1.0 + t) ** (m - 1)

    if c_low == 0.0 or gap(1.0) > 0:
        return 1.0
    if gap(R0_SEARCH_LIMIT) <= 0:
        raise ContractError(f"no perturbation radius below {R0_SEARCH_LIMIT:g}")
    return float(bisect(gap, 1.0, R0_SEARCH_LIMIT, xtol=1e-12, rtol=1e-12))


def enumeration_radius(c0: float, r0: float, lam: complex, m: int, delta: float) -> float:
    """R1 = max(R0, t*) with (c0/2) t*^m = |lambda| + t*^(m - 1 + delta).

    Beyond R1 no integer point can satisfy the counting condition.
    """
    modulus = abs(complex(lam))
    exponent = m - 1 + delta

    def gap(t: float) -> float:
        return 0.5 * c0 * t**m - modulus - t**exponent

    lo, hi = 1e-9, 1.0
    while gap(hi) <= 0:
        hi *= 2.0
    root = float(bisect(gap, lo, hi, xtol=1e-12, rtol=1e-12))
    return max(r0, root)


def near_resonant(values: np.ndarray, norms: np.ndarray, lam: complex, exponent: float) -> np.ndarray:
    """The counting condition, shared by the fast path and the brute-force oracle."""
    return np.abs(values - lam) <= norms**exponent


def _slab(sym: Symbol, lam: complex, first: int, extent: int, limit: float,
          exponent: float) -> Tuple[np.ndarray, np.ndarray]:
    rest = [np.arange(-extent, extent + 1)] * (sym.dim - 1)
    if rest:
        tail = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, sym.dim - 1)
        points = np.column_stack([np.full(len(tail), first), tail])
    else:
        points = np.array([[first]])
    norms = np.sqrt(np.sum(points * points, axis=1).astype(np.float64))
    inside = norms <= limit
    points, norms = points[inside], norms[inside]
    if not len(points):
        return points, norms
    hits = near_resonant(sym.evaluate(points.astype(np.complex128)), norms, lam, exponent)
    return points[hits], norms[hits]


def count_lattice(
    sym: Symbol,
    lam: complex,
    delta: float = DEFAULT_DELTA,
    margin: float = DEFAULT_MARGIN,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> LatticeCount:
    """Enumerate the near-resonant integer frequencies of ``sym`` at ``lam``.

    The box [-ceil(margin R1), ceil(margin R1)]^d is scanned in slabs of constant first
    coordinate; witnesses are reported in slab order.

    Args:
        sym: An elliptic symbol (lower-order terms allowed)
        lam: The spectral parameter
        delta: Exponent slack, 0 <= delta < 1
        margin: Enumeration radius as a multiple of R1; hits in (R1, margin R1] are errors
        budget: Largest number of box points allowed
        threads: Worker threads for the slabs

    Returns:
        The count and its witnesses

    Raises:
        BudgetExceededError: If the box holds more than ``budget`` points
        MarginShellError: If a hit lies beyond R1
    """
    if not 0.0 <= delta < 1.0:
        raise ArgumentError(f"delta must lie in [0, 1), got {delta}")
    if margin < 1.0:
        raise ArgumentError(f"margin must be at least 1, got {margin}")
    lam = complex(lam)
    c0 = sym.ell_const if sym.ell_const is not None else estimate_ellipticity(sym)
    m = sym.order
    r0 = perturbation_radius(c0, _lower_order_size(sym), m)
    r1 = enumeration_radius(c0, r0, lam, m, delta)
    extent = int(math.ceil(margin * r1))
    points = (2 * extent + 1) ** sym.dim
    if points > budget:
        raise BudgetExceededError(r1, points, budget)
    logger.debug("lattice count: R0=%.4g R1=%.4g, %d box points", r0, r1, points)

    exponent = m - 1 + delta
    limit = margin * r1
    firsts = range(-extent, extent + 1)

    def work(first: int) -> Tuple[np.ndarray, np.ndarray]:
        return _slab(sym, lam, first, extent, limit, exponent)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            slabs = list(pool.map(work, firsts))
    else:
        slabs = [work(first) for first in firsts]

    witnesses: List[Tuple[int, ...]] = []
    for hits, norms in slabs:
        shell = norms > r1
        if np.any(shell):
            raise MarginShellError(
                f"hit {tuple(int(v) for v in hits[shell][0])} with |xi| = {norms[shell][0]:.6g} "
                f"beyond R1 = {r1:.6g}"
            )
        witnesses.extend(tuple(int(v) for v in row) for row in hits)
    return LatticeCount(lam=lam, delta=delta, enumeration_radius=r1, r0=r0, c0=c0,
                        margin=margin, count=len(witnesses), witnesses=witnesses)


def brute_force_count(sym: Symbol, lam: complex, radius: float, delta: float = DEFAULT_DELTA) -> int:
    """Point-by-point count over the integer ball of the given radius."""
    lam = complex(lam)
    exponent = sym.order - 1 + delta
    extent = int(math.floor(radius))
    count = 0
    for xi in itertools.product(range(-extent, extent + 1), repeat=sym.dim):
        norm = math.sqrt(sum(v * v for v in xi))
        if norm > radius:
            continue
        value = eval_symbol(sym, xi)
        if near_resonant(np.array([value]), np.array([norm]), lam, exponent)[0]:
            count += 1
    return count


class UniformBound(BaseModel):
    """max N_mu over sampled mu on circles of the given radii."""

    max_count: int
    counts: List[int]
    mus: List[complex]
    stable: bool
    check_margin: float


def lattice_uniform_bound(
    sym: Symbol,
    samples: int = 64,
    radii: Sequence[float] = (1.0, 2.0),
    delta: float = DEFAULT_DELTA,
    margin: float = DEFAULT_MARGIN,
    check_margin: Optional[float] = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> UniformBound:
    """Sample mu evenly on each circle |mu| = radius and count at two enumeration margins.

    ``stable`` reports whether every count is unchanged when the margin doubles.
    """
    if samples < len(radii):
        raise ArgumentError(f"need at least {len(radii)} samples")
    check_margin = 2.0 * margin if check_margin is None else check_margin
    per_circle = samples // len(radii)
    mus = [
        complex(rho * np.exp(2j * np.pi * k / per_circle))
        for rho in radii
        for k in range(per_circle)
    ]
    counts, stable = [], True
    for mu in mus:
        base = count_lattice(sym, mu, delta=delta, margin=margin, budget=budget, threads=threads)
        wide = count_lattice(sym, mu, delta=delta, margin=check_margin, budget=budget, threads=threads)
        counts.append(base.count)
        stable = stable and wide.count == base.count
    if not stable:
        logger.warning("lattice counts changed when the enumeration margin grew")
    return UniformBound(max_count=max(counts), counts=counts, mus=mus, stable=stable,
                        check_margin=check_margin)
