"""Empirical estimate of the uniform gradient constant for normalized eigenfunctions."""

import logging
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from inradius_lab.errors import ArgumentError, ZeroFieldError
from inradius_lab.fields.eigenfield import Eigenfunction, RecipeTerm, synth
from inradius_lab.geometry.domains import Ball
from inradius_lab.geometry.grid import Grid
from inradius_lab.geometry.quadrature import l2_mass_sampled
from inradius_lab.harness.pipeline import GRADIENT_RADIUS, assembled_constant
from inradius_lab.symbols.base import Symbol

logger = logging.getLogger(__name__)

DEFAULT_CELLS = 64
PLATEAU_WARN = 1.1


class LipschitzEstimate(BaseModel):
    """Running maximum of sup_{B(0,3/4)} |grad u| over fields with ||u||_{L2(B(0,1))} = 1."""

    L_hat: float = Field(gt=0)
    samples: int
    history: List[float]
    plateau_ratio: float
    constant: float


def normalized_gradient_sup(u: Eigenfunction, cells: int = DEFAULT_CELLS) -> float:
    """Grid sup of |grad u| over B(0, 3/4) after scaling u to unit L2 norm on B(0, 1).

    Args:
        u: The field
        cells: Grid cells across the unit ball's diameter
    """
    d = u.dim
    unit = Ball(center=(0.0,) * d, radius=1.0)
    grid = Grid.for_domain(unit, 2.0 / cells)
    values = u.evaluate(grid.cells)
    mass = l2_mass_sampled(grid.scatter(np.abs(values) ** 2), grid, unit)
    if mass == 0.0:
        raise ZeroFieldError("field vanishes on the unit ball")
    inner = grid.region_mask(Ball(center=(0.0,) * d, radius=GRADIENT_RADIUS))
    points = grid.centers_of(grid.indices(inner))
    gradient = u.gradient(points)
    return float(np.max(np.linalg.norm(gradient, axis=1))) / math.sqrt(mass)


def random_recipe(rng: np.random.Generator, sym: Symbol, terms: int = 4) -> List[RecipeTerm]:
    """Real unit directions, uniform root indices and complex normal amplitudes."""
    recipe = []
    for _ in range(terms):
        v = rng.standard_normal(sym.dim)
        v /= np.linalg.norm(v)
        amplitude = complex(rng.standard_normal(), rng.standard_normal())
        recipe.append(RecipeTerm(direction=tuple(complex(x) for x in v),
                                 root_index=int(rng.integers(sym.order)), amplitude=amplitude))
    return recipe


def random_spectral_parameter(rng: np.random.Generator, lo: float = 1.0, hi: float = 2.0) -> complex:
    """mu with lo <= |mu| <= hi and uniform phase."""
    return complex(rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


def estimate_uniform_lipschitz(
    sym: Symbol,
    samples: int,
    rng: Optional[np.random.Generator] = None,
    terms: int = 4,
    cells: int = DEFAULT_CELLS,
) -> LipschitzEstimate:
    """Sample (mu, recipe) pairs with 1 <= |mu| <= 2 and track the largest normalized gradient.

    ``plateau_ratio`` is the maximum over the second half of the samples divided by the
    maximum over the first half; values near 1 indicate a plateau.

    Raises:
        ArgumentError: If samples < 1
    """
    if samples < 1:
        raise ArgumentError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(0) if rng is None else rng
    values = []
    for _ in range(samples):
        mu = random_spectral_parameter(rng)
        u = synth(sym, mu, random_recipe(rng, sym, terms))
        values.append(normalized_gradient_sup(u, cells))
    history = list(np.maximum.accumulate(values))
    half = samples // 2
    if half:
        plateau = max(values[half:]) / max(values[:half])
    else:
        plateau = 1.0
    if plateau > PLATEAU_WARN:
        logger.warning("gradient estimate still rising: second half / first half = %.3f", plateau)
    L_hat = float(history[-1])
    return LipschitzEstimate(L_hat=L_hat, samples=samples, history=[float(v) for v in history],
                             plateau_ratio=float(plateau), constant=assembled_constant(L_hat, sym.dim))
