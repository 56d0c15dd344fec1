"""Recipe families: how a sweep turns lambda into plane-wave recipe terms."""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from inradius_lab.errors import ArgumentError
from inradius_lab.fields.eigenfield import RecipeTerm, solve_frequencies
from inradius_lab.symbols.base import Symbol

logger = logging.getLogger(__name__)

RecipeFamily = Callable[..., List[RecipeTerm]]

# Registry of recipe families
_family_registry: Dict[str, RecipeFamily] = {}


def register_recipe_family(family: RecipeFamily) -> RecipeFamily:
    """Register a recipe family under its function name.

    Args:
        family: Callable (sym, lam, recipe, **params) -> list of RecipeTerm

    Returns:
        The family, unchanged
    """
    _family_registry[family.__name__] = family
    return family


def get_recipe_family(name: str) -> RecipeFamily:
    """Look up a recipe family by name.

    Raises:
        ArgumentError: If no family of that name is registered
    """
    if name not in _family_registry:
        raise ArgumentError(
            f"unknown recipe family '{name}' (known: {', '.join(sorted(_family_registry))})"
        )
    return _family_registry[name]


def available_recipe_families() -> List[str]:
    return sorted(_family_registry)


def default_recipe(dim: int) -> List[RecipeTerm]:
    """Axis directions and diagonals with assorted complex amplitudes, root 0 throughout."""
    amplitudes = [1.0, 0.5j, -0.75, 0.3 + 0.2j, 0.6 - 0.4j, -0.2j]
    directions: List[tuple] = [tuple(float(i == j) for i in range(dim)) for j in range(dim)]
    for j in range(1, dim):
        for sign in (1.0, -1.0):
            directions.append(tuple(1.0 if i == 0 else (sign if i == j else 0.0) for i in range(dim)))
    if dim == 1:
        directions.append((-1.0,))
    return [
        RecipeTerm(direction=tuple(complex(v) for v in direction), root_index=0,
                   amplitude=amplitudes[k % len(amplitudes)])
        for k, direction in enumerate(directions)
    ]


@register_recipe_family
def fixed(sym: Symbol, lam: complex, recipe: Optional[Sequence[RecipeTerm]] = None, **params) -> List[RecipeTerm]:
    """The same recipe at every lambda; frequencies are re-solved per lambda by synth."""
    return list(recipe) if recipe else default_recipe(sym.dim)


def decay_steepness(lam: complex, base_modulus: float, steepness: float, growth: float) -> float:
    """kappa r_lambda = steepness + growth ln(|lambda| / |lambda_0|)."""
    return steepness + growth * math.log(abs(complex(lam)) / base_modulus)


@register_recipe_family
def boundary_layer(
    sym: Symbol,
    lam: complex,
    recipe: Optional[Sequence[RecipeTerm]] = None,
    axis: int = 0,
    steepness: float = 1.0,
    growth: float = 0.5,
    base_modulus: Optional[float] = None,
    **params,
) -> List[RecipeTerm]:
    """Two terms decaying away from the face x_axis = min at rate kappa.

    The directions are i s e_axis +- e_next with s = c / sqrt(1 + c^2), c = kappa r_lambda,
    which for the Laplacian gives |psi| proportional to exp(-kappa x_axis). The root of
    each term is the one whose frequency decays into the domain.
    """
    d = sym.dim
    if d < 2:
        raise ArgumentError("the boundary-layer family needs d >= 2")
    if not 0 <= axis < d:
        raise ArgumentError(f"layer axis {axis} outside [0, {d})")
    base = abs(complex(lam)) if base_modulus is None else base_modulus
    c = max(0.0, decay_steepness(lam, base, steepness, growth))
    s = c / math.sqrt(1.0 + c * c)
    other = (axis + 1) % d
    terms = []
    for sign, amplitude in ((1.0, 1.0 + 0j), (-1.0, 0.5j)):
        v = np.zeros(d, dtype=np.complex128)
        v[axis] = 1j * s
        v[other] = sign
        roots = solve_frequencies(sym, lam, v)
        # stored frequency is -xi; |psi| = exp(-x . Im f) decays along the axis for max Im f
        k = int(np.argmax([(-xi).imag[axis] for xi in roots]))
        terms.append(RecipeTerm(direction=tuple(complex(x) for x in v), root_index=k,
                                amplitude=amplitude))
    logger.debug("boundary layer at |lambda|=%.4g: kappa r = %.4g", abs(complex(lam)), c)
    return terms
