"""Named symbols and random elliptic symbol generators."""

import inspect
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from inradius_lab.errors import ArgumentError, DimensionMismatchError
from inradius_lab.symbols.base import MultiIndex, Symbol

SymbolFactory = Callable[..., Symbol]

# Registry of symbol factories
_symbol_registry: Dict[str, SymbolFactory] = {}


def register_symbol(factory: SymbolFactory) -> SymbolFactory:
    """Register a symbol factory under its function name.

    Args:
        factory: Callable returning a Symbol

    Returns:
        The factory
    """
    _symbol_registry[factory.__name__] = factory
    return factory


def get_symbol(name: str, **params) -> Symbol:
    """Build a registered symbol by name.

    Args:
        name: Registered factory name, e.g. ``"laplacian"``
        **params: Factory parameters such as ``dim``

    Returns:
        A new Symbol

    Raises:
        ValueError: If the name is not registered
    """
    if name not in _symbol_registry:
        raise ArgumentError(f"Unknown symbol: {name} (known: {', '.join(available_symbols())})")
    return _symbol_registry[name](**params)


def available_symbols() -> list:
    return sorted(_symbol_registry)


def named_symbol(name: str, dim: int) -> Symbol:
    """A registered symbol in dimension ``dim``.

    Factories without a ``dim`` parameter build a fixed dimension, which must match.
    """
    factory = _symbol_registry.get(name)
    accepts_dim = factory is not None and "dim" in inspect.signature(factory).parameters
    sym = get_symbol(name, dim=dim) if accepts_dim else get_symbol(name)
    if sym.dim != dim:
        raise DimensionMismatchError(f"symbol '{name}' has dimension {sym.dim}, not {dim}")
    return sym


def _unit(dim: int, axis: int, power: int) -> tuple:
    entries = [0] * dim
    entries[axis] = power
    return tuple(entries)


@register_symbol
def laplacian(dim: int = 2) -> Symbol:
    """P(xi) = |xi|^2."""
    coeffs = {_unit(dim, j, 2): 1.0 + 0j for j in range(dim)}
    return Symbol(dim=dim, order=2, coeffs=coeffs)


@register_symbol
def anisotropic(dim: int = 2, weights: Optional[Sequence[float]] = None) -> Symbol:
    """P(xi) = sum_j w_j xi_j^2 with positive weights (default 1, 2, 3, ...)."""
    if weights is None:
        weights = [float(j + 1) for j in range(dim)]
    if len(weights) != dim or any(w <= 0 for w in weights):
        raise ArgumentError(f"need {dim} positive weights, got {weights}")
    coeffs = {_unit(dim, j, 2): complex(w) for j, w in enumerate(weights)}
    return Symbol(dim=dim, order=2, coeffs=coeffs)


@register_symbol
def bilaplacian(dim: int = 2) -> Symbol:
    """P(xi) = |xi|^4, expanded over multi-indices."""
    coeffs: Dict[tuple, complex] = {}
    for i in range(dim):
        for j in range(dim):
            alpha = [0] * dim
            alpha[i] += 2
            alpha[j] += 2
            key = tuple(alpha)
            coeffs[key] = coeffs.get(key, 0j) + 1.0
    return Symbol(dim=dim, order=4, coeffs=coeffs)


@register_symbol
def complex_anisotropic() -> Symbol:
    """P(xi) = xi_1^2 + i xi_2^2, elliptic with c_ell = 1/sqrt(2)."""
    return Symbol(dim=2, order=2, coeffs={(2, 0): 1.0 + 0j, (0, 2): 1j})


@register_symbol
def cauchy_riemann() -> Symbol:
    """P(xi) = xi_1 + i xi_2, a first-order complex elliptic symbol with |P| = |xi|."""
    return Symbol(dim=2, order=1, coeffs={(1, 0): 1.0 + 0j, (0, 1): 1j})


@register_symbol
def perturbed_laplacian(dim: int = 2) -> Symbol:
    """|xi|^2 + (1 + i) xi_1 + 2, a non-homogeneous symbol with lower-order terms."""
    coeffs = {_unit(dim, j, 2): 1.0 + 0j for j in range(dim)}
    coeffs[_unit(dim, 0, 1)] = 1.0 + 1.0j
    coeffs[MultiIndex.zero(dim).entries] = 2.0 + 0j
    return Symbol(dim=dim, order=2, coeffs=coeffs)


def random_elliptic_symbol(rng: np.random.Generator, dim: int, order: int) -> Symbol:
    """A random homogeneous elliptic symbol with complex coefficients.

    d=1: c xi^m. d=2: c * prod_j (xi_1 + z_j xi_2) with |Im z_j| >= 0.3, which has no
    real zero off the origin. d=3: c * (sum_j w_j xi_j^2)^(m/2), even m only.

    Args:
        rng: Random generator
        dim: Dimension, 1 to 3
        order: Order m >= 1

    Returns:
        A homogeneous Symbol
    """
    scale = complex(rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
    if dim == 1:
        return Symbol(dim=1, order=order, coeffs={(order,): scale})
    if dim == 2:
        poly = np.array([1.0 + 0j])
        for _ in range(order):
            z = complex(rng.uniform(-1.5, 1.5), rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5))
            poly = np.convolve(poly, np.array([1.0 + 0j, z]))
        # coefficient k multiplies xi_1^(m-k) xi_2^k
        coeffs = {(order - k, k): complex(scale * c) for k, c in enumerate(poly) if c != 0}
        return Symbol(dim=2, order=order, coeffs=coeffs)
    if dim == 3:
        if order % 2:
            raise ArgumentError("homogeneous elliptic symbols in d = 3 have even order")
        weights = rng.uniform(0.5, 2.0, size=3)
        base: Dict[tuple, complex] = {(0, 0, 0): 1.0 + 0j}
        for _ in range(order // 2):
            nxt: Dict[tuple, complex] = {}
            for alpha, c in base.items():
                for j in range(3):
                    beta = list(alpha)
                    beta[j] += 2
                    key = tuple(beta)
                    nxt[key] = nxt.get(key, 0j) + c * weights[j]
            base = nxt
        return Symbol(dim=3, order=order, coeffs={a: scale * c for a, c in base.items()})
    raise ArgumentError(f"random symbols are generated for d <= 3, got d = {dim}")
