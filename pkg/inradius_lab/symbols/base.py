"""Constant-coefficient symbols P(xi) = sum_alpha c_alpha xi^alpha."""

import logging
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from inradius_lab.errors import (
    ArgumentError,
    ContractError,
    DimensionMismatchError,
    NonEllipticError,
)

logger = logging.getLogger(__name__)

ELLIPTICITY_FLOOR = 1e-10

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class MultiIndex(BaseModel):
    """A multi-index alpha = (alpha_1, ..., alpha_d) with |alpha| = sum of entries."""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[int, ...]

    @field_validator("entries")
    @classmethod
    def _check_entries(cls, entries: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(entries) < 1:
            raise ValueError("a multi-index needs at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError(f"multi-index entries must be non-negative: {entries}")
        return entries

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return sum(self.entries)

    @classmethod
    def unit(cls, dim: int, axis: int) -> "MultiIndex":
        """The multi-index e_axis."""
        entries = [0] * dim
        entries[axis] = 1
        return cls(entries=tuple(entries))

    @classmethod
    def zero(cls, dim: int) -> "MultiIndex":
        return cls(entries=(0,) * dim)

    @staticmethod
    def enumerate(dim: int, max_order: int) -> List["MultiIndex"]:
        """All multi-indices of length dim with |alpha| <= max_order, graded lexicographic."""
        found = [MultiIndex(entries=e) for e in _compositions_up_to(dim, max_order)]
        return sorted(found, key=lambda a: grlex_key(a.entries))


def grlex_key(entries: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sort key for graded lexicographic order: by degree, then x_1 > x_2 > ..."""
    return (sum(entries), tuple(-e for e in entries))


def _compositions_up_to(dim: int, max_order: int) -> Iterator[Tuple[int, ...]]:
    if dim == 1:
        for k in range(max_order + 1):
            yield (k,)
        return
    for first in range(max_order + 1):
        for rest in _compositions_up_to(dim - 1, max_order - first):
            yield (first,) + rest


class Symbol(BaseModel):
    """The symbol of a constant-coefficient operator H = sum c_alpha D^alpha.

    Coefficients are keyed by the entries of the multi-index. Lower-order terms are
    admitted; ``homogeneous`` reports whether only |alpha| = m terms are nonzero.
    """

    dim: int = Field(ge=1)
    order: int = Field(ge=1)
    coeffs: Dict[Tuple[int, ...], complex]
    ell_const: Optional[float] = None

    @model_validator(mode="after")
    def _check_coefficients(self) -> "Symbol":
        if not self.coeffs:
            raise ValueError("a symbol needs at least one coefficient")
        for alpha in self.coeffs:
            if len(alpha) != self.dim:
                raise ValueError(f"multi-index {alpha} has length {len(alpha)}, expected {self.dim}")
            if any(e < 0 for e in alpha):
                raise ValueError(f"multi-index {alpha} has a negative entry")
            if sum(alpha) > self.order:
                raise ValueError(f"multi-index {alpha} exceeds the order {self.order}")
        if not any(sum(a) == self.order and c != 0 for a, c in self.coeffs.items()):
            raise ValueError(f"no nonzero coefficient of order {self.order}")
        if self.ell_const is not None and self.ell_const <= 0:
            raise ValueError("ell_const must be positive")
        return self

    @property
    def homogeneous(self) -> bool:
        return all(sum(a) == self.order for a, c in self.coeffs.items() if c != 0)

    def terms(self) -> List[Tuple[MultiIndex, complex]]:
        """Coefficients in graded lexicographic order of their multi-indices."""
        keys = sorted(self.coeffs, key=grlex_key)
        return [(MultiIndex(entries=k), complex(self.coeffs[k])) for k in keys]

    def principal_part(self) -> "Symbol":
        coeffs = {a: c for a, c in self.coeffs.items() if sum(a) == self.order}
        return Symbol(dim=self.dim, order=self.order, coeffs=coeffs, ell_const=self.ell_const)

    def lower_order_part(self) -> Dict[Tuple[int, ...], complex]:
        return {a: c for a, c in self.coeffs.items() if sum(a) < self.order and c != 0}

    def coefficient_scale(self) -> float:
        """Sum of coefficient magnitudes; the reference scale for relative tolerances."""
        return float(sum(abs(c) for c in self.coeffs.values()))

    def _exponents(self) -> Tuple[np.ndarray, np.ndarray]:
        keys = sorted(self.coeffs, key=grlex_key)
        powers = np.array(keys, dtype=np.int64).reshape(len(keys), self.dim)
        values = np.array([self.coeffs[k] for k in keys], dtype=np.complex128)
        return powers, values

    def evaluate(self, xi: np.ndarray) -> np.ndarray:
        """Evaluate P at complex points of shape (d,) or (n, d)."""
        xi = np.asarray(xi, dtype=np.complex128)
        if xi.shape[-1] != self.dim:
            raise DimensionMismatchError(
                f"argument has length {xi.shape[-1]}, symbol dimension is {self.dim}"
            )
        powers, values = self._exponents()
        monomials = np.prod(xi[..., None, :] ** powers, axis=-1)
        return monomials @ values


def eval_symbol(sym: Symbol, xi: Sequence[complex]) -> complex:
    """Evaluate the symbol at one complex vector."""
    xi = np.asarray(xi, dtype=np.complex128)
    if xi.ndim != 1:
        raise ArgumentError("eval_symbol expects a single vector; use Symbol.evaluate for batches")
    return complex(sym.evaluate(xi))


def homogeneity_residual(sym: Symbol, v: Sequence[complex], t: complex) -> float:
    """|P(t v) - t^m P(v)| for a homogeneous symbol."""
    if not sym.homogeneous:
        raise ContractError("homogeneity_residual requires a homogeneous symbol")
    v = np.asarray(v, dtype=np.complex128)
    if not np.any(v):
        raise ArgumentError("v must be nonzero")
    t = complex(t)
    return abs(eval_symbol(sym, t * v) - t ** sym.order * eval_symbol(sym, v))


def sphere_samples(dim: int, level: int) -> np.ndarray:
    """Deterministic unit vectors for refinement level >= 1.

    d=1 is {+1, -1}; d=2 uses 2^(level+5) uniform angles (nested across levels);
    d=3 uses a Fibonacci sphere of 2^(level+7) points.
    """
    if level < 1:
        raise ArgumentError("refinement level must be >= 1")
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        n = 2 ** (level + 5)
        theta = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if dim == 3:
        n = 2 ** (level + 7)
        i = np.arange(n)
        z = 1.0 - (2.0 * i + 1.0) / n
        rho = np.sqrt(1.0 - z * z)
        phi = i * _GOLDEN_ANGLE
        return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    raise ArgumentError(f"sphere sampling is implemented for d <= 3, got d = {dim}")


def estimate_ellipticity(
    sym: Symbol, refinement: int = 4, floor: float = ELLIPTICITY_FLOOR
) -> float:
    """Sampled minimum of |P_m| on the unit sphere; stored in ``sym.ell_const``.

    The minimum is taken over the union of all levels up to ``refinement``, so it is
    non-increasing in ``refinement``. It is an estimate, not a certified bound.
    """
    if refinement < 1:
        raise ArgumentError("refinement must be >= 1")
    principal = sym.principal_part()
    best = math.inf
    witness = None
    for level in range(1, refinement + 1):
        omegas = sphere_samples(sym.dim, level)
        values = np.abs(principal.evaluate(omegas))
        i = int(np.argmin(values))
        if values[i] < best:
            best = float(values[i])
            witness = omegas[i]
    if best < floor:
        raise NonEllipticError(best, witness)
    logger.debug("ellipticity estimate %.6g (refinement %d)", best, refinement)
    sym.ell_const = best
    return best
