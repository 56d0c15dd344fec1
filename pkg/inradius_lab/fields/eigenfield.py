"""Exact eigenfunctions of H as finite plane-wave sums.

Sign convention: D = i d/dx, so D^alpha exp(i x.xi) = (-xi)^alpha exp(i x.xi) and a plane
wave with frequency xi is an eigenfunction with eigenvalue P(-xi).
"""

import cmath
import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from inradius_lab.errors import (
    ArgumentError,
    CharacteristicDirectionError,
    ContractError,
    DimensionMismatchError,
    ResidualError,
)
from inradius_lab.geometry.domains import Domain
from inradius_lab.symbols.base import MultiIndex, Symbol, eval_symbol

logger = logging.getLogger(__name__)

CONSTRUCTION_RTOL = 1e-10
RESIDUAL_RTOL = 1e-10
CHARACTERISTIC_RTOL = 1e-14
CANONICAL_QUANTUM = 2.0**-30
ROOT_SNAP_RTOL = 1e-14

_CHUNK = 1 << 16


class PlaneWaveTerm(BaseModel):
    """a exp(i x . xi) with complex amplitude and complex frequency."""

    amplitude: complex
    frequency: Tuple[complex, ...]


class RecipeTerm(BaseModel):
    """One plane wave to synthesise: direction v, which root of P(t v) = lambda, amplitude."""

    direction: Tuple[complex, ...]
    root_index: int = 0
    amplitude: complex = 1.0 + 0j


class SpectralScale(BaseModel):
    """r_lambda = |lambda|^(-1/m) and mu = lambda/|lambda|."""

    model_config = ConfigDict(populate_by_name=True)

    lam: complex = Field(alias="lambda")
    r_lambda: float = Field(gt=0)
    mu: complex

    @classmethod
    def from_lambda(cls, lam: complex, order: int) -> "SpectralScale":
        lam = complex(lam)
        if lam == 0:
            raise ArgumentError("the wavelength scale needs lambda != 0")
        modulus = abs(lam)
        return cls(lam=lam, r_lambda=modulus ** (-1.0 / order), mu=lam / modulus)


class Eigenfunction(BaseModel):
    """psi(x) = sum_k a_k exp(i x . xi_k) with H psi = lambda psi.

    Every frequency satisfies P(-xi_k) = lambda to relative tolerance 1e-10; this is
    checked at construction.
    """

    model_config = ConfigDict(populate_by_name=True)

    symbol: Symbol
    lam: complex = Field(alias="lambda")
    terms: List[PlaneWaveTerm]

    @model_validator(mode="after")
    def _check_eigenequation(self) -> "Eigenfunction":
        if not self.terms:
            raise ValueError("an eigenfunction needs at least one plane-wave term")
        for term in self.terms:
            if len(term.frequency) != self.symbol.dim:
                raise ValueError(
                    f"frequency of length {len(term.frequency)} in dimension {self.symbol.dim}"
                )
        values = self.symbol.evaluate(-self.frequencies)
        errors = np.abs(values - self.lam)
        worst = int(np.argmax(errors))
        if errors[worst] > CONSTRUCTION_RTOL * max(1.0, abs(self.lam)):
            raise ResidualError(
                f"term {worst}: |P(-xi) - lambda| = {errors[worst]:.3e} exceeds tolerance"
            )
        return self

    @property
    def dim(self) -> int:
        return self.symbol.dim

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([t.amplitude for t in self.terms], dtype=np.complex128)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([t.frequency for t in self.terms], dtype=np.complex128).reshape(
            len(self.terms), self.dim
        )

    @property
    def scale(self) -> SpectralScale:
        return SpectralScale.from_lambda(self.lam, self.symbol.order)

    def _points(self, points) -> Tuple[np.ndarray, bool]:
        pts = np.asarray(points, dtype=np.float64)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[-1] != self.dim:
            raise DimensionMismatchError(
                f"points have dimension {pts.shape[-1]}, field has {self.dim}"
            )
        return pts, single

    def _combine(self, points, weights: np.ndarray):
        """sum_k weights_k exp(i x . xi_k), chunked over points."""
        pts, single = self._points(points)
        freqs_t = self.frequencies.T
        out = np.empty(len(pts), dtype=np.complex128)
        for start in range(0, len(pts), _CHUNK):
            block = pts[start:start + _CHUNK]
            out[start:start + _CHUNK] = np.exp(1j * (block @ freqs_t)) @ weights
        return complex(out[0]) if single else out

    def evaluate(self, points):
        """psi at a point (d,) or points (n, d)."""
        return self._combine(points, self.amplitudes)

    def derivative(self, gamma: Union[MultiIndex, Sequence[int]], points):
        """D^gamma psi = sum_k a_k (-xi_k)^gamma exp(i x . xi_k)."""
        entries = gamma.entries if isinstance(gamma, MultiIndex) else tuple(gamma)
        if len(entries) != self.dim:
            raise DimensionMismatchError(f"multi-index {entries} in dimension {self.dim}")
        factors = np.prod((-self.frequencies) ** np.asarray(entries), axis=1)
        return self._combine(points, self.amplitudes * factors)

    def gradient(self, points) -> np.ndarray:
        """The Euclidean gradient (d/dx_1, ..., d/dx_d) psi, shape (n, d) or (d,)."""
        pts, single = self._points(points)
        freqs = self.frequencies
        grad = np.stack(
            [self._combine(pts, self.amplitudes * 1j * freqs[:, j]) for j in range(self.dim)],
            axis=-1,
        )
        return grad[0] if single else grad

    def apply_operator(self, points):
        """(H psi)(x) as the coefficient-weighted sum of exact derivatives."""
        total = 0j
        for alpha, c in self.symbol.terms():
            total = total + c * self.derivative(alpha, points)
        return total

    def residual(self, points):
        """|H psi - lambda psi| at the given points."""
        return np.abs(self.apply_operator(points) - self.lam * self.evaluate(points))

    def residual_tolerance(self, points):
        """1e-10 (1 + |lambda|) sum_k |a_k| max_k exp(-x . Im xi_k)."""
        pts, single = self._points(points)
        growth = np.exp(-(pts @ self.frequencies.imag.T)).max(axis=1)
        tol = RESIDUAL_RTOL * (1.0 + abs(self.lam)) * np.abs(self.amplitudes).sum() * growth
        return float(tol[0]) if single else tol

    def scaled(self, c: complex) -> "Eigenfunction":
        """c psi."""
        c = complex(c)
        terms = [PlaneWaveTerm(amplitude=c * t.amplitude, frequency=t.frequency) for t in self.terms]
        return Eigenfunction(symbol=self.symbol, lam=self.lam, terms=terms)

    def rescaled(
        self, center: Sequence[float], r: float, norm: float, lam: Optional[complex] = None
    ) -> "Eigenfunction":
        """u(y) = r^(d/2) psi(center + r y) / norm, materialised as plane waves.

        The frequencies become r xi_k and the eigenvalue r^m lambda (pass ``lam`` to pin
        it, e.g. to lambda/|lambda| at r = r_lambda).
        """
        if not self.symbol.homogeneous:
            raise ContractError("rescaling to a new eigenvalue needs a homogeneous symbol")
        if not (r > 0 and norm > 0):
            raise ArgumentError("rescaling needs r > 0 and norm > 0")
        center = np.asarray(center, dtype=np.float64)
        freqs = self.frequencies
        shift = np.exp(1j * (freqs @ center))
        amps = self.amplitudes * shift * (r ** (self.dim / 2.0) / norm)
        new_lam = r**self.symbol.order * self.lam if lam is None else complex(lam)
        terms = [
            PlaneWaveTerm(amplitude=complex(a), frequency=tuple(complex(v) for v in r * f))
            for a, f in zip(amps, freqs)
        ]
        return Eigenfunction(symbol=self.symbol, lam=new_lam, terms=terms)

    def canonical(self, domain: Optional[Domain] = None) -> "Eigenfunction":
        """The representative of {c psi : c != 0} used for every measurement.

        Each term is weighed by its size on ``domain``, |a_k| exp(S_k) with
        S_k = sup of -x . Im xi_k there (S_k = 0 without a domain). The field is divided by
        the amplitude of the heaviest term (first on ties) and the weighed ratios are
        quantised to multiples of 2^-30, so c psi and psi map to the same field and only
        terms below 2^-31 of the heaviest one on the domain are dropped.
        """
        amps = self.amplitudes
        if domain is None:
            exponents = np.zeros(len(amps))
        else:
            exponents = np.asarray(domain.support_max(-self.frequencies.imag), dtype=np.float64)
        with np.errstate(divide="ignore"):
            log_weight = np.log(np.abs(amps)) + exponents
        k = int(np.argmax(log_weight))
        if amps[k] == 0:
            return self
        shift = exponents - exponents[k]
        unit = amps / amps[k]
        mag = np.abs(unit)
        with np.errstate(divide="ignore", invalid="ignore"):
            phase = np.where(mag > 0, unit / mag, 0)
        ratios = phase * np.exp(log_weight - log_weight[k])
        q = CANONICAL_QUANTUM
        ratios = np.round(ratios.real / q) * q + 1j * (np.round(ratios.imag / q) * q)
        kept = ratios != 0
        scaled = np.zeros_like(ratios)
        scaled[kept] = ratios[kept] * np.exp(-shift[kept])
        terms = [
            PlaneWaveTerm(amplitude=complex(a), frequency=t.frequency)
            for a, t in zip(scaled, self.terms)
        ]
        return Eigenfunction(symbol=self.symbol, lam=self.lam, terms=terms)


def solve_frequencies(sym: Symbol, lam: complex, v: Sequence[complex]) -> List[np.ndarray]:
    """The m vectors t_j v with P(t_j v) = lambda, ordered by arg(t_j) then |t_j|.

    Raises:
        ContractError: If the symbol is not homogeneous
        ArgumentError: If v is zero
        CharacteristicDirectionError: If P(v) = 0
    """
    if not sym.homogeneous:
        raise ContractError("solve_frequencies needs a homogeneous symbol")
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (sym.dim,):
        raise DimensionMismatchError(f"direction must have length {sym.dim}")
    if not np.any(v):
        raise ArgumentError("direction must be nonzero")
    p_v = eval_symbol(sym, v)
    reference = sym.coefficient_scale() * float(np.linalg.norm(v)) ** sym.order
    if abs(p_v) <= CHARACTERISTIC_RTOL * reference:
        raise CharacteristicDirectionError(f"P(v) = 0 along the characteristic direction {tuple(v)}")
    m = sym.order
    q = complex(lam) / p_v
    modulus = abs(q) ** (1.0 / m)
    phase = cmath.phase(q)
    roots = [modulus * cmath.exp(1j * (phase + 2.0 * math.pi * j) / m) for j in range(m)]
    # real roots get an exact +0 imaginary part, so -|t| sorts at arg pi
    roots = [complex(t.real, 0.0) if abs(t.imag) <= ROOT_SNAP_RTOL * abs(t) else t for t in roots]
    roots.sort(key=lambda t: (cmath.phase(t), abs(t)))
    return [t * v for t in roots]


RecipeLike = Union[RecipeTerm, Tuple[Sequence[complex], int, complex]]


def _as_recipe_term(item: RecipeLike) -> RecipeTerm:
    if isinstance(item, RecipeTerm):
        return item
    direction, root_index, amplitude = item
    return RecipeTerm(direction=tuple(complex(v) for v in direction),
                      root_index=int(root_index), amplitude=complex(amplitude))


def synth(sym: Symbol, lam: complex, recipe: Sequence[RecipeLike]) -> Eigenfunction:
    """Build an eigenfunction from (direction, root_index, amplitude) terms.

    Each term uses the root_index-th solution xi of P(xi) = lambda along its direction and
    stores -xi, so that H psi = lambda psi under D = i d/dx.
    """
    if not recipe:
        raise ArgumentError("a recipe needs at least one term")
    terms = []
    for item in recipe:
        term = _as_recipe_term(item)
        if not 0 <= term.root_index < sym.order:
            raise ArgumentError(f"root_index {term.root_index} outside [0, {sym.order})")
        xi = solve_frequencies(sym, lam, term.direction)[term.root_index]
        terms.append(PlaneWaveTerm(amplitude=term.amplitude,
                                   frequency=tuple(complex(v) for v in -xi)))
    return Eigenfunction(symbol=sym, lam=complex(lam), terms=terms)


def eval_field(ef: Eigenfunction, x: Sequence[float]) -> complex:
    return ef.evaluate(np.asarray(x, dtype=np.float64).reshape(-1))


def eval_derivative(ef: Eigenfunction, gamma: Union[MultiIndex, Sequence[int]], x: Sequence[float]) -> complex:
    return ef.derivative(gamma, np.asarray(x, dtype=np.float64).reshape(-1))


def residual(ef: Eigenfunction, x: Sequence[float]) -> float:
    return float(ef.residual(np.asarray(x, dtype=np.float64).reshape(-1)))


def gradient_sup_bound(ef: Eigenfunction, domain: Domain) -> float:
    """sum_k |a_k| |xi_k| exp(S_k), S_k = sup over the domain of -x . Im xi_k.

    A rigorous bound for sup |grad psi| on the domain, hence a Lipschitz constant there
    (boxes and balls are convex).
    """
    freqs = ef.frequencies
    exponents = domain.support_max(-freqs.imag)
    return float(np.sum(np.abs(ef.amplitudes) * np.linalg.norm(freqs, axis=1) * np.exp(exponents)))


def local_gradient_bound(ef: Eigenfunction, centers: np.ndarray, radii) -> np.ndarray:
    """gradient_sup_bound over each ball B(centers[i], radii[i]), vectorised."""
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    radii = np.broadcast_to(np.asarray(radii, dtype=np.float64), (len(centers),))
    freqs = ef.frequencies
    weights = np.abs(ef.amplitudes) * np.linalg.norm(freqs, axis=1)
    im = freqs.imag
    im_norm = np.linalg.norm(im, axis=1)
    out = np.empty(len(centers), dtype=np.float64)
    for start in range(0, len(centers), _CHUNK):
        block = slice(start, start + _CHUNK)
        exponents = -(centers[block] @ im.T) + radii[block, None] * im_norm[None, :]
        out[block] = np.exp(exponents) @ weights
    return out
