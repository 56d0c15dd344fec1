"""Analytic domains: open axis-aligned boxes and open Euclidean balls."""

import math
from abc import ABC, abstractmethod
from typing import ClassVar, Dict, Optional, Sequence, Tuple, Type, Union

import numpy as np
from pydantic import BaseModel, model_validator

from inradius_lab.errors import ArgumentError, DimensionMismatchError, ParseError

_CONTAINMENT_TOL = 1e-12


def ball_volume(dim: int, radius: float) -> float:
    """Volume of the Euclidean d-ball, pi^(d/2) R^d / Gamma(d/2 + 1)."""
    return math.pi ** (dim / 2.0) * radius**dim / math.gamma(dim / 2.0 + 1.0)


class Domain(BaseModel, ABC):
    """Base class for the open sets the lab works on."""

    kind: ClassVar[str]

    @property
    @abstractmethod
    def dim(self) -> int:
        pass

    @abstractmethod
    def distance_to_boundary(self, points: np.ndarray) -> np.ndarray:
        """Signed distance to the complement: positive inside, <= 0 outside."""

    @abstractmethod
    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        pass

    @abstractmethod
    def volume(self) -> float:
        pass

    @abstractmethod
    def support_max(self, directions: np.ndarray) -> np.ndarray:
        """sup over the closure of x . w, for each row w of ``directions``."""

    @abstractmethod
    def r_interior(self, r: float) -> Optional["Domain"]:
        """{x : B(x, r) inside the domain}, or None when it is empty."""

    @abstractmethod
    def contains_domain(self, other: "Domain") -> bool:
        pass

    @abstractmethod
    def to_spec(self) -> str:
        """The config-file spelling, e.g. ``box 0 0 1 1``."""

    def inradius(self) -> float:
        lo, hi = self.bounding_box()
        center = (lo + hi) / 2.0
        return float(self.distance_to_boundary(center[None, :])[0])

    def _points(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[None, :]
        if points.shape[-1] != self.dim:
            raise DimensionMismatchError(
                f"points have dimension {points.shape[-1]}, domain has {self.dim}"
            )
        return points

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.distance_to_boundary(points) > 0.0


# Registry of domain classes
_domain_registry: Dict[str, Type[Domain]] = {}


def register_domain(cls: Type[Domain]) -> Type[Domain]:
    """Register a domain class under its ``kind``.

    Args:
        cls: The domain class to register

    Returns:
        The domain class
    """
    _domain_registry[cls.kind] = cls
    return cls


def get_domain_class(kind: str) -> Type[Domain]:
    """Get a domain class by kind.

    Raises:
        ValueError: If the kind is not registered
    """
    if kind not in _domain_registry:
        raise ArgumentError(f"Unknown domain kind: {kind}")
    return _domain_registry[kind]


def _fmt(values: Sequence[float]) -> str:
    return " ".join(repr(float(v)) for v in values)


@register_domain
class Box(Domain):
    """The open box prod_j (lo_j, hi_j)."""

    kind: ClassVar[str] = "box"
    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_corners(self) -> "Box":
        if len(self.lo) != len(self.hi) or not self.lo:
            raise ValueError("box corners must be non-empty and of equal length")
        if any(a >= b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"box needs lo < hi componentwise, got {self.lo}, {self.hi}")
        return self

    @property
    def dim(self) -> int:
        return len(self.lo)

    def distance_to_boundary(self, points: np.ndarray) -> np.ndarray:
        points = self._points(points)
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return np.minimum(points - lo, hi - points).min(axis=-1)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.lo, dtype=np.float64), np.asarray(self.hi, dtype=np.float64)

    def volume(self) -> float:
        return float(np.prod(np.asarray(self.hi) - np.asarray(self.lo)))

    def support_max(self, directions: np.ndarray) -> np.ndarray:
        w = np.atleast_2d(np.asarray(directions, dtype=np.float64))
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return np.maximum(w * lo, w * hi).sum(axis=-1)

    def r_interior(self, r: float) -> Optional["Box"]:
        if r <= 0:
            raise ArgumentError(f"r must be positive, got {r}")
        lo = tuple(a + r for a in self.lo)
        hi = tuple(b - r for b in self.hi)
        if any(a >= b for a, b in zip(lo, hi)):
            return None
        return Box(lo=lo, hi=hi)

    def contains_domain(self, other: Domain) -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError("domains of different dimension")
        olo, ohi = other.bounding_box()
        return bool(
            np.all(olo >= np.asarray(self.lo) - _CONTAINMENT_TOL)
            and np.all(ohi <= np.asarray(self.hi) + _CONTAINMENT_TOL)
        )

    def to_spec(self) -> str:
        return f"box {_fmt(self.lo)} {_fmt(self.hi)}"


@register_domain
class Ball(Domain):
    """The open ball B(center, radius)."""

    kind: ClassVar[str] = "ball"
    center: Tuple[float, ...]
    radius: float

    @model_validator(mode="after")
    def _check_radius(self) -> "Ball":
        if not self.center:
            raise ValueError("ball center must be non-empty")
        if not self.radius > 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        return self

    @property
    def dim(self) -> int:
        return len(self.center)

    def distance_to_boundary(self, points: np.ndarray) -> np.ndarray:
        points = self._points(points)
        return self.radius - np.linalg.norm(points - np.asarray(self.center), axis=-1)

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        c = np.asarray(self.center, dtype=np.float64)
        return c - self.radius, c + self.radius

    def volume(self) -> float:
        return ball_volume(self.dim, self.radius)

    def support_max(self, directions: np.ndarray) -> np.ndarray:
        w = np.atleast_2d(np.asarray(directions, dtype=np.float64))
        return w @ np.asarray(self.center) + self.radius * np.linalg.norm(w, axis=-1)

    def r_interior(self, r: float) -> Optional["Ball"]:
        if r <= 0:
            raise ArgumentError(f"r must be positive, got {r}")
        if self.radius - r <= 0:
            return None
        return Ball(center=self.center, radius=self.radius - r)

    def contains_domain(self, other: Domain) -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError("domains of different dimension")
        c = np.asarray(self.center)
        if isinstance(other, Ball):
            gap = np.linalg.norm(np.asarray(other.center) - c) + other.radius
            return bool(gap <= self.radius + _CONTAINMENT_TOL)
        lo, hi = other.bounding_box()
        # farthest corner of the other set's bounding box
        far = np.maximum(np.abs(lo - c), np.abs(hi - c))
        return bool(np.linalg.norm(far) <= self.radius + _CONTAINMENT_TOL)

    def to_spec(self) -> str:
        return f"ball {_fmt(self.center)} {float(self.radius)!r}"


def parse_domain(spec: Union[str, Sequence]) -> Domain:
    """Parse ``box lo... hi...`` or ``ball center... radius``.

    Args:
        spec: The string form, or a list ``[kind, numbers...]`` from YAML

    Returns:
        A Domain
    """
    tokens = spec.split() if isinstance(spec, str) else [str(t) for t in spec]
    if not tokens:
        raise ParseError("empty domain specification")
    kind = tokens[0].lower()
    try:
        values = [float(t) for t in tokens[1:]]
    except ValueError:
        raise ParseError(f"non-numeric domain parameter in '{spec}'")
    cls = get_domain_class(kind)
    if cls is Box:
        if len(values) < 2 or len(values) % 2:
            raise ParseError(f"box needs 2d numbers, got {len(values)}")
        d = len(values) // 2
        return Box(lo=tuple(values[:d]), hi=tuple(values[d:]))
    if cls is Ball:
        if len(values) < 2:
            raise ParseError(f"ball needs d + 1 numbers, got {len(values)}")
        return Ball(center=tuple(values[:-1]), radius=values[-1])
    raise ParseError(f"no parser for domain kind '{kind}'")


def format_domain(domain: Domain) -> str:
    return domain.to_spec()


def r_interior(dom: Domain, r: float) -> Optional[Domain]:
    """Omega_{-r} = {x in Omega : B(x, r) in Omega}; None when empty."""
    return dom.r_interior(r)


def dist_to_complement(dom: Domain, x: Sequence[float]) -> float:
    """dist(x, Omega^c) for x in Omega."""
    d = float(dom.distance_to_boundary(np.asarray(x, dtype=np.float64))[0])
    if d < 0:
        raise ArgumentError(f"point {tuple(x)} lies outside the domain")
    return d
