"""Exceptions raised by the Inradius Lab."""

from typing import Optional, Sequence


class InradiusLabError(Exception):
    """Base class for all Inradius Lab errors."""


class ArgumentError(InradiusLabError, ValueError):
    """An argument is outside the operation's domain."""


class DimensionMismatchError(ArgumentError):
    """Vectors or domains of different ambient dimension were combined."""


class ParseError(InradiusLabError, ValueError):
    """A text file or inline specification could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonEllipticError(InradiusLabError, ValueError):
    """The sampled principal symbol came too close to zero on the unit sphere."""

    def __init__(self, minimum: float, witness: Sequence[float]):
        super().__init__(
            f"symbol appears non-elliptic: |P_m(w)| = {minimum:.3e} at w = {tuple(witness)}"
        )
        self.minimum = minimum
        self.witness = tuple(witness)


class CharacteristicDirectionError(InradiusLabError, ValueError):
    """P(v) vanishes, so no plane wave along v solves the eigenequation."""


class ZeroFieldError(InradiusLabError, ValueError):
    """The field has zero L2 mass where a nonzero solution is required."""


class HypothesisViolationError(InradiusLabError, ValueError):
    """A theorem hypothesis fails for the given input."""


class BudgetExceededError(InradiusLabError, RuntimeError):
    """A lattice enumeration would visit more points than allowed."""

    def __init__(self, radius: float, points: int, budget: int):
        super().__init__(
            f"budget exceeded: enumeration radius R1 = {radius:.6g} needs {points} points "
            f"(budget {budget})"
        )
        self.radius = radius
        self.points = points
        self.budget = budget


class ContractError(InradiusLabError, RuntimeError):
    """An operation's stated postcondition or precondition failed."""


class ResidualError(ContractError):
    """A field does not satisfy its eigenequation to tolerance."""


class CertificationError(ContractError):
    """A certified nonvanishing ball contains a sample below the certified floor."""


class GuaranteeViolationError(ContractError):
    """A good ball failed the mass-ratio guarantee."""


class MarginShellError(ContractError):
    """A lattice witness was found beyond the derived enumeration radius."""


class OrderingViolationError(ContractError):
    """constructive <= certified + 2h <= measured + 4h failed."""
