"""Experiment configuration for the Inradius Lab."""

import logging
import math
import os
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, Field, PrivateAttr

from inradius_lab.config_parser import parse_config, parse_key_value_text
from inradius_lab.errors import DimensionMismatchError
from inradius_lab.fields.eigenfield import RecipeTerm
from inradius_lab.geometry.domains import Domain
from inradius_lab.geometry.grid import DEFAULT_CELLS_PER_R, DEFAULT_MAX_CELLS, Grid, auto_spacing
from inradius_lab.symbols.base import Symbol
from inradius_lab.symbols.io import read_symbol
from inradius_lab.symbols.library import named_symbol

logger = logging.getLogger(__name__)


class SweepConfig(BaseModel):
    """A lambda-sweep experiment."""

    name: str = "sweep"
    domain: Domain
    symbol: Optional[str] = None
    symbol_file: Optional[str] = None
    dim: Optional[int] = None
    lambda_moduli: List[float] = Field(default_factory=lambda: [10.0, 100.0, 1000.0, 10000.0])
    lambda_phases: List[float] = Field(default_factory=lambda: [0.0, math.pi / 4])
    recipe: List[RecipeTerm] = Field(default_factory=list)
    recipe_family: str = "fixed"
    layer_axis: int = 0
    layer_steepness: float = 1.0
    layer_growth: float = 0.5
    h_policy: Union[Literal["auto"], float] = "auto"
    cells_per_r: int = DEFAULT_CELLS_PER_R
    max_cells: int = DEFAULT_MAX_CELLS
    tau_rel: float = 1e-6
    dense_samples: int = 10_000
    seed: int = 0
    threads: int = 1
    metadata: Dict[str, Any] = Field(default_factory=dict)
    _symbol: Optional[Symbol] = PrivateAttr(default=None)

    @property
    def operator(self) -> Symbol:
        """The symbol named by ``symbol`` or read from ``symbol_file``.

        Returns:
            The Symbol instance
        """
        if self._symbol is None:
            dim = self.dim if self.dim is not None else self.domain.dim
            if self.symbol_file:
                sym = read_symbol(self.symbol_file)
            else:
                sym = named_symbol(self.symbol or "laplacian", dim)
            if sym.dim != self.domain.dim:
                raise DimensionMismatchError(
                    f"symbol of dimension {sym.dim} on a domain of dimension {self.domain.dim}"
                )
            self._symbol = sym
        return self._symbol

    def lambdas(self) -> List[complex]:
        """|lambda| e^(i theta) for each phase, moduli in the listed order."""
        return [
            complex(modulus * math.cos(theta), modulus * math.sin(theta))
            for theta in self.lambda_phases
            for modulus in self.lambda_moduli
        ]

    def family_params(self) -> Dict[str, Any]:
        return {
            "recipe": self.recipe,
            "axis": self.layer_axis,
            "steepness": self.layer_steepness,
            "growth": self.layer_growth,
            "base_modulus": min(self.lambda_moduli) if self.lambda_moduli else None,
        }

    def spacing_for(self, r: float) -> float:
        if self.h_policy == "auto":
            return auto_spacing(self.domain, r, self.cells_per_r, self.max_cells)
        return float(self.h_policy)

    def grid_for(self, r: float) -> Grid:
        return Grid.for_domain(self.domain, self.spacing_for(r))


def load_config(config_file: Union[str, os.PathLike]) -> SweepConfig:
    """Load a sweep configuration.

    ``.yaml``/``.yml`` files are read as YAML, anything else as ``key = value`` lines.
    A relative ``symbol_file`` is resolved against the config file's directory.

    Args:
        config_file: Path to the configuration file

    Returns:
        A SweepConfig object
    """
    logger.info("loading config from %s", config_file)
    with open(config_file, "r") as f:
        text = f.read()
    if str(config_file).endswith((".yaml", ".yml")):
        data = yaml.safe_load(text) or {}
    else:
        data = parse_key_value_text(text)
    return parse_config(data, base_dir=os.path.dirname(os.path.abspath(config_file)))
