"""Constant-coefficient elliptic symbols."""

from inradius_lab.symbols.base import (
    MultiIndex,
    Symbol,
    eval_symbol,
    homogeneity_residual,
    estimate_ellipticity,
    sphere_samples,
)
from inradius_lab.symbols.library import (
    register_symbol,
    get_symbol,
    available_symbols,
    named_symbol,
    random_elliptic_symbol,
)
from inradius_lab.symbols.io import parse_symbol, format_symbol, read_symbol, write_symbol

__all__ = [
    "MultiIndex", "Symbol", "eval_symbol", "homogeneity_residual", "estimate_ellipticity",
    "sphere_samples", "register_symbol", "get_symbol", "available_symbols", "named_symbol",
    "random_elliptic_symbol", "parse_symbol", "format_symbol", "read_symbol", "write_symbol",
]
