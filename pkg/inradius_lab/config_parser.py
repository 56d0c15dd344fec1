"""Configuration parsing for the Inradius Lab.

The line-based format::

    # comments and blank lines are ignored
    domain = box 0 0 1 1
    symbol = laplacian
    lambda_moduli = 10, 100, 1000, 10000
    lambda_phase = 0
    recipe = 1 0 : 0 : 1 ; 0 1 : 0 : 0.5j
    h_policy = auto

A recipe is a ``;``-separated list of ``direction : root_index : amplitude`` terms, with
the direction given as whitespace-separated complex literals.
"""

import os
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from inradius_lab.errors import InradiusLabError, ParseError
from inradius_lab.fields.eigenfield import RecipeTerm
from inradius_lab.geometry.domains import parse_domain

KNOWN_FIELDS = (
    "name", "domain", "symbol", "symbol_file", "dim", "lambda_moduli", "lambda_phase",
    "lambda_phases", "recipe", "recipe_family", "layer_axis", "layer_steepness",
    "layer_growth", "h_policy", "cells_per_r", "max_cells", "tau_rel", "dense_samples",
    "seed", "threads", "metadata",
)
INT_FIELDS = ("dim", "layer_axis", "cells_per_r", "max_cells", "dense_samples", "seed", "threads")
FLOAT_FIELDS = ("layer_steepness", "layer_growth", "tau_rel")


def parse_key_value_text(text: str) -> Dict[str, Any]:
    """Parse ``key = value`` lines; ``metadata.<key>`` lines collect into a dict.

    Raises:
        ParseError: On a line without ``=`` or a repeated key
    """
    data: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"expected 'key = value', got '{line}'", lineno)
        key, value = key.strip(), value.strip()
        if key.startswith("metadata."):
            data.setdefault("metadata", {})[key[len("metadata."):]] = value
            continue
        if key in data:
            raise ParseError(f"duplicate key '{key}'", lineno)
        data[key] = value
    return data


def _complex(token: Any) -> complex:
    if isinstance(token, str):
        return complex(token.replace(" ", ""))
    return complex(token)


def parse_recipe(text: str) -> List[RecipeTerm]:
    """Parse an inline recipe such as ``1 1 : 0 : 1 ; 1 -1 : 0 : 0.5j``."""
    terms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(":")]
        if len(parts) != 3:
            raise ParseError(f"recipe term '{chunk}' needs 'direction : root_index : amplitude'")
        try:
            direction = tuple(_complex(v) for v in parts[0].split())
            terms.append(RecipeTerm(direction=direction, root_index=int(parts[1]),
                                    amplitude=_complex(parts[2])))
        except ValueError as e:
            raise ParseError(f"recipe term '{chunk}': {e}")
    if not terms:
        raise ParseError("empty recipe")
    return terms


def _recipe_from_data(value: Any) -> List[RecipeTerm]:
    if isinstance(value, str):
        return parse_recipe(value)
    terms = []
    for item in value:
        terms.append(RecipeTerm(
            direction=tuple(_complex(v) for v in item["direction"]),
            root_index=int(item.get("root_index", 0)),
            amplitude=_complex(item.get("amplitude", 1)),
        ))
    return terms


def _float_list(value: Any) -> List[float]:
    if isinstance(value, str):
        return [float(v) for v in value.replace(",", " ").split()]
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


def parse_config(data: Dict[str, Any], base_dir: Optional[str] = None) -> "SweepConfig":
    """Parse raw configuration data into a SweepConfig.

    Args:
        data: Key/value data from either file format
        base_dir: Directory that a relative ``symbol_file`` is resolved against

    Returns:
        A SweepConfig object

    Raises:
        ParseError: If the data fails validation
    """
    from inradius_lab.core import SweepConfig

    errors = validate_config_schema(data)
    if errors:
        raise ParseError("; ".join(errors))

    fields: Dict[str, Any] = {"domain": parse_domain(data["domain"])}
    for key in ("name", "symbol", "recipe_family"):
        if key in data:
            fields[key] = str(data[key])
    if "symbol_file" in data:
        path = str(data["symbol_file"])
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        fields["symbol_file"] = path
    for key in INT_FIELDS:
        if key in data:
            fields[key] = int(data[key])
    for key in FLOAT_FIELDS:
        if key in data:
            fields[key] = float(data[key])
    if "lambda_moduli" in data:
        fields["lambda_moduli"] = _float_list(data["lambda_moduli"])
    phases = data.get("lambda_phases", data.get("lambda_phase"))
    if phases is not None:
        fields["lambda_phases"] = _float_list(phases)
    if "recipe" in data:
        fields["recipe"] = _recipe_from_data(data["recipe"])
    if "h_policy" in data:
        policy = str(data["h_policy"]).strip()
        fields["h_policy"] = "auto" if policy == "auto" else float(policy)
    if "metadata" in data:
        fields["metadata"] = dict(data["metadata"])

    try:
        return SweepConfig(**fields)
    except ValidationError as e:
        raise ParseError(f"invalid configuration: {e}")


def validate_config_schema(data: Dict[str, Any]) -> List[str]:
    """Validate configuration data.

    Args:
        data: Key/value data from either file format

    Returns:
        A list of validation errors, empty if valid
    """
    from inradius_lab.harness.recipes import available_recipe_families

    errors = []
    if not isinstance(data, dict):
        return ["Configuration must be a mapping of keys to values"]

    for key in data:
        if key not in KNOWN_FIELDS:
            errors.append(f"Unknown field: {key}")

    if "domain" not in data:
        errors.append("Missing required field: domain")
    else:
        try:
            parse_domain(data["domain"])
        except (InradiusLabError, ValidationError) as e:
            errors.append(f"Invalid domain: {e}")

    if "lambda_moduli" in data:
        try:
            moduli = _float_list(data["lambda_moduli"])
            if not moduli or any(m <= 0 for m in moduli):
                errors.append("lambda_moduli must be a non-empty list of positive numbers")
        except (TypeError, ValueError):
            errors.append("lambda_moduli must be numbers")

    for key in ("lambda_phase", "lambda_phases"):
        if key in data:
            try:
                _float_list(data[key])
            except (TypeError, ValueError):
                errors.append(f"{key} must be numbers")

    for key in INT_FIELDS:
        if key in data:
            try:
                int(data[key])
            except (TypeError, ValueError):
                errors.append(f"{key} must be an integer")
    for key in FLOAT_FIELDS:
        if key in data:
            try:
                float(data[key])
            except (TypeError, ValueError):
                errors.append(f"{key} must be a number")

    if "recipe" in data:
        try:
            _recipe_from_data(data["recipe"])
        except (InradiusLabError, ValidationError, KeyError, TypeError, ValueError) as e:
            errors.append(f"Invalid recipe: {e}")

    family = data.get("recipe_family")
    if family is not None and str(family) not in available_recipe_families():
        errors.append(f"Unknown recipe family: {family}")

    if "h_policy" in data:
        policy = str(data["h_policy"]).strip()
        if policy != "auto":
            try:
                if float(policy) <= 0:
                    errors.append("h_policy must be 'auto' or a positive number")
            except ValueError:
                errors.append("h_policy must be 'auto' or a positive number")

    if "metadata" in data and not isinstance(data["metadata"], dict):
        errors.append("metadata must be a mapping")

    return errors
