"""Tests for configuration files and the command-line interface."""

import json
import os
import sys
import pytest

import numpy as np

# Add the parent directory to the path to import inradius_lab
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from inradius_lab import load_config
from inradius_lab.cli import main
from inradius_lab.config_parser import (
    parse_config, parse_key_value_text, parse_recipe, validate_config_schema,
)
from inradius_lab.errors import ParseError
from inradius_lab.fields import read_field
from inradius_lab.geometry import Ball, Box
from inradius_lab.symbols import get_symbol

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs")


def test_parse_key_value_text():
    """Comments, blank lines and metadata keys."""
    data = parse_key_value_text("# sweep\nname = a  # trailing\n\nmetadata.owner = lab\n")
    assert data == {"name": "a", "metadata": {"owner": "lab"}}
    with pytest.raises(ParseError, match="line 2"):
        parse_key_value_text("name = a\nno equals sign\n")
    with pytest.raises(ParseError):
        parse_key_value_text("seed = 1\nseed = 2\n")


def test_parse_recipe():
    """Direction, root index and complex amplitude per term."""
    recipe = parse_recipe("1 0 : 0 : 1 ; 1 -1 : 1 : 0.3+0.2j")
    assert len(recipe) == 2
    assert recipe[1].direction == (1, -1)
    assert recipe[1].root_index == 1
    assert recipe[1].amplitude == 0.3 + 0.2j
    for bad in ("", "1 0 : 0", "1 0 : x : 1"):
        with pytest.raises(ParseError):
            parse_recipe(bad)


def test_validate_config_schema():
    """Missing, unknown and malformed fields are all reported."""
    assert validate_config_schema({"domain": "box 0 0 1 1", "symbol": "laplacian"}) == []
    errors = validate_config_schema({"colour": "red", "lambda_moduli": "10, -1",
                                     "h_policy": "fine", "recipe_family": "spiral"})
    assert "Unknown field: colour" in errors
    assert "Missing required field: domain" in errors
    assert not any("symbol" in e for e in errors)
    assert "lambda_moduli must be a non-empty list of positive numbers" in errors
    assert "h_policy must be 'auto' or a positive number" in errors
    assert "Unknown recipe family: spiral" in errors
    assert any(e.startswith("Invalid domain") for e in
               validate_config_schema({"domain": "box 1 2 3", "symbol": "laplacian"}))
    assert validate_config_schema(["not", "a", "mapping"]) == [
        "Configuration must be a mapping of keys to values"]


def test_config_defaults():
    """Without a symbol the Laplacian is used; each modulus gets phases 0 and pi/4."""
    data = {"domain": "box 0 0 1 1", "lambda_moduli": "10, 100"}
    assert validate_config_schema(data) == []
    config = parse_config(data)
    assert config.operator == get_symbol("laplacian", dim=2)
    assert config.lambda_phases == [0.0, pytest.approx(np.pi / 4)]
    assert len(config.lambdas()) == 4
    assert config.lambdas()[2] == pytest.approx(10 * np.exp(1j * np.pi / 4))


def test_parse_config_values():
    """Types are converted and phases accept either spelling."""
    config = parse_config({"domain": "ball 0 0 2", "symbol": "anisotropic", "lambda_moduli": "5, 50",
                           "lambda_phase": "0.5", "h_policy": "0.01", "seed": "7"})
    assert config.domain == Ball(center=(0.0, 0.0), radius=2.0)
    assert config.lambda_moduli == [5.0, 50.0]
    assert config.lambdas()[1] == pytest.approx(50 * np.exp(0.5j))
    assert config.h_policy == 0.01
    assert config.seed == 7
    assert config.operator == get_symbol("anisotropic", dim=2)
    with pytest.raises(ParseError):
        parse_config({"symbol": "laplacian"})


def test_load_line_config():
    """The shipped ramp config."""
    config = load_config(os.path.join(CONFIG_DIR, "theorem_sweep.conf"))
    assert config.name == "theorem_sweep"
    assert config.domain == Box(lo=(0.0, 0.0), hi=(1.0, 1.0))
    assert len(config.lambdas()) == 8
    assert len(config.recipe) == 4
    assert config.metadata == {"purpose": "lower bound ramp"}


def test_load_yaml_config():
    """YAML configs resolve symbol files next to themselves."""
    config = load_config(os.path.join(CONFIG_DIR, "complex_anisotropic.yaml"))
    assert os.path.isabs(config.symbol_file)
    assert config.operator == get_symbol("complex_anisotropic")
    assert config.recipe[1].amplitude == 0.5j
    assert config.threads == 2


def test_boundary_layer_config():
    """The boundary-layer family and its parameters."""
    config = load_config(os.path.join(CONFIG_DIR, "boundary_layer.conf"))
    assert config.recipe_family == "boundary_layer"
    assert config.family_params()["base_modulus"] == 10.0


def test_cli_validate(tmp_path, capsys):
    """validate succeeds on a good file and exits 1 on a bad one."""
    main(["validate", os.path.join(CONFIG_DIR, "theorem_sweep.conf")])
    assert "Validation successful" in capsys.readouterr().out
    bad = tmp_path / "bad.conf"
    bad.write_text("symbol = laplacian\n")
    with pytest.raises(SystemExit) as info:
        main(["validate", str(bad)])
    assert info.value.code == 1
    assert "Missing required field: domain" in capsys.readouterr().out


def test_cli_lattice_count(capsys):
    """The Laplacian at lambda = 1 has eight near-resonant points."""
    main(["lattice-count", "--lambda", "1", "0"])
    result = json.loads(capsys.readouterr().out)
    assert result["count"] == 8
    assert len(result["witnesses"]) == 8


def test_cli_cover(tmp_path, capsys):
    """Cover of a small point file."""
    points = tmp_path / "points.txt"
    points.write_text("0 0\n0.1 0\n1 1\n")
    main(["cover", str(points), "--r", "0.5"])
    result = json.loads(capsys.readouterr().out)
    assert result["count"] == 2
    assert result["overlap_bound"] == 25


def test_cli_synth_and_inradius(tmp_path, capsys):
    """A synthesised field file feeds the inradius command and the heatmap."""
    field = tmp_path / "field.txt"
    main(["synth", "--lambda", "19.739208802178716", "0", "--recipe", "1 1 : 0 : 1",
          "-o", str(field)])
    capsys.readouterr()
    ef = read_field(field, get_symbol("laplacian", dim=2))
    assert len(ef.terms) == 1
    ppm = tmp_path / "field.ppm"
    main(["inradius", "--field-file", str(field), "--h", "0.015625", "--ppm", str(ppm)])
    result = json.loads(capsys.readouterr().out)
    assert result["certified"] == pytest.approx(1 / (2 * np.pi * np.sqrt(2)), rel=1e-6)
    assert result["measured"] == pytest.approx(0.5, abs=2 * 0.015625)
    assert ppm.read_bytes()[:2] == b"P6"


def test_cli_prove(capsys):
    """The pipeline output carries the constructive radius."""
    main(["prove", "--lambda", "39.47841760435743", "0", "--recipe", "1 0 : 0 : 1",
          "--dense-samples", "500"])
    result = json.loads(capsys.readouterr().out)
    assert result["status"] == "ok"
    assert result["constructive_inradius"] > 0
    assert "rescaled" not in result


def test_cli_errors_exit_nonzero(tmp_path):
    """Library errors become exit status 1."""
    with pytest.raises(SystemExit) as info:
        main(["inradius"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["cover", str(tmp_path / "missing.txt"), "--r", "1"])
    assert info.value.code == 1


def test_cli_sweep_writes_outputs(tmp_path, capsys):
    """CSV and JSON land in the output directory."""
    config = tmp_path / "tiny.conf"
    config.write_text("name = tiny\ndomain = box 0 0 1 1\nsymbol = laplacian\n"
                      "lambda_moduli = 10\nlambda_phase = 0\ndense_samples = 500\n")
    main(["--out", str(tmp_path / "out"), "sweep", str(config)])
    assert "1 records, 0 failed" in capsys.readouterr().out
    lines = (tmp_path / "out" / "tiny.csv").read_text().splitlines()
    assert lines[0] == "# inradius-lab v1"
    assert len(lines) == 3
    data = json.loads((tmp_path / "out" / "tiny.json").read_text())
    assert data["records"][0]["lambda"] == [10.0, 0.0]
