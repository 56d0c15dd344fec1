#!/usr/bin/env python3
"""Command-line interface for the Inradius Lab."""

import argparse
import json
import logging
import os
import sys

import numpy as np
from pydantic import ValidationError

import inradius_lab
from inradius_lab.certify import estimate_sigma
from inradius_lab.config_parser import parse_key_value_text, parse_recipe, validate_config_schema
from inradius_lab.coverlat import count_lattice, read_points, vitali_cover
from inradius_lab.errors import ArgumentError, InradiusLabError
from inradius_lab.fields import read_field, synth, write_field
from inradius_lab.geometry import Box, Grid, auto_spacing, parse_domain
from inradius_lab.harness import (
    default_recipe,
    estimate_uniform_lipschitz,
    run_proof_pipeline,
    sweep,
    to_jsonable,
    write_csv,
    write_json,
    write_ppm,
)
from inradius_lab.symbols import named_symbol, read_symbol

logger = logging.getLogger("inradius_lab")


def main(argv=None):
    """Main CLI function."""
    parser = argparse.ArgumentParser(prog="inradius-lab", description="Inradius Lab CLI")
    parser.add_argument("--symbol", default="laplacian", help="Registered symbol name")
    parser.add_argument("--dim", type=int, default=2, help="Dimension for named symbols")
    parser.add_argument("--symbol-file", help="Symbol file (overrides --symbol)")
    parser.add_argument("--out", default=".", help="Output directory")
    parser.add_argument("--seed", type=int, help="Random seed (0 unless a config sets one)")
    parser.add_argument("--threads", type=int, help="Worker threads; never changes results")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    synth_parser = subparsers.add_parser("synth", help="Build an eigenfunction from a recipe")
    synth_parser.add_argument("--lambda", dest="lam", nargs=2, type=float, required=True,
                              metavar=("RE", "IM"))
    synth_parser.add_argument("--recipe", help="Inline recipe 'dir : root : amp ; ...'")
    synth_parser.add_argument("--output", "-o", help="Field file to write")

    inradius_parser = subparsers.add_parser("inradius", help="Certified and measured inradius")
    _add_field_args(inradius_parser)
    inradius_parser.add_argument("--tau", type=float, help="Absolute zero threshold")
    inradius_parser.add_argument("--ppm", help="Write a heatmap with the certified ball (d = 2)")

    cover_parser = subparsers.add_parser("cover", help="Greedy bounded-overlap cover")
    cover_parser.add_argument("points_file", help="Whitespace-separated points, one per line")
    cover_parser.add_argument("--r", type=float, required=True, help="Cover radius")

    lattice_parser = subparsers.add_parser("lattice-count", help="Count near-resonant lattice points")
    lattice_parser.add_argument("--lambda", dest="lam", nargs=2, type=float, required=True,
                                metavar=("RE", "IM"))
    lattice_parser.add_argument("--delta", type=float, default=0.5)
    lattice_parser.add_argument("--margin", type=float, default=2.0)
    lattice_parser.add_argument("--budget", type=int, default=10**8)

    prove_parser = subparsers.add_parser("prove", help="Run the constructive proof pipeline")
    _add_field_args(prove_parser)
    prove_parser.add_argument("--dense-samples", type=int, default=10_000)
    prove_parser.add_argument("--ppm", help="Write a heatmap with the constructive ball (d = 2)")

    sweep_parser = subparsers.add_parser("sweep", help="Run a lambda sweep from a config file")
    sweep_parser.add_argument("config_file", help="Sweep configuration (.conf or .yaml)")

    estimate_parser = subparsers.add_parser("estimate-L", help="Estimate the uniform gradient constant")
    estimate_parser.add_argument("--samples", type=int, default=256)
    estimate_parser.add_argument("--cells", type=int, default=64)

    validate_parser = subparsers.add_parser("validate", help="Validate a sweep configuration")
    validate_parser.add_argument("config_file", help="Sweep configuration to validate")

    args = parser.parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )

    commands = {
        "synth": synth_command,
        "inradius": inradius_command,
        "cover": cover_command,
        "lattice-count": lattice_command,
        "prove": prove_command,
        "sweep": sweep_command,
        "estimate-L": estimate_command,
        "validate": validate_command,
    }
    if args.command not in commands:
        parser.print_help()
        return
    try:
        commands[args.command](args)
    except (InradiusLabError, ValidationError, OSError) as e:
        logger.error("%s failed: %s", args.command, e)
        sys.exit(1)


def _add_field_args(parser):
    parser.add_argument("--field-file", help="Field file (else --lambda and --recipe)")
    parser.add_argument("--lambda", dest="lam", nargs=2, type=float, metavar=("RE", "IM"))
    parser.add_argument("--recipe", help="Inline recipe when no field file is given")
    parser.add_argument("--domain", help="Domain, e.g. 'box 0 0 1 1' (unit box by default)")
    parser.add_argument("--h", type=float, help="Grid spacing (r_lambda/16 by default)")


def _emit(obj):
    print(json.dumps(to_jsonable(obj), indent=2))


def load_symbol(args):
    if args.symbol_file:
        return read_symbol(args.symbol_file)
    return named_symbol(args.symbol, args.dim)


def load_field(args, sym):
    if args.field_file:
        return read_field(args.field_file, sym)
    if args.lam is None:
        raise ArgumentError("give --field-file or --lambda")
    recipe = parse_recipe(args.recipe) if args.recipe else default_recipe(sym.dim)
    return synth(sym, complex(*args.lam), recipe)


def field_grid(args, ef):
    dom = parse_domain(args.domain) if args.domain else Box(lo=(0.0,) * ef.dim, hi=(1.0,) * ef.dim)
    h = args.h if args.h else auto_spacing(dom, ef.scale.r_lambda)
    return dom, Grid.for_domain(dom, h)


def synth_command(args):
    """Build an eigenfunction and write it as a field file."""
    sym = load_symbol(args)
    recipe = parse_recipe(args.recipe) if args.recipe else default_recipe(sym.dim)
    ef = synth(sym, complex(*args.lam), recipe)
    output = args.output or os.path.join(args.out, "field.txt")
    write_field(ef, output)
    print(f"Wrote {len(ef.terms)}-term field to {output}")


def inradius_command(args):
    """Print certified and measured inradius of the nonvanishing set."""
    ef = load_field(args, load_symbol(args))
    dom, grid = field_grid(args, ef)
    sigma = estimate_sigma(ef, dom, grid, tau=args.tau)
    if args.ppm:
        c = sigma.certified_center
        write_ppm(ef, grid, args.ppm, circle=(c[0], c[1], sigma.certified_inradius))
    _emit({
        "certified": sigma.certified_inradius,
        "center": sigma.certified_center,
        "measured": sigma.measured_inradius,
        "L": sigma.lipschitz,
        "h": grid.spacing,
    })


def cover_command(args):
    """Print the greedy cover of a point list."""
    points = read_points(args.points_file)
    cover = vitali_cover(points, args.r)
    _emit({
        "r": cover.r,
        "count": len(cover.center_indices),
        "max_overlap": cover.max_overlap,
        "overlap_bound": cover.overlap_bound,
        "centers": cover.centers,
    })


def lattice_command(args):
    """Print N_lambda, the enumeration radius and the witnesses."""
    count = count_lattice(load_symbol(args), complex(*args.lam), delta=args.delta,
                          margin=args.margin, budget=args.budget, threads=args.threads or 1)
    _emit({"R1": count.enumeration_radius, "count": count.count, "witnesses": count.witnesses})


def prove_command(args):
    """Run the proof pipeline and print every intermediate quantity."""
    ef = load_field(args, load_symbol(args))
    dom, grid = field_grid(args, ef)
    ef = ef.canonical(dom)
    run = run_proof_pipeline(ef, dom, grid, dense_samples=args.dense_samples,
                             rng=np.random.default_rng(args.seed or 0))
    if args.ppm and run.center is not None:
        write_ppm(ef, grid, args.ppm, circle=(run.center[0], run.center[1], run.constructive_inradius))
    _emit(run.model_dump(exclude={"rescaled"}))


def sweep_command(args):
    """Run a sweep and write <name>.csv and <name>.json to the output directory."""
    config = inradius_lab.load_config(args.config_file)
    overrides = {key: getattr(args, key) for key in ("seed", "threads") if getattr(args, key) is not None}
    if overrides:
        config = config.model_copy(update=overrides)
    if args.symbol_file:
        config = config.model_copy(update={"symbol_file": args.symbol_file})
    result = sweep(config)
    os.makedirs(args.out, exist_ok=True)
    write_csv(result.records, os.path.join(args.out, f"{config.name}.csv"))
    write_json(result, os.path.join(args.out, f"{config.name}.json"))
    print(f"{len(result.records)} records, {len(result.failures)} failed, "
          f"min Q = {result.min_q}, c_min = {result.c_min}")
    if result.failures or not all(check.holds for check in result.monitor):
        sys.exit(1)


def estimate_command(args):
    """Print the running maximum of the normalized gradient and its plateau ratio."""
    estimate = estimate_uniform_lipschitz(load_symbol(args), args.samples,
                                          rng=np.random.default_rng(args.seed or 0), cells=args.cells)
    _emit(estimate)


def validate_command(args):
    """Validate a sweep configuration file."""
    import yaml

    with open(args.config_file, "r") as f:
        text = f.read()
    if args.config_file.endswith((".yaml", ".yml")):
        data = yaml.safe_load(text) or {}
    else:
        data = parse_key_value_text(text)

    errors = validate_config_schema(data)
    if errors:
        print(f"Validation failed for {args.config_file}:")
        for error in errors:
            print(f"  - {error}")
        sys.exit(1)
    print(f"Validation successful for {args.config_file}")


if __name__ == "__main__":
    main()
