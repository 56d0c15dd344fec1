"""Proof pipeline, theorem checks, sweeps and result writers."""

from inradius_lab.harness.pipeline import (
    ProofRun, run_proof_pipeline, assembled_constant, min_linear_lower_bound,
)
from inradius_lab.harness.verify import SweepRecord, verify_theorem, verify_localized, check_ordering
from inradius_lab.harness.recipes import (
    register_recipe_family, get_recipe_family, available_recipe_families, default_recipe,
)
from inradius_lab.harness.lipschitz import (
    LipschitzEstimate, estimate_uniform_lipschitz, normalized_gradient_sup,
)
from inradius_lab.harness.sweep import SweepResult, CorollaryCheck, sweep, corollary_monitor
from inradius_lab.harness.output import write_csv, write_json, write_ppm, heatmap, to_jsonable

__all__ = [
    "ProofRun", "run_proof_pipeline", "assembled_constant", "min_linear_lower_bound",
    "SweepRecord", "verify_theorem", "verify_localized", "check_ordering",
    "register_recipe_family", "get_recipe_family", "available_recipe_families",
    "default_recipe",
    "LipschitzEstimate", "estimate_uniform_lipschitz", "normalized_gradient_sup",
    "SweepResult", "CorollaryCheck", "sweep", "corollary_monitor",
    "write_csv", "write_json", "write_ppm", "heatmap", "to_jsonable",
]
