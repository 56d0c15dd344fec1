"""Inradius Lab - certified inner radii of nonvanishing sets of plane-wave eigenfunctions."""

# Import core functionality
from inradius_lab.core import load_config, SweepConfig
from inradius_lab.errors import InradiusLabError

# Symbols and fields
from inradius_lab.symbols import Symbol, MultiIndex, get_symbol, register_symbol, estimate_ellipticity
from inradius_lab.fields import Eigenfunction, synth, solve_frequencies, gradient_sup_bound

# Geometry
from inradius_lab.geometry import Domain, Box, Ball, Grid, parse_domain, mass_report

# Certificates, covers and lattice counts
from inradius_lab.certify import (
    InradiusCertificate, SigmaEstimate, lipschitz_ball, sup_lower_bound,
    certified_inradius, measured_inradius, estimate_sigma,
)
from inradius_lab.coverlat import (
    CoverResult, GoodBall, LatticeCount, vitali_cover, good_ball, count_lattice,
)

# Harness
from inradius_lab.harness import (
    ProofRun, SweepRecord, SweepResult, run_proof_pipeline, verify_theorem,
    verify_localized, sweep, estimate_uniform_lipschitz,
)

__version__ = "0.1.0"
__all__ = [
    # Core
    "load_config", "SweepConfig", "InradiusLabError",

    # Symbols and fields
    "Symbol", "MultiIndex", "get_symbol", "register_symbol", "estimate_ellipticity",
    "Eigenfunction", "synth", "solve_frequencies", "gradient_sup_bound",

    # Geometry
    "Domain", "Box", "Ball", "Grid", "parse_domain", "mass_report",

    # Certificates, covers and lattice counts
    "InradiusCertificate", "SigmaEstimate", "lipschitz_ball", "sup_lower_bound",
    "certified_inradius", "measured_inradius", "estimate_sigma",
    "CoverResult", "GoodBall", "LatticeCount", "vitali_cover", "good_ball", "count_lattice",

    # Harness
    "ProofRun", "SweepRecord", "SweepResult", "run_proof_pipeline", "verify_theorem",
    "verify_localized", "sweep", "estimate_uniform_lipschitz",
]
