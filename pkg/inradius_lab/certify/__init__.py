"""Nonvanishing-ball certificates and inradius estimates."""

from inradius_lab.certify.lemmas import (
    InradiusCertificate, lipschitz_ball, sup_lower_bound, sample_ball, resample_certificate,
    check_nonvanishing,
)
from inradius_lab.certify.inradius import (
    CertifiedInradius, MeasuredInradius, SigmaEstimate, certified_inradius,
    measured_inradius, estimate_sigma, zero_distance, certificate_from_point,
    real_part_up_to_phase, sign_change_cells,
)

__all__ = [
    "InradiusCertificate", "lipschitz_ball", "sup_lower_bound", "sample_ball",
    "resample_certificate", "check_nonvanishing",
    "CertifiedInradius", "MeasuredInradius", "SigmaEstimate", "certified_inradius",
    "measured_inradius", "estimate_sigma", "zero_distance", "certificate_from_point",
    "real_part_up_to_phase", "sign_change_cells",
]
