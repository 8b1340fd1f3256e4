"""Numerical probes of the documented claims about each entropy."""

from .certificates import gauge_check, sequential_consistency_probe, strong_convexity_check
from .convexity import (
    LAMBDA_GRID,
    convexity_gap,
    convexity_gaps,
    modulus_buckets,
    modulus_estimate,
    modulus_lower_bound_check,
    modulus_scaling_check,
    modulus_upper_bound_margins,
)
from .derivatives import gradient_check, hessian_check
from .identities import (
    convexity_gap_probe,
    nonnegativity_probe,
    oracle_agreement_probe,
    three_point_probe,
)
from .levelsets import levelset_probe
from .reports import (
    ModulusBucket,
    ModulusTable,
    ProbeReport,
    format_number,
    render_csv,
    render_json,
    render_markdown,
    render_reports,
)
from .sampling import Sampler
from .sequences import boundary_blowup_probe, limiting_difference_probe
from .suites import SUITE_NAMES, SuiteSettings, run_suite
from .witnesses import (
    StrongConvexityWitness,
    Witness,
    WitnessKind,
    hct_negq_levelset_witness,
    sc_failure_witness,
    uc_failure_witness,
)

__all__ = [
    "Sampler",
    "ProbeReport",
    "ModulusBucket",
    "ModulusTable",
    "format_number",
    "render_json",
    "render_csv",
    "render_markdown",
    "render_reports",
    "LAMBDA_GRID",
    "convexity_gap",
    "convexity_gaps",
    "modulus_buckets",
    "modulus_estimate",
    "modulus_lower_bound_check",
    "modulus_scaling_check",
    "modulus_upper_bound_margins",
    "gauge_check",
    "strong_convexity_check",
    "sequential_consistency_probe",
    "gradient_check",
    "hessian_check",
    "oracle_agreement_probe",
    "nonnegativity_probe",
    "three_point_probe",
    "convexity_gap_probe",
    "levelset_probe",
    "limiting_difference_probe",
    "boundary_blowup_probe",
    "Witness",
    "WitnessKind",
    "StrongConvexityWitness",
    "uc_failure_witness",
    "sc_failure_witness",
    "hct_negq_levelset_witness",
    "SuiteSettings",
    "SUITE_NAMES",
    "run_suite",
]
