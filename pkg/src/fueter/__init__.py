"""Numerics for the n-Cauchy-Fueter operator and its twistor transform.

Layers, bottom up:

* quat      -- quaternion/biquaternion arithmetic and matrix embeddings
* domains   -- open subsets of H^n with exact exit distances
* cf        -- the finite-difference operator, residuals, and verdicts
* fields    -- named field fixtures and their holomorphic extensions
* hull      -- swept-line membership, distance, and witnesses for the hull
* twistor   -- the double fibration: charts, lines, and sweeps
* cp1       -- line bundles on the sphere: quadrature and cohomology
* penrose   -- the integral transform and its commuting square
* acceptance-- the end-to-end criteria behind `fueter verify all`
* cli       -- the `fueter` command-line entry point
"""

from .quat import (
    BiquaternionPoint,
    Quaternion,
    QuaternionVector,
    ab_to_real,
    decompose_matrix,
    det_biquat,
    embed_M,
    kappa,
    matrix_point,
    norm_C,
    qconj,
    qinner,
    qmul,
    qnorm,
    real_to_ab,
)
from .domains import (
    Ball,
    DomainSpec,
    EmptySet,
    HalfSpace,
    Intersection,
    PointComplement,
    WholeSpace,
    parse_domain,
)
from .cf import (
    DomainError,
    FDConfig,
    cf_apply,
    cf_residual_complex,
    cf_residual_field,
    dC_apply,
    dbar_q,
    is_monogenic,
    residual_norm,
)
from .fields import ComplexField, ScalarField, field_names, get_field, make_pair
from .hull import (
    COV_CONST,
    HullQuery,
    ImUnitSphereSampler,
    NotInHullError,
    fibonacci_imaginary_sphere,
    hull_contains,
    hull_distance,
    hull_witness,
)
from .twistor import (
    FiberPoint,
    OutsideChartsError,
    TwistorLine,
    TwistorPoint,
    eta,
    eta_inverse,
    hopf_grid,
    hull_contains_via_lines,
    line_base_points,
    line_embed,
    line_sweep,
    sweep_quaternions,
)
from .cp1 import (
    BUMP_GRADE,
    BundleSection,
    Form01,
    QuadratureConfig,
    QuadratureError,
    bump_section,
    cohomology_coefficients,
    decay_check,
    exact_form,
    h1_dimension,
    harmonic_representative,
    quadrature_C,
    validate_form,
    validate_section,
)
from .penrose import (
    KAPPA,
    ClosednessError,
    PenroseResult,
    TwistorFormL,
    calibrate_kappa,
    dbar_chart0,
    diagram_check,
    frame_apply,
    penrose_transform,
    penrose_transform_complex,
    sharp,
    tau_push_01,
    tau_push_02,
    transform_pair_field,
)
from .acceptance import CRITERIA, format_line, run_all

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # quat
    "BiquaternionPoint", "Quaternion", "QuaternionVector", "ab_to_real",
    "decompose_matrix", "det_biquat", "embed_M", "kappa", "matrix_point",
    "norm_C", "qconj", "qinner", "qmul", "qnorm", "real_to_ab",
    # domains
    "Ball", "DomainSpec", "EmptySet", "HalfSpace", "Intersection",
    "PointComplement", "WholeSpace", "parse_domain",
    # cf
    "DomainError", "FDConfig", "cf_apply", "cf_residual_complex",
    "cf_residual_field", "dC_apply", "dbar_q", "is_monogenic",
    "residual_norm",
    # fields
    "ComplexField", "ScalarField", "field_names", "get_field", "make_pair",
    # hull
    "COV_CONST", "HullQuery", "ImUnitSphereSampler", "NotInHullError",
    "fibonacci_imaginary_sphere", "hull_contains", "hull_distance",
    "hull_witness",
    # twistor
    "FiberPoint", "OutsideChartsError", "TwistorLine", "TwistorPoint",
    "eta", "eta_inverse", "hopf_grid", "hull_contains_via_lines",
    "line_base_points", "line_embed", "line_sweep", "sweep_quaternions",
    # cp1
    "BUMP_GRADE", "BundleSection", "Form01", "QuadratureConfig",
    "QuadratureError", "bump_section", "cohomology_coefficients",
    "decay_check", "exact_form", "h1_dimension", "harmonic_representative",
    "quadrature_C", "validate_form", "validate_section",
    # penrose
    "KAPPA", "ClosednessError", "PenroseResult", "TwistorFormL",
    "calibrate_kappa", "dbar_chart0", "diagram_check", "frame_apply",
    "penrose_transform", "penrose_transform_complex", "sharp",
    "tau_push_01", "tau_push_02", "transform_pair_field",
    # acceptance
    "CRITERIA", "format_line", "run_all",
]
