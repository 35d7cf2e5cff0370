"""Trace-norm certificates for radial Fourier multipliers.

Numerical companions to the Hankel-matrix route from radial symbols to
completely bounded multiplier norms: Schatten-1 brackets with declared tail
models, Besov/disk-L1 sandwiches, weighted-L2 smooth-symbol bounds, divided
differences against lattice kernels on [0, pi]^d, and Schur-multiplier
witness factorizations on the free-group tree.
"""

__version__ = "0.1.0"

from .besov import (
    TrigPolynomial,
    besov_b11,
    dyadic_block_bound_check,
    l1_from_l2_check,
    l1_torus,
    peller_disk_l1,
    symbol_coefficients,
    vdp_coeffs,
)
from .checks import CheckReport, CheckRow, check_all
from .errors import AccuracyError, DivergenceError
from .gallery import (
    FamilySpec,
    SweepRow,
    SweepTable,
    default_alpha,
    default_t_grid,
    family_symbol,
    fit_through_origin,
    growth_fit,
    order_sweep,
    scaled_discrete,
    spec_from_json,
    spec_params,
    sweep_s1,
)
from .hankel import (
    HankelMatrix,
    antidiag_lower_bound,
    build_hankel,
    hadamard_hankel_bound_check,
    schatten1,
    schatten2,
    shift_sandwich_check,
    sqrt_factor,
)
from .quadrature import QuadratureSpec, integrate_halfline, integrate_log_interval
from .reporting import SCHEMA_VERSION, dumps_canonical, dumps_csv, format_float
from .seqsym import (
    DiscreteSymbol,
    ExponentialTail,
    FiniteTail,
    PowerTail,
    StretchedExpTail,
    UnknownTail,
    abs_tail_sum,
    antidiag_tail_sum,
    difference,
    eval_range,
    finite_symbol,
    weighted_sq_tail,
)
from .smoothbound import (
    BoundReport,
    SmoothSymbol,
    bound_report,
    subordination_check,
    transfer_checks,
    weighted_l2_cont,
    weighted_l2_disc,
)
from .toruszd import (
    McEstimate,
    NodeSet,
    dirichlet_divdiff,
    dirichlet_generator,
    dirichlet_lattice,
    divided_difference,
    indicator_divdiff,
    indicator_divdiff_averaged,
    l1_ball_lattice,
    l1_torus_mc,
    l1_torus_tensor2,
    radial_l1_transfer_check,
    radial_l1_transfer_check_twosided,
    radial_lattice_kernel,
)
from .witness import (
    WitnessPair,
    ball,
    empirical_multiplier_lower,
    parity_coherence,
    required_truncation,
    tree_distance,
    witness_from_symbol,
)

__all__ = [
    "__version__",
    "AccuracyError",
    "DivergenceError",
    "DiscreteSymbol",
    "FiniteTail",
    "ExponentialTail",
    "StretchedExpTail",
    "PowerTail",
    "UnknownTail",
    "finite_symbol",
    "eval_range",
    "difference",
    "abs_tail_sum",
    "antidiag_tail_sum",
    "weighted_sq_tail",
    "HankelMatrix",
    "build_hankel",
    "schatten1",
    "schatten2",
    "sqrt_factor",
    "antidiag_lower_bound",
    "shift_sandwich_check",
    "hadamard_hankel_bound_check",
    "QuadratureSpec",
    "integrate_halfline",
    "integrate_log_interval",
    "TrigPolynomial",
    "l1_torus",
    "vdp_coeffs",
    "besov_b11",
    "peller_disk_l1",
    "l1_from_l2_check",
    "dyadic_block_bound_check",
    "symbol_coefficients",
    "SmoothSymbol",
    "BoundReport",
    "bound_report",
    "weighted_l2_cont",
    "weighted_l2_disc",
    "transfer_checks",
    "subordination_check",
    "WitnessPair",
    "ball",
    "tree_distance",
    "witness_from_symbol",
    "required_truncation",
    "empirical_multiplier_lower",
    "parity_coherence",
    "NodeSet",
    "divided_difference",
    "dirichlet_generator",
    "dirichlet_divdiff",
    "dirichlet_lattice",
    "l1_ball_lattice",
    "indicator_divdiff",
    "indicator_divdiff_averaged",
    "McEstimate",
    "l1_torus_mc",
    "l1_torus_tensor2",
    "radial_lattice_kernel",
    "radial_l1_transfer_check",
    "radial_l1_transfer_check_twosided",
    "FamilySpec",
    "spec_from_json",
    "spec_params",
    "family_symbol",
    "scaled_discrete",
    "default_alpha",
    "default_t_grid",
    "SweepRow",
    "SweepTable",
    "sweep_s1",
    "order_sweep",
    "fit_through_origin",
    "growth_fit",
    "CheckRow",
    "CheckReport",
    "check_all",
    "SCHEMA_VERSION",
    "format_float",
    "dumps_canonical",
    "dumps_csv",
]
