"""Desk-scale numerical toolkit for Young-Fenchel conjugate calculus,
weight families, weighted seminorms, and Fourier-transform bounds.

Layers, bottom up:

- :mod:`fenchellab.grid` — extended reals, multi-indices, tensor grids;
- :mod:`fenchellab.search` — deterministic concave maximization;
- :mod:`fenchellab.conjugate` — grid Legendre conjugates (brute, fast, n-d);
- :mod:`fenchellab.logconj` — log-substituted conjugates, lattice tables,
  factorial series, duality gaps;
- :mod:`fenchellab.weights` — weight families, class membership, growth
  condition constants;
- :mod:`fenchellab.mollify` — bump-kernel smoothing and the raw-vs-mollified
  comparison chain;
- :mod:`fenchellab.testfunctions` — polynomial-Gaussian test functions;
- :mod:`fenchellab.seminorms` — the four seminorm families, Taylor
  extension, embedding-chain and equivalence checks;
- :mod:`fenchellab.fourier` — quadrature transforms and transform bounds;
- :mod:`fenchellab.report`, :mod:`fenchellab.suite`, :mod:`fenchellab.cli`
  — check records, verification pipelines, command-line runner.
"""

from .conjugate import biconjugate, brute_conjugate, conjugate_nd, fast_conjugate_1d
from .fourier import (
    QuadratureSpec,
    SurfaceConstant,
    TransformResult,
    derivative_transform,
    derivative_transform_at,
    fourier,
    fourier_at,
    inverse_fourier,
    parseval_residual,
    surface_constant,
    transform_axes,
    transform_to_csv,
    verify_pointwise_transform_bound,
    verify_theorem3_bound,
)
from .grid import (
    ExtendedReal,
    GridFunction,
    MultiIndex,
    POS_INF,
    multi_indices_of_order,
    multi_indices_up_to,
)
from .logconj import (
    ConjugateTable,
    SeparableWeight,
    SeriesReport,
    discrete_log_conjugate,
    duality_gap,
    lattice_conjugate_table,
    log_substitute,
    pointwise_conjugate,
    series_partial_sums,
)
from .mollify import (
    MollifierKernel,
    MollifyChainReport,
    bump_mollifier,
    mollify,
    verify_mollify_chain,
)
from .report import ANCHOR_REGISTRY, CheckRecord, VerificationReport
from .search import MaxResult, SearchConfig, SearchError, golden_section_max, maximize_concave
from .seminorms import (
    conjugate_weight,
    default_complex_grid,
    default_lattice_bound,
    default_real_axes,
    derivative_factorial_decay,
    g_seminorm,
    hspace_sandwich,
    lattice_subadditivity,
    log_linear_constant,
    p_seminorm,
    q_seminorm,
    rho_seminorm,
    series_ratio_sum,
    stirling_binomial_check,
    taylor_extend,
    verify_embedding_chain,
    verify_theorem4_equivalence,
)
from .suite import (
    FAMILY_PROFILES,
    PlotSeries,
    SuiteResult,
    builtin_test_functions,
    emit_plot_data,
    run_conjugate,
    run_duality,
    run_embedding,
    run_family_check,
    run_fourier,
    run_full_suite,
    run_seminorm,
)
from .testfunctions import (
    TestFunction,
    gaussian,
    hermite_gaussian,
    poly_gaussian,
    product,
    test_function_from_json,
    test_function_to_json,
    zero,
)
from .weights import (
    ClassAReport,
    ConstantEstimate,
    WeightFamily,
    WeightFunction,
    check_class_A,
    estimate_condition_constant,
    family_from_json,
    family_to_json,
    make_radial_family,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # grid
    "ExtendedReal", "GridFunction", "MultiIndex", "POS_INF",
    "multi_indices_of_order", "multi_indices_up_to",
    # search
    "MaxResult", "SearchConfig", "SearchError", "golden_section_max",
    "maximize_concave",
    # conjugate
    "biconjugate", "brute_conjugate", "conjugate_nd", "fast_conjugate_1d",
    # logconj
    "ConjugateTable", "SeparableWeight", "SeriesReport",
    "discrete_log_conjugate", "duality_gap", "lattice_conjugate_table",
    "log_substitute", "pointwise_conjugate", "series_partial_sums",
    # weights
    "ClassAReport", "ConstantEstimate", "WeightFamily", "WeightFunction",
    "check_class_A", "estimate_condition_constant", "family_from_json",
    "family_to_json", "make_radial_family",
    # mollify
    "MollifierKernel", "MollifyChainReport", "bump_mollifier", "mollify",
    "verify_mollify_chain",
    # test functions
    "TestFunction", "gaussian", "hermite_gaussian", "poly_gaussian",
    "product", "test_function_from_json", "test_function_to_json", "zero",
    # seminorms
    "conjugate_weight", "default_complex_grid", "default_lattice_bound",
    "default_real_axes", "derivative_factorial_decay", "g_seminorm",
    "hspace_sandwich", "lattice_subadditivity", "log_linear_constant",
    "p_seminorm", "q_seminorm", "rho_seminorm", "series_ratio_sum",
    "stirling_binomial_check", "taylor_extend", "verify_embedding_chain",
    "verify_theorem4_equivalence",
    # fourier
    "QuadratureSpec", "SurfaceConstant", "TransformResult",
    "derivative_transform", "derivative_transform_at", "fourier",
    "fourier_at", "inverse_fourier", "parseval_residual", "surface_constant",
    "transform_axes", "transform_to_csv", "verify_pointwise_transform_bound",
    "verify_theorem3_bound",
    # report / suite
    "ANCHOR_REGISTRY", "CheckRecord", "VerificationReport",
    "FAMILY_PROFILES", "PlotSeries", "SuiteResult", "builtin_test_functions",
    "emit_plot_data", "run_conjugate", "run_duality", "run_embedding",
    "run_family_check", "run_fourier", "run_full_suite", "run_seminorm",
]
