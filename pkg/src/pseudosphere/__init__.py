"""Quantum mechanics of an electron bound to a Beltrami funnel surface.

The package splits into four layers:

* :mod:`pseudosphere.geometry` -- embedding, metric, connection, curvatures,
  plus finite-difference oracles rebuilt from the embedding alone.
* :mod:`pseudosphere.model` -- curvature-induced potential, radial-equation
  coefficients, effective potentials, position-dependent mass, wavefunction
  reconstruction and residual oracles.
* :mod:`pseudosphere.eigensolver` -- flux-conservative tridiagonal
  discretization, Sturm bisection eigenvalues, inverse-iteration
  eigenvectors, state classification, and a non-Hermitian cross-check.
* :mod:`pseudosphere.scenarios` -- validation suite, radius / orbital-number
  sweeps, and the profile tables behind the figure reproductions.
"""

from .geometry import (
    GeometryPoint,
    SingularCoordinateError,
    SurfaceParams,
    christoffel,
    christoffel_oracle,
    curvature_oracle,
    embed,
    gaussian_curvature,
    geometry_point,
    mean_curvature,
    metric,
    metric_oracle,
    sqrt_metric_det,
)
from .model import (
    ContinuumAdvisory,
    GridTooCoarseError,
    MassProfile,
    PotentialProfile,
    ReconstructedWavefunction,
    continuum_limit_check,
    dacosta_potential,
    effective_potential,
    flux_scale_factor,
    kinetic_coefficient,
    kinetic_coefficient_integral,
    lambda_coefficients,
    laplace_beltrami_residual,
    mass_profile,
    pdm_effective_potential,
    radial_equation_residual,
    reconstruct_wavefunction,
    scale_factor_s,
)
from .eigensolver import (
    ConvergenceError,
    CrossCheckResult,
    RadialGrid,
    Spectrum,
    TridiagonalOperator,
    build_operator,
    classify_state,
    discretize,
    eigenvector,
    gershgorin_bounds,
    interior_sign_changes,
    lowest_eigenvalues,
    nonhermitian_cross_check,
    solve_spectrum,
    sturm_count,
)
from .scenarios import (
    ScenarioResult,
    ValidationCheck,
    ValidationReport,
    default_u_max,
    doublet_gap_statistics,
    doublet_splitting_stability,
    figure_tables,
    run_l_sweep,
    run_r_sweep,
    r_sweep_ladder,
    run_validation,
    solve_scenario,
    transformation_chain_residuals,
    well_width,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # geometry
    "GeometryPoint",
    "SingularCoordinateError",
    "SurfaceParams",
    "christoffel",
    "christoffel_oracle",
    "curvature_oracle",
    "embed",
    "gaussian_curvature",
    "geometry_point",
    "mean_curvature",
    "metric",
    "metric_oracle",
    "sqrt_metric_det",
    # model
    "ContinuumAdvisory",
    "GridTooCoarseError",
    "MassProfile",
    "PotentialProfile",
    "ReconstructedWavefunction",
    "continuum_limit_check",
    "dacosta_potential",
    "effective_potential",
    "flux_scale_factor",
    "kinetic_coefficient",
    "kinetic_coefficient_integral",
    "lambda_coefficients",
    "laplace_beltrami_residual",
    "mass_profile",
    "pdm_effective_potential",
    "radial_equation_residual",
    "reconstruct_wavefunction",
    "scale_factor_s",
    # eigensolver
    "ConvergenceError",
    "CrossCheckResult",
    "RadialGrid",
    "Spectrum",
    "TridiagonalOperator",
    "build_operator",
    "classify_state",
    "discretize",
    "eigenvector",
    "gershgorin_bounds",
    "interior_sign_changes",
    "lowest_eigenvalues",
    "nonhermitian_cross_check",
    "solve_spectrum",
    "sturm_count",
    # scenarios
    "ScenarioResult",
    "ValidationCheck",
    "ValidationReport",
    "default_u_max",
    "doublet_gap_statistics",
    "doublet_splitting_stability",
    "figure_tables",
    "run_l_sweep",
    "run_r_sweep",
    "r_sweep_ladder",
    "run_validation",
    "solve_scenario",
    "transformation_chain_residuals",
    "well_width",
]
