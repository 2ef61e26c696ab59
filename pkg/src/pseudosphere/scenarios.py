"""Named, reproducible numerical experiments.

Four groups:

* ``run_validation``: analytic benchmarks (box, harmonic oscillator),
  geometry oracle sweeps, algebraic identities, the two-route operator
  mismatch, a deliberate-mutation canary, the transformation-chain residual,
  and the Hermitian/direct cross-check, each reported pass/fail with the
  measured number.
* ``run_r_sweep`` / ``run_l_sweep``: the radius and orbital-number sweeps of
  the funnel spectra, with doublet and gap statistics.
* profile builders for the potential / mass figure exports.
* small shared helpers (default domain policy, doublet statistics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    SurfaceParams,
    christoffel,
    christoffel_oracle,
    curvature_oracle,
    gaussian_curvature,
    metric,
    metric_oracle,
    sqrt_metric_det,
)
from .model import (
    MassProfile,
    PotentialProfile,
    dacosta_potential,
    effective_potential,
    lambda_coefficients,
    laplace_beltrami_residual,
    mass_profile,
    pdm_effective_potential,
    radial_equation_residual,
    reconstruct_wavefunction,
)
from .eigensolver import (
    RadialGrid,
    Spectrum,
    build_operator,
    lowest_eigenvalues,
    nonhermitian_cross_check,
    solve_spectrum,
)

__all__ = [
    "ValidationCheck",
    "ValidationReport",
    "ScenarioResult",
    "default_u_max",
    "solve_scenario",
    "run_validation",
    "run_r_sweep",
    "run_l_sweep",
    "r_sweep_ladder",
    "doublet_gap_statistics",
    "doublet_splitting_stability",
    "transformation_chain_residuals",
    "box_benchmark",
    "oscillator_benchmark",
    "geometry_oracle_sweep",
    "profile_grid",
    "dacosta_profiles",
    "mass_profiles",
    "effective_profiles_by_radius",
    "effective_profiles_by_ell",
    "well_width",
    "figure_tables",
]


def default_u_max(R: float, ell: int) -> float:
    """Domain half-width policy: wide enough for the funnel scale R, but
    never narrower than the rim-well scale for low orbital numbers."""
    return max(10.0 * R, 10.0 / max(abs(ell), 1))


# ---------------------------------------------------------------------------
# Validation.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    measured: float
    threshold: str
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: measured {self.measured:.3e}, requires {self.threshold}{extra}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        n_fail = sum(not c.passed for c in self.checks)
        out.append(
            f"{len(self.checks) - n_fail}/{len(self.checks)} validation checks passed"
        )
        return out


def geometry_oracle_sweep(radii=(1.0, 2.0, 10.0), points: int = 50) -> dict:
    """Max relative deviations of every closed form from its oracle."""
    worst = {"metric": 0.0, "christoffel": 0.0, "curvature": 0.0, "dacosta": 0.0}
    for R in radii:
        p = SurfaceParams(R=R)
        # finite-difference steps must scale with R: every profile varies on
        # the length scale R, and a fixed absolute step turns roundoff-limited
        # for large R
        for u in np.linspace(0.1 * R, 5.0 * R, points):
            g = metric(u, p)
            g_fd = metric_oracle(u, p, h=1e-6 * R)
            worst["metric"] = max(
                worst["metric"],
                max(abs(a - b) / abs(a) for a, b in zip(g, g_fd)),
            )
            gam = christoffel(u, p)
            gam_fd = christoffel_oracle(u, p, h=1e-6 * R)
            worst["christoffel"] = max(
                worst["christoffel"],
                max(abs(a - b) / abs(a) for a, b in zip(gam, gam_fd)),
            )
            K_fd, H_fd = curvature_oracle(u, p, h=1e-4 * R)
            worst["curvature"] = max(
                worst["curvature"], abs(K_fd - gaussian_curvature(u, p)) * R**2
            )
            combo = -(p.hbar**2 / (2.0 * p.mass_star)) * (H_fd**2 - K_fd)
            v = dacosta_potential(u, p)
            worst["dacosta"] = max(worst["dacosta"], abs(combo - v) / abs(v))
    return worst


def box_benchmark(
    n: int = 4000, mode: str = "staggered-full", k: int = 5, hbar: float = 1.0, mass: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Particle in a unit-width box: computed vs analytic lowest-k levels.

    The staggered grid walls sit at +-u_max, the split grid's at 0 and
    u_max, so u_max is chosen per mode to keep the box width at exactly L.
    """
    L = 1.0
    grid = RadialGrid(L / 2.0 if mode == "staggered-full" else L, n, mode)
    op = build_operator(
        grid,
        lambda u: np.full_like(np.asarray(u, dtype=float), 1.0 / mass),
        lambda u: np.zeros_like(np.asarray(u, dtype=float)),
        hbar=hbar,
        # Constant coefficient: the bond straddling u = 0 integrates to the
        # same constant as everywhere else.
        coeff_integral_fn=lambda a, b: 1.0 / mass,
    )
    computed = lowest_eigenvalues(op, k)
    modes = np.arange(1, k + 1)
    analytic = (modes * math.pi / L) ** 2 * hbar**2 / (2.0 * mass)
    return computed, analytic


def oscillator_benchmark(
    n: int = 4000, k: int = 5, u_max: float = 12.0
) -> tuple[np.ndarray, np.ndarray]:
    """Unit harmonic oscillator: computed vs analytic lowest-k levels."""
    grid = RadialGrid(u_max, n, "staggered-full")
    op = build_operator(
        grid,
        lambda u: np.full_like(np.asarray(u, dtype=float), 1.0),
        lambda u: 0.5 * np.asarray(u, dtype=float) ** 2,
        hbar=1.0,
        coeff_integral_fn=lambda a, b: 1.0,
    )
    computed = lowest_eigenvalues(op, k)
    analytic = np.arange(k) + 0.5
    return computed, analytic


def _gaussian_bump_nodes(p: SurfaceParams, n: int = 4000):
    nodes = np.linspace(0.5 * p.R, 3.5 * p.R, n)
    center = 2.0 * p.R
    width = 0.5 * p.R
    psi = np.exp(-(((nodes - center) / width) ** 2))
    return nodes, psi


def transformation_chain_residuals(
    R: float = 1.0,
    ell: int = 5,
    n: int = 4000,
    k: int = 4,
    u_max: float | None = None,
    u_cut: float = 0.5,
    edge_fraction: float = 0.9,
    tol: float = 1e-10,
) -> list[float]:
    """Residual of the second-order radial equation for reconstructed
    eigenfunctions of the flux-form problem (split-half grid).

    The window [u_cut, edge_fraction * u_max] keeps the finite-difference
    stencil away from the rim prefactor blow-up and the far Dirichlet wall.
    """
    p = SurfaceParams(R=R)
    if u_max is None:
        u_max = default_u_max(R, ell)
    grid = RadialGrid(u_max, n, "split-half")
    spectrum = solve_spectrum(ell, p, grid, k=k, tol=tol, classify=False)
    nodes = grid.nodes
    i0 = int(np.searchsorted(nodes, u_cut))
    i_edge = int(np.searchsorted(nodes, edge_fraction * u_max))
    out = []
    for j in range(k):
        vec = spectrum.eigenvectors[j]
        # Past the state's numerical support the reconstructed psi is pure
        # round-off, yet the potential there is enormous; checking the
        # equation on that stretch would only amplify noise.
        support = np.nonzero(np.abs(vec) > 1e-8 * np.max(np.abs(vec)))[0]
        i1 = min(i_edge, int(support[-1]) + 1) if support.size else i_edge
        rec = reconstruct_wavefunction(vec, nodes, p)
        res = radial_equation_residual(
            rec.psi[i0:i1],
            float(spectrum.eigenvalues[j]),
            ell,
            p,
            nodes[i0:i1],
        )
        out.append(float(res))
    return out


def run_validation(n: int = 4000) -> ValidationReport:
    """Solver and formula trust anchors, aggregated pass/fail."""
    checks = []

    sweep = geometry_oracle_sweep()
    checks.append(
        ValidationCheck(
            "geometry.metric_vs_oracle", sweep["metric"] < 1e-8, sweep["metric"], "< 1e-8"
        )
    )
    checks.append(
        ValidationCheck(
            "geometry.christoffel_vs_oracle",
            sweep["christoffel"] < 1e-6,
            sweep["christoffel"],
            "< 1e-6",
        )
    )
    checks.append(
        ValidationCheck(
            "geometry.constant_curvature",
            sweep["curvature"] < 1e-5,
            sweep["curvature"],
            "< 1e-5",
        )
    )
    checks.append(
        ValidationCheck(
            "geometry.dacosta_from_curvatures",
            sweep["dacosta"] < 1e-5,
            sweep["dacosta"],
            "< 1e-5",
        )
    )

    rng = np.random.default_rng(20240817)
    worst_l3 = 0.0
    worst_mass = 0.0
    for R in (1.0, 3.0, 10.0):
        p = SurfaceParams(R=R)
        us = rng.uniform(0.01 * R, 8.0 * R, 333) * rng.choice([-1.0, 1.0], 333)
        _, _, l3 = lambda_coefficients(us, 0, p)
        v = dacosta_potential(us, p)
        worst_l3 = max(worst_l3, float(np.max(np.abs((l3 - v) / v))))
        l1 = lambda_coefficients(us, 0, p)[0]
        worst_mass = max(
            worst_mass,
            float(np.max(np.abs(mass_profile(us, p) * l1 / p.mass_star - 1.0))),
        )
    checks.append(
        ValidationCheck(
            "model.lambda3_equals_dacosta_at_ell0",
            worst_l3 < 1e-13,
            worst_l3,
            "< 1e-13",
        )
    )
    checks.append(
        ValidationCheck(
            "model.mass_times_lambda1_is_mstar",
            worst_mass < 1e-13,
            worst_mass,
            "< 1e-13",
        )
    )

    p1 = SurfaceParams(R=1.0)
    h_fd = 1e-5
    worst_coeff = 0.0
    for u in np.linspace(0.3, 5.0, 40):
        w = lambda uu: sqrt_metric_det(uu, p1) * coth_sq(uu, p1)
        d = (w(u + h_fd) - w(u - h_fd)) / (2.0 * h_fd)
        lhs = d / sqrt_metric_det(u, p1)
        rhs = -np.cosh(u) ** 3 / np.sinh(u) ** 3 / p1.R
        worst_coeff = max(worst_coeff, abs(lhs - rhs) / abs(rhs))
    checks.append(
        ValidationCheck(
            "model.flux_coefficient_identity",
            worst_coeff < 1e-6,
            worst_coeff,
            "< 1e-6",
            "(1/sqrt g) d(sqrt g g^uu)/du = -coth^3(u/R)/R",
        )
    )

    box_n, box_exact = box_benchmark(n=n)
    box_err = np.max(np.abs(box_n - box_exact) / box_exact)
    checks.append(
        ValidationCheck("solver.box_levels", box_err < 1e-3, float(box_err), "< 1e-3")
    )
    osc_n, osc_exact = oscillator_benchmark(n=n)
    osc_err = np.max(np.abs(osc_n - osc_exact) / osc_exact)
    checks.append(
        ValidationCheck(
            "solver.oscillator_levels", osc_err < 1e-3, float(osc_err), "< 1e-3"
        )
    )
    box_h, _ = box_benchmark(n=n // 2)
    ratios = np.abs(box_h - box_exact) / np.abs(box_n - box_exact)
    ratio_lo, ratio_hi = float(np.min(ratios)), float(np.max(ratios))
    checks.append(
        ValidationCheck(
            "solver.second_order_convergence",
            3.5 <= ratio_lo and ratio_hi <= 4.5,
            ratio_hi,
            "error ratios in [3.5, 4.5]",
            f"min ratio {ratio_lo:.3f}",
        )
    )

    nodes, psi = _gaussian_bump_nodes(p1, n=n)
    mismatch = laplace_beltrami_residual(psi, 0.3, 2, p1, nodes)
    checks.append(
        ValidationCheck(
            "model.operator_assembly_mismatch",
            mismatch < 1e-6,
            mismatch,
            "< 1e-6",
            "Gaussian bump, two independent assemblies",
        )
    )
    mutated = laplace_beltrami_residual(psi, 0.3, 2, p1, nodes, lambda2_sign=-1.0)
    checks.append(
        ValidationCheck(
            "model.mutation_canary_detects_broken_drift",
            mutated > max(1e3 * mismatch, 1e-3),
            mutated,
            "> 1e3 x baseline",
            "flipped first-derivative sign must blow up the mismatch",
        )
    )

    res_fine = transformation_chain_residuals(n=n)
    res_coarse = transformation_chain_residuals(n=n // 2)
    worst_res = max(res_fine)
    orders = [
        math.log2(rc / rf) if rf > 0 else math.inf
        for rc, rf in zip(res_coarse, res_fine)
    ]
    checks.append(
        ValidationCheck(
            "model.transformation_chain_residual",
            worst_res < 1e-3,
            worst_res,
            "< 1e-3",
            "4 lowest states, R=1, ell=5",
        )
    )
    checks.append(
        ValidationCheck(
            "model.chain_residual_refinement_order",
            min(orders) >= 1.8,
            min(orders),
            ">= 1.8",
        )
    )

    cross = nonhermitian_cross_check(
        5, p1, RadialGrid(10.0, max(n // 2, 1000), "split-half"), k=4
    )
    checks.append(
        ValidationCheck(
            "solver.cross_check_mismatch",
            cross.max_rel_mismatch < 1e-2,
            cross.max_rel_mismatch,
            "< 1e-2",
            "flux form vs direct second-order form",
        )
    )
    checks.append(
        ValidationCheck(
            "solver.cross_check_reality",
            cross.reality_certified and cross.max_abs_imag < 1e-8,
            cross.max_abs_imag,
            "certified real, imag < 1e-8",
        )
    )

    return ValidationReport(checks=tuple(checks))


def coth_sq(u, p: SurfaceParams):
    """Inverse-metric component g^{uu} = coth^2(u/R) (helper for checks)."""
    return float(1.0 / np.tanh(np.asarray(u, dtype=float) / p.R) ** 2)


# ---------------------------------------------------------------------------
# Scenario results.
# ---------------------------------------------------------------------------


@dataclass
class ScenarioResult:
    """One solved configuration plus everything reported about it.

    The statistics are all recomputable from the embedded spectrum; the
    spectrum itself (eigenvectors included) stays out of the serialized
    form, which carries eigenvalues, classifications and statistics only.
    """

    scenario: str
    parameters: dict
    eigenvalues: list
    classifications: list
    gaps: list
    doublet_splittings: list
    statistics: dict
    profile_files: dict = field(default_factory=dict)
    spectrum: Spectrum | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "parameters": dict(self.parameters),
            "eigenvalues": list(self.eigenvalues),
            "classifications": list(self.classifications),
            "gaps": list(self.gaps),
            "doublet_splittings": list(self.doublet_splittings),
            "statistics": dict(self.statistics),
            "profile_files": dict(self.profile_files),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioResult":
        return cls(
            scenario=d["scenario"],
            parameters=dict(d["parameters"]),
            eigenvalues=list(d["eigenvalues"]),
            classifications=list(d["classifications"]),
            gaps=list(d["gaps"]),
            doublet_splittings=list(d["doublet_splittings"]),
            statistics=dict(d["statistics"]),
            profile_files=dict(d.get("profile_files", {})),
        )


def _inner_half_probability(v: np.ndarray, grid: RadialGrid) -> float:
    prob = v * v
    inner = prob[np.abs(grid.nodes) <= grid.u_max / 2.0].sum()
    return float(inner / prob.sum())


def doublet_gap_statistics(physical_eigenvalues) -> dict:
    """Doublet splittings and the two leading inter-doublet gaps.

    States are paired in order: (0,1), (2,3), (4,5).  delta1 is the distance
    between the first two doublet midpoints; delta2 the distance from the
    second midpoint to the next midpoint (or single state when only five
    levels exist).  Statistics that need more levels than supplied are None,
    never NaN, so results stay JSON-round-trippable by equality.
    """
    e = [float(x) for x in physical_eigenvalues]
    out = {
        "splitting01": None,
        "splitting23": None,
        "delta1": None,
        "delta2": None,
        "anharmonicity": None,
    }
    if len(e) >= 2:
        out["splitting01"] = e[1] - e[0]
    if len(e) >= 4:
        out["splitting23"] = e[3] - e[2]
        mid0 = (e[0] + e[1]) / 2.0
        mid1 = (e[2] + e[3]) / 2.0
        out["delta1"] = mid1 - mid0
        if len(e) >= 6:
            out["delta2"] = (e[4] + e[5]) / 2.0 - mid1
        elif len(e) >= 5:
            out["delta2"] = e[4] - mid1
        if out["delta2"] is not None:
            out["anharmonicity"] = abs(out["delta1"] - out["delta2"]) / max(
                abs(out["delta1"]), abs(out["delta2"])
            )
    return out


def solve_scenario(
    scenario: str,
    R: float,
    ell: int,
    n: int = 4000,
    k: int = 8,
    tol: float = 1e-10,
    u_max: float | None = None,
    mode: str = "staggered-full",
    hbar: float = 1.0,
    mass_star: float = 1.0,
) -> ScenarioResult:
    """Solve one named configuration and package spectrum plus statistics."""
    p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
    if u_max is None:
        u_max = default_u_max(R, ell)
    grid = RadialGrid(u_max, n, mode)
    spectrum = solve_spectrum(ell, p, grid, k=k, tol=tol)

    physical_idx = [
        i for i, c in enumerate(spectrum.classifications) if c != "rim-artifact"
    ]
    physical_e = [float(spectrum.eigenvalues[i]) for i in physical_idx]
    physical_c = [spectrum.classifications[i] for i in physical_idx]
    bound_idx = [i for i in physical_idx if spectrum.classifications[i] == "bound"]

    stats = {
        "artifact_count": len(spectrum.eigenvalues) - len(physical_idx),
        "bound_count": len(bound_idx),
        "physical_eigenvalues": physical_e,
        "physical_classifications": physical_c,
    }
    stats.update(doublet_gap_statistics(physical_e))
    if len(physical_e) >= 3 and physical_e[2] - physical_e[1] > 0.0:
        stats["splitting_to_next_gap_ratio"] = (physical_e[1] - physical_e[0]) / (
            physical_e[2] - physical_e[1]
        )
    else:
        stats["splitting_to_next_gap_ratio"] = None
    stats["lowest_two_physical_bound"] = (
        len(physical_c) >= 2 and physical_c[0] == "bound" and physical_c[1] == "bound"
    )
    if bound_idx:
        stats["confinement"] = _inner_half_probability(
            spectrum.eigenvectors[bound_idx[0]], grid
        )
        stats["min_bound_energy"] = float(spectrum.eigenvalues[bound_idx[0]])
    else:
        stats["confinement"] = None
        stats["min_bound_energy"] = None

    return ScenarioResult(
        scenario=scenario,
        parameters={
            "R": float(R),
            "ell": int(ell),
            "hbar": p.hbar,
            "mass_star": p.mass_star,
            "u_max": float(u_max),
            "n": int(n),
            "mode": mode,
            "k": int(k),
            "tol": float(tol),
        },
        eigenvalues=[float(x) for x in spectrum.eigenvalues],
        classifications=list(spectrum.classifications),
        gaps=[float(x) for x in spectrum.gaps],
        doublet_splittings=[float(x) for x in spectrum.doublet_splittings],
        statistics=stats,
        spectrum=spectrum,
    )


def run_r_sweep(
    radii=(1.0, 10.0, 20.0),
    ell: int = 0,
    n: int = 4000,
    k: int = 8,
    tol: float = 1e-10,
    hbar: float = 1.0,
    mass_star: float = 1.0,
) -> list[ScenarioResult]:
    """Spectra at fixed orbital number for several funnel radii."""
    return [
        solve_scenario(
            f"r_sweep_R{R:g}", R, ell, n, k, tol, hbar=hbar, mass_star=mass_star
        )
        for R in radii
    ]


def r_sweep_ladder(results: list[ScenarioResult]) -> dict:
    """The qualitative radius-ladder claims, one boolean per clause.

    Clause 1: smallest radius shows no bound states among its lowest
    (non-artifact) levels.  Clause 2: middle radius's lowest two levels are
    bound and nearly degenerate (splitting under 10% of the gap up).
    Clause 3: largest radius's bound states are more confined than the
    middle one's.
    """
    by_R = sorted(results, key=lambda r: r.parameters["R"])
    small, mid, large = by_R[0], by_R[-2], by_R[-1]
    ratio = mid.statistics["splitting_to_next_gap_ratio"]
    out = {
        "small_R_all_propagating": small.statistics["bound_count"] == 0,
        "mid_R_lowest_two_bound": bool(mid.statistics["lowest_two_physical_bound"]),
        "mid_R_near_degenerate": bool(
            mid.statistics["lowest_two_physical_bound"]
            and ratio is not None
            and ratio < 0.1
        ),
        "large_R_more_confined": bool(
            large.statistics["confinement"] is not None
            and mid.statistics["confinement"] is not None
            and large.statistics["confinement"] > mid.statistics["confinement"]
        ),
        "small_R": small.parameters["R"],
        "mid_R": mid.parameters["R"],
        "large_R": large.parameters["R"],
    }
    return out


def run_l_sweep(
    ells=(0, 5, 10),
    R: float = 1.0,
    n: int = 4000,
    k: int = 12,
    tol: float = 1e-10,
    hbar: float = 1.0,
    mass_star: float = 1.0,
) -> list[ScenarioResult]:
    """Spectra at fixed radius for several orbital numbers."""
    return [
        solve_scenario(
            f"l_sweep_ell{ell}", R, ell, n, k, tol, hbar=hbar, mass_star=mass_star
        )
        for ell in ells
    ]


def doublet_splitting_stability(
    R: float = 1.0, ell: int = 5, n: int = 4000, k: int = 8, tol: float = 1e-10
) -> dict:
    """First physical doublet splitting at n and 2n node counts."""

    def first_splitting(nn: int) -> float:
        res = solve_scenario("stability", R, ell, nn, k, tol)
        s = res.statistics["splitting01"]
        if s is None:
            raise RuntimeError("fewer than two non-artifact states resolved")
        return float(s)

    s_n = first_splitting(n)
    s_2n = first_splitting(2 * n)
    return {
        "splitting_n": s_n,
        "splitting_2n": s_2n,
        "rel_change": abs(s_2n - s_n) / max(abs(s_n), np.finfo(float).tiny),
    }


# ---------------------------------------------------------------------------
# Profile exports.
# ---------------------------------------------------------------------------


def profile_grid(u_max: float, points_per_side: int = 2000) -> np.ndarray:
    """Symmetric grid +-u_max with the rim point removed.

    Node values are u_max * j / points_per_side, so u = 1 lands exactly on a
    node whenever u_max divides evenly into the chosen resolution.
    """
    j = np.arange(-points_per_side, points_per_side + 1)
    j = j[j != 0]
    return u_max * j / points_per_side


def dacosta_profiles(
    radii=(1.0, 10.0, 100.0), hbar: float = 1.0, mass_star: float = 1.0
) -> dict:
    out = {}
    for R in radii:
        p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
        u = profile_grid(10.0 * R)
        out[f"dacosta_R{R:g}"] = PotentialProfile(
            label="dacosta", u_values=u, v_values=dacosta_potential(u, p)
        )
    return out


def mass_profiles(
    radii=(1.0, 5.0, 10.0), hbar: float = 1.0, mass_star: float = 1.0
) -> dict:
    out = {}
    for R in radii:
        p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
        u = profile_grid(10.0 * R)
        out[f"mass_R{R:g}"] = MassProfile(
            u_values=u, m_values=mass_profile(u, p), mass_star=p.mass_star
        )
    return out


def effective_profiles_by_radius(
    radii=(1.0, 5.0, 10.0), ell: int = 0, hbar: float = 1.0, mass_star: float = 1.0
) -> dict:
    out = {}
    for R in radii:
        p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
        u = profile_grid(10.0 * R)
        out[f"veff_R{R:g}_ell{ell}"] = PotentialProfile(
            label="effective", u_values=u, v_values=effective_potential(u, ell, p)
        )
    return out


def effective_profiles_by_ell(
    ells=(0, 5, 10), R: float = 1.0, hbar: float = 1.0, mass_star: float = 1.0
) -> dict:
    p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
    u = profile_grid(10.0 * R)
    return {
        f"veff_R{R:g}_ell{ell}": PotentialProfile(
            label="effective", u_values=u, v_values=effective_potential(u, ell, p)
        )
        for ell in ells
    }


def well_width(R: float, hbar: float = 1.0, mass_star: float = 1.0) -> float:
    """Width of the rim well of the flux-form potential at ell = 0.

    The potential dives to -inf at the rim and again far down the funnel,
    with one hump on each side separating the two regimes; the width is the
    distance between those humps.  It scales linearly with R, which makes
    the "well widens with R" claim quantitative.
    """
    p = SurfaceParams(R=R, hbar=hbar, mass_star=mass_star)
    x = np.linspace(1e-3, 5.0, 20000)
    v = pdm_effective_potential(x * R, 0, p)
    i = int(np.argmax(v))
    if i == 0 or i == x.size - 1:
        raise RuntimeError("no interior hump found; widen the search window")
    return 2.0 * R * float(x[i])


def figure_tables(fig: str) -> dict:
    """Profile tables (and statistics) behind each figure reproduction."""
    if fig == "fig2":
        return {"tables": dacosta_profiles(), "statistics": {}}
    if fig == "fig3":
        return {"tables": mass_profiles(), "statistics": {}}
    if fig == "fig4":
        tables = {}
        tables.update(effective_profiles_by_radius())
        tables.update(effective_profiles_by_ell())
        widths = {f"well_width_R{R:g}": well_width(R) for R in (1.0, 5.0, 10.0)}
        return {"tables": tables, "statistics": widths}
    raise ValueError(f"unknown figure key {fig!r}")
