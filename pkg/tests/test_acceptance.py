"""Acceptance gates, one test per criterion.

Each test prints a single ``ACCEPT <nn> <name> PASS|FAIL`` line (visible with
-s, or in the captured output of a failing test) and then asserts, so the
suite doubles as a checklist.  Criterion 08 is expected to fail: with the
default radius-proportional solve window the zero-orbital-number problem is
exactly scale invariant, so no radius ladder can appear (see the commentary
in test_criterion_08).
"""

import math
import time

import numpy as np

from pseudosphere.cli import main
from pseudosphere.eigensolver import RadialGrid, nonhermitian_cross_check
from pseudosphere.geometry import SurfaceParams
from pseudosphere.model import dacosta_potential, lambda_coefficients, mass_profile
from pseudosphere.scenarios import (
    box_benchmark,
    geometry_oracle_sweep,
    mass_profiles,
    oscillator_benchmark,
    r_sweep_ladder,
    run_l_sweep,
    run_r_sweep,
    transformation_chain_residuals,
    well_width,
)


def emit(number: int, name: str, ok: bool, detail: str) -> str:
    line = f"ACCEPT {number:02d} {name} {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    return line


def rel_err(got, want):
    got, want = np.asarray(got, dtype=float), np.asarray(want, dtype=float)
    return np.abs(got - want) / np.maximum(np.abs(want), np.finfo(float).tiny)


def test_criterion_01_geometry_oracle():
    t0 = time.perf_counter()
    worst = geometry_oracle_sweep(radii=(1.0, 2.0, 10.0), points=50)
    elapsed = time.perf_counter() - t0
    bad = max(worst["metric"], worst["christoffel"])
    ok = bad < 1e-6 and elapsed < 1.0
    line = emit(1, "geometry-oracle", ok, f"worst {bad:.3g} < 1e-6, {elapsed:.2f}s < 1s")
    assert ok, line


def test_criterion_02_constant_curvature():
    worst = geometry_oracle_sweep(radii=(1.0, 2.0, 10.0), points=50)["curvature"]
    ok = worst < 1e-5
    line = emit(2, "constant-curvature", ok, f"worst {worst:.3g} < 1e-5")
    assert ok, line


def test_criterion_03_dacosta_consistency():
    worst = geometry_oracle_sweep(radii=(1.0, 2.0, 10.0), points=50)["dacosta"]
    ok = worst < 1e-5
    line = emit(3, "dacosta-from-curvature-oracle", ok, f"worst {worst:.3g} < 1e-5")
    assert ok, line


def test_criterion_04_algebraic_identities():
    rng = np.random.default_rng(90210)
    worst_dc = 0.0
    worst_mass = 0.0
    for _ in range(1000):
        p = SurfaceParams(
            R=rng.uniform(0.5, 10.0),
            hbar=rng.uniform(0.5, 2.0),
            mass_star=rng.uniform(0.5, 3.0),
        )
        u = rng.choice([-1.0, 1.0]) * rng.uniform(0.05 * p.R, 8.0 * p.R)
        _, _, l3 = lambda_coefficients(u, 0, p)
        vdc = dacosta_potential(u, p)
        worst_dc = max(worst_dc, float(rel_err(l3, vdc)))
        l1 = lambda_coefficients(u, 0, p)[0]
        worst_mass = max(
            worst_mass, abs(mass_profile(u, p) * l1 - p.mass_star) / p.mass_star
        )
    ok = worst_dc < 1e-13 and worst_mass < 1e-13
    line = emit(
        4,
        "coefficient-identities",
        ok,
        f"lambda3|l=0 vs dacosta {worst_dc:.3g}, M*Lambda1 vs m* {worst_mass:.3g},"
        f" both < 1e-13 at 1000 random points",
    )
    assert ok, line


def test_criterion_05_solver_trust_anchors():
    t0 = time.perf_counter()
    errs = {}
    for name, bench in (("box", box_benchmark), ("oscillator", oscillator_benchmark)):
        got_f, exact = bench(n=4000, k=5)
        got_c, _ = bench(n=2000, k=5)
        e_fine = rel_err(got_f, exact)
        e_coarse = rel_err(got_c, exact)
        errs[name] = (float(e_fine.max()), e_coarse / e_fine)
    elapsed = time.perf_counter() - t0
    worst = max(v[0] for v in errs.values())
    ratios = np.concatenate([v[1] for v in errs.values()])
    ok = worst < 1e-3 and np.all((ratios > 3.5) & (ratios < 4.5)) and elapsed < 5.0
    line = emit(
        5,
        "box-and-oscillator",
        ok,
        f"worst rel err {worst:.3g} < 1e-3, halving ratios"
        f" [{ratios.min():.2f}, {ratios.max():.2f}] in [3.5, 4.5], {elapsed:.2f}s < 5s",
    )
    assert ok, line


def test_criterion_06_transformation_chain():
    fine = transformation_chain_residuals(R=1.0, ell=5, n=4000, k=4)
    coarse = transformation_chain_residuals(R=1.0, ell=5, n=2000, k=4)
    orders = [math.log2(c / f) for c, f in zip(coarse, fine)]
    ok = max(fine) < 1e-3 and min(orders) >= 1.8
    line = emit(
        6,
        "chain-residual",
        ok,
        f"max residual {max(fine):.3g} < 1e-3, min order {min(orders):.2f} >= 1.8",
    )
    assert ok, line


def test_criterion_07_cross_check_and_reality():
    p = SurfaceParams(R=1.0)
    cross = nonhermitian_cross_check(5, p, RadialGrid(10.0, 4000, "split-half"), k=4)
    ok = (
        cross.max_rel_mismatch < 1e-2
        and cross.reality_certified
        and cross.max_abs_imag < 1e-8
    )
    line = emit(
        7,
        "flux-vs-direct-forms",
        ok,
        f"mismatch {cross.max_rel_mismatch:.3g} < 1e-2, reality certified,"
        f" max |imag| {cross.max_abs_imag:.3g} < 1e-8",
    )
    assert ok, line


def test_criterion_08_radius_ladder():
    # Expected to FAIL, and the failure is a finding, not a bug: at zero
    # orbital number the Hamiltonian with the default window u_max = 10 R
    # rescales exactly as 1/R^2 (same dimensionless problem for every R),
    # so eigenvalues at R = 1, 10, 20 are identical up to that factor,
    # classifications match level by level, and no bound/propagating ladder
    # or confinement trend can emerge.  Sub-checks print individually so the
    # one genuine clause stays visible.
    t0 = time.perf_counter()
    results = run_r_sweep(radii=(1.0, 10.0, 20.0), ell=0, n=4000, k=8)
    ladder = r_sweep_ladder(results)
    elapsed = time.perf_counter() - t0
    clauses = {
        "8a small-R all propagating": ladder["small_R_all_propagating"],
        "8b mid-R bound near-degenerate pair": bool(
            ladder["mid_R_lowest_two_bound"] and ladder["mid_R_near_degenerate"]
        ),
        "8c large-R more confined than mid-R": ladder["large_R_more_confined"],
    }
    for name, passed in clauses.items():
        print(f"    {name}: {'PASS' if passed else 'FAIL'}")
    ok = all(clauses.values()) and elapsed < 30.0
    line = emit(
        8,
        "radius-ladder",
        ok,
        f"{sum(clauses.values())}/3 clauses, {elapsed:.2f}s < 30s",
    )
    assert ok, line


def test_criterion_09_doublet_structure():
    results = run_l_sweep(ells=(5, 10), R=1.0, n=4000, k=12)
    by_ell = {r.parameters["ell"]: r.statistics for r in results}
    checks = []
    for ell in (5, 10):
        st = by_ell[ell]
        gap01 = st["delta1"]
        gap23 = min(st["delta1"], st["delta2"])
        checks += [
            st["bound_count"] >= 5,
            st["splitting01"] < 0.1 * gap01,
            st["splitting23"] < 0.1 * gap23,
            st["anharmonicity"] > 0.01,
        ]
    checks.append(by_ell[10]["min_bound_energy"] > by_ell[5]["min_bound_energy"])
    ok = all(checks)
    line = emit(
        9,
        "orbital-doublets",
        ok,
        f"bound counts {by_ell[5]['bound_count']}/{by_ell[10]['bound_count']} >= 5,"
        f" splitting ratios {by_ell[5]['splitting01'] / by_ell[5]['delta1']:.2g} and"
        f" {by_ell[10]['splitting01'] / by_ell[10]['delta1']:.2g} < 0.1,"
        f" anharmonicity {by_ell[5]['anharmonicity']:.3f}/{by_ell[10]['anharmonicity']:.3f} > 0.01,"
        f" min E ordering {by_ell[5]['min_bound_energy']:.4g} < {by_ell[10]['min_bound_energy']:.4g}",
    )
    assert ok, line


def test_criterion_10_profile_exports(tmp_path, capsys):
    outdir = tmp_path / "profiles"
    for fig in ("fig2", "fig3", "fig4"):
        assert main(["reproduce", fig, "--out", str(outdir)]) == 0
    first = {p.name: p.read_bytes() for p in sorted(outdir.iterdir())}
    for fig in ("fig2", "fig3", "fig4"):
        assert main(["reproduce", fig, "--out", str(outdir)]) == 0
    second = {p.name: p.read_bytes() for p in sorted(outdir.iterdir())}
    deterministic = first == second and len(first) >= 12

    widths = [well_width(R) for R in (1.0, 5.0, 10.0)]
    monotone = widths[0] < widths[1] < widths[2]

    mass_ok = True
    edge_worst = 0.0
    for prof in mass_profiles().values():
        mass_ok &= bool(np.all(prof.m_values > 0.0))
        mass_ok &= bool(np.all(prof.m_values <= prof.mass_star))
        edge = max(
            abs(prof.m_values[0] - prof.mass_star),
            abs(prof.m_values[-1] - prof.mass_star),
        )
        edge_worst = max(edge_worst, edge)
    mass_ok &= edge_worst < 1e-6

    capsys.readouterr()
    ok = deterministic and monotone and mass_ok
    line = emit(
        10,
        "profile-exports",
        ok,
        f"{len(first)} files byte-identical on rerun, well widths"
        f" {widths[0]:.3g} < {widths[1]:.3g} < {widths[2]:.3g},"
        f" mass within (0, m*] and edges within {edge_worst:.3g} of m*",
    )
    assert ok, line
