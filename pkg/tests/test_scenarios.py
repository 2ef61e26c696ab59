"""Named experiment runs: validation report, sweeps, profile exports, and
the serialization/determinism guarantees they advertise."""

import math

import numpy as np
import pytest

from pseudosphere.geometry import SurfaceParams
from pseudosphere.scenarios import (
    ScenarioResult,
    box_benchmark,
    dacosta_profiles,
    default_u_max,
    doublet_splitting_stability,
    effective_profiles_by_ell,
    effective_profiles_by_radius,
    figure_tables,
    geometry_oracle_sweep,
    mass_profiles,
    oscillator_benchmark,
    r_sweep_ladder,
    run_l_sweep,
    run_r_sweep,
    run_validation,
    solve_scenario,
    transformation_chain_residuals,
    well_width,
)


def test_validation_report_is_all_green():
    report = run_validation(n=1024)
    for check in report.checks:
        assert check.passed, check.line()
    lines = report.lines()
    assert all(line.startswith(("PASS", "FAIL")) for line in lines[:-1])
    assert lines[-1].endswith("validation checks passed")
    assert report.all_passed


def test_geometry_oracle_sweep_error_budget():
    worst = geometry_oracle_sweep()
    assert worst["metric"] < 1e-8
    assert worst["christoffel"] < 1e-6
    assert worst["curvature"] < 1e-5
    assert worst["dacosta"] < 1e-5


def test_analytic_benchmarks():
    for mode in ("staggered-full", "split-half"):
        got, exact = box_benchmark(n=2000, mode=mode)
        np.testing.assert_allclose(got, exact, rtol=1e-4)
    got, exact = oscillator_benchmark(n=2000)
    np.testing.assert_allclose(got, exact, rtol=1e-4)


def test_chain_residuals_small_and_shrinking():
    coarse = transformation_chain_residuals(n=1000, k=2)
    fine = transformation_chain_residuals(n=2000, k=2)
    assert max(fine) < 1e-3
    for c, f in zip(coarse, fine):
        assert f < c
        assert math.log2(c / f) > 1.5  # near second order


def test_scenario_statistics_recomputable_from_spectrum():
    res = solve_scenario("doublets", R=1.0, ell=5, n=1024, k=6)
    st = res.statistics
    phys = [
        e
        for e, c in zip(res.eigenvalues, res.classifications)
        if c != "rim-artifact"
    ]
    np.testing.assert_allclose(st["splitting01"], phys[1] - phys[0], rtol=1e-15)
    np.testing.assert_allclose(st["splitting23"], phys[3] - phys[2], rtol=1e-15)
    assert st["bound_count"] == sum(c == "bound" for c in res.classifications)
    assert st["artifact_count"] == sum(
        c == "rim-artifact" for c in res.classifications
    )
    np.testing.assert_allclose(st["min_bound_energy"], phys[0], rtol=1e-15)


def test_scenario_determinism_and_round_trip():
    a = solve_scenario("again", R=1.0, ell=5, n=1024, k=4)
    b = solve_scenario("again", R=1.0, ell=5, n=1024, k=4)
    assert a == b  # spectrum excluded from comparison by design
    doc = a.to_dict()
    back = ScenarioResult.from_dict(doc)
    assert back == a
    doc["unknown_future_field"] = 123
    assert ScenarioResult.from_dict(doc) == a


def test_unavailable_statistics_are_none_not_nan():
    res = solve_scenario("tiny", R=1.0, ell=5, n=1024, k=2)
    st = res.statistics
    assert st["splitting23"] is None
    assert st["delta1"] is None
    assert st["anharmonicity"] is None
    # ell=0 with default window: no bound states at all
    res0 = solve_scenario("open", R=1.0, ell=0, n=1024, k=4)
    assert res0.statistics["min_bound_energy"] is None
    assert res0.statistics["confinement"] is None
    for v in res0.statistics.values():
        if isinstance(v, float):
            assert not math.isnan(v)


def test_default_window_rule():
    assert default_u_max(2.0, 0) == 20.0
    assert default_u_max(1.0, 5) == 10.0
    assert default_u_max(0.05, 5) == 2.0


def test_r_sweep_is_exactly_scale_invariant():
    # the l=0 problem with radius-proportional windows rescales exactly:
    # identical classifications, eigenvalues off by 1/R^2
    results = run_r_sweep(radii=(1.0, 10.0, 20.0), n=1024)
    e1 = np.asarray(results[0].eigenvalues)
    e10 = np.asarray(results[1].eigenvalues)
    e20 = np.asarray(results[2].eigenvalues)
    np.testing.assert_allclose(100.0 * e10, e1, rtol=1e-12)
    np.testing.assert_allclose(400.0 * e20, e1, rtol=1e-12)
    assert results[0].classifications == results[1].classifications
    ladder = r_sweep_ladder(results)
    assert ladder["small_R_all_propagating"] is True
    assert (ladder["small_R"], ladder["mid_R"], ladder["large_R"]) == (1.0, 10.0, 20.0)
    assert set(ladder) >= {
        "small_R_all_propagating",
        "mid_R_lowest_two_bound",
        "mid_R_near_degenerate",
        "large_R_more_confined",
    }


def test_l_sweep_doublet_structure():
    results = run_l_sweep(n=2048, k=12)
    by_ell = {res.parameters["ell"]: res for res in results}
    for ell in (5, 10):
        st = by_ell[ell].statistics
        assert st["bound_count"] >= 5
        gap = st["delta1"]
        assert st["splitting01"] < 0.1 * gap
        assert st["splitting23"] < 0.1 * gap
        assert st["anharmonicity"] > 0.01
    assert (
        by_ell[10].statistics["min_bound_energy"]
        > by_ell[5].statistics["min_bound_energy"]
    )
    counts = [res.statistics["bound_count"] for res in results]
    assert counts == sorted(counts)


def test_doublet_splitting_grid_stability():
    # contracted stability window: halving h moves the lowest splitting by
    # no more than 20%.  Measured behavior: the splitting is a clean O(h^2)
    # quantity (rel change 3/4 on every doubling), so this documents a
    # contract the scheme cannot meet; it fails honestly.
    stats = doublet_splitting_stability(1.0, 5, 4000)
    assert stats["splitting_2n"] < stats["splitting_n"]  # shrinks, never grows
    assert stats["rel_change"] <= 0.2, (
        f"splitting(n=8000) deviates {stats['rel_change']:.1%} from splitting "
        f"(n=4000); the doublet splitting converges to zero at second order, "
        f"so no grid admits a 20% stability window"
    )


def test_well_width_grows_linearly_with_radius():
    w1, w5, w10 = (well_width(R) for R in (1.0, 5.0, 10.0))
    assert 0.0 < w1 < w5 < w10
    np.testing.assert_allclose(w5, 5.0 * w1, rtol=1e-3)
    np.testing.assert_allclose(w10, 10.0 * w1, rtol=1e-3)
    np.testing.assert_allclose(w1, 2.0 * 1.3031225990683619, rtol=1e-3)


def test_profile_exports():
    dac = dacosta_profiles()
    assert sorted(dac) == ["dacosta_R1", "dacosta_R10", "dacosta_R100"]
    for prof in dac.values():
        assert prof.label == "dacosta"
        assert np.all(prof.v_values < 0.0)
        assert np.all(prof.u_values != 0.0)
    masses = mass_profiles()
    assert sorted(masses) == ["mass_R1", "mass_R10", "mass_R5"]
    for mp in masses.values():
        assert np.all(mp.m_values > 0.0)
        assert np.all(mp.m_values <= 1.0 + 1e-12)
    assert sorted(effective_profiles_by_radius()) == [
        "veff_R10_ell0",
        "veff_R1_ell0",
        "veff_R5_ell0",
    ]
    assert sorted(effective_profiles_by_ell()) == [
        "veff_R1_ell0",
        "veff_R1_ell10",
        "veff_R1_ell5",
    ]


def test_figure_table_dispatch():
    for fig in ("fig2", "fig3", "fig4"):
        out = figure_tables(fig)
        assert set(out) == {"tables", "statistics"}
        assert out["tables"]
    widths = figure_tables("fig4")["statistics"]
    assert set(widths) == {"well_width_R1", "well_width_R5", "well_width_R10"}
    with pytest.raises(ValueError):
        figure_tables("fig9")
