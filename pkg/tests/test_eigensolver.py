"""Grid, discretization, Sturm bisection, inverse iteration, classification,
and the two-route eigenvalue cross-check."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pseudosphere.geometry import SurfaceParams
from pseudosphere.eigensolver import (
    RadialGrid,
    TridiagonalOperator,
    build_operator,
    discretize,
    eigenvector,
    gershgorin_bounds,
    interior_sign_changes,
    lowest_eigenvalues,
    nonhermitian_cross_check,
    solve_spectrum,
    sturm_count,
)

P1 = SurfaceParams(R=1.0)


def box_operator(n: int, mode: str = "staggered-full") -> TridiagonalOperator:
    L = 1.0
    grid = RadialGrid(L / 2.0 if mode == "staggered-full" else L, n, mode)
    return build_operator(
        grid,
        lambda u: np.ones_like(np.asarray(u, dtype=float)),
        lambda u: np.zeros_like(np.asarray(u, dtype=float)),
        hbar=1.0,
        coeff_integral_fn=lambda a, b: 1.0,
    )


# ---------------------------------------------------------------------------
# grids


def test_grid_mode_validation():
    with pytest.raises(ValueError):
        RadialGrid(10.0, 4000, "diagonal")
    with pytest.raises(ValueError):
        RadialGrid(10.0, 4001, "staggered-full")
    with pytest.raises(ValueError):
        RadialGrid(10.0, 32, "split-half")
    with pytest.raises(ValueError):
        RadialGrid(-1.0, 4000)


@settings(max_examples=40, deadline=None)
@given(
    n_half=st.integers(32, 1500),
    u_max=st.floats(0.5, 200.0),
)
def test_staggered_grid_is_rim_symmetric(n_half, u_max):
    grid = RadialGrid(u_max, 2 * n_half, "staggered-full")
    nodes = grid.nodes
    assert nodes.size == 2 * n_half
    assert np.all(nodes != 0.0)
    np.testing.assert_allclose(nodes, -nodes[::-1], rtol=0.0, atol=0.0)
    # middle bond midpoint exactly at the rim
    assert nodes[n_half - 1] == -nodes[n_half]
    np.testing.assert_allclose(np.diff(nodes), grid.h, rtol=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(64, 3000), u_max=st.floats(0.5, 200.0))
def test_split_grid_stays_inside_open_interval(n, u_max):
    grid = RadialGrid(u_max, n, "split-half")
    nodes = grid.nodes
    assert nodes[0] > 0.0
    assert nodes[-1] < u_max
    np.testing.assert_allclose(nodes[0], grid.h, rtol=1e-15)
    np.testing.assert_allclose(u_max - nodes[-1], grid.h, rtol=1e-9)


def test_doubled_grid_preserves_spacing():
    for mode, n in (("staggered-full", 4000), ("split-half", 1999)):
        grid = RadialGrid(10.0, n, mode)
        big = grid.doubled()
        np.testing.assert_allclose(big.h, grid.h, rtol=1e-15)
        assert big.u_max == 2.0 * grid.u_max


# ---------------------------------------------------------------------------
# operator assembly


def test_operator_validation():
    grid = RadialGrid(1.0, 64, "split-half")
    with pytest.raises(ValueError):
        TridiagonalOperator(np.ones(64), np.zeros(63), grid)  # zero couplings
    with pytest.raises(ValueError):
        TridiagonalOperator(np.ones(64), -np.ones(64), grid)  # wrong length
    bad = np.ones(64)
    bad[3] = np.inf
    with pytest.raises(ValueError):
        TridiagonalOperator(bad, -np.ones(63), grid)


def test_center_bond_requires_exact_integral():
    grid = RadialGrid(0.5, 64, "staggered-full")
    with pytest.raises(ValueError, match="rim"):
        build_operator(
            grid,
            lambda u: np.ones_like(np.asarray(u, dtype=float)),
            lambda u: np.zeros_like(np.asarray(u, dtype=float)),
            hbar=1.0,
        )


def test_discretize_is_symmetric_with_negative_couplings():
    op = discretize(5, P1, RadialGrid(10.0, 512, "staggered-full"))
    assert np.all(op.off_diagonal < 0.0)
    assert np.all(np.isfinite(op.diagonal))


# ---------------------------------------------------------------------------
# Sturm counting and bisection


def test_sturm_count_brackets_and_steps():
    op = box_operator(512)
    lo, hi = gershgorin_bounds(op)
    assert sturm_count(op, lo) == 0
    assert sturm_count(op, hi) == op.n
    levels = np.pi**2 / 2.0 * np.arange(1, 4) ** 2
    for E in levels:
        assert sturm_count(op, E + 0.5) - sturm_count(op, E - 0.5) == 1


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_sturm_count_is_monotone(data):
    op = box_operator(256)
    lo, hi = gershgorin_bounds(op)
    a = data.draw(st.floats(lo, hi))
    b = data.draw(st.floats(lo, hi))
    if a > b:
        a, b = b, a
    assert sturm_count(op, a) <= sturm_count(op, b)


def test_box_levels_and_bitwise_determinism():
    op = box_operator(2000)
    got = lowest_eigenvalues(op, 5)
    exact = np.pi**2 / 2.0 * np.arange(1, 6) ** 2
    np.testing.assert_allclose(got, exact, rtol=1e-5)
    again = lowest_eigenvalues(op, 5)
    assert np.array_equal(got, again)


# ---------------------------------------------------------------------------
# inverse iteration


def test_eigenvector_quality_and_sign_convention():
    op = box_operator(2000)
    evals = lowest_eigenvalues(op, 3)
    h = op.grid.h
    for j, E in enumerate(evals):
        vec = eigenvector(op, E)
        rayleigh = (vec @ op.apply(vec)) / (vec @ vec)
        res = np.linalg.norm(op.apply(vec) - rayleigh * vec) / (
            op.scale * np.linalg.norm(vec)
        )
        assert res < 1e-12
        # normalized against the continuum measure: sum v^2 h = 1
        np.testing.assert_allclose((vec @ vec) * h, 1.0, rtol=1e-12)
        # deterministic orientation: largest-magnitude component positive
        assert vec[np.argmax(np.abs(vec))] > 0.0
        assert interior_sign_changes(vec) == j


def test_eigenvector_cluster_orthogonality():
    # nearly degenerate doublets: vectors must come out orthogonal
    grid = RadialGrid(10.0, 2000, "staggered-full")
    op = discretize(5, P1, grid)
    evals = lowest_eigenvalues(op, 3)
    v1 = eigenvector(op, evals[1])
    v2 = eigenvector(op, evals[2], orthogonal_to=[v1 / np.linalg.norm(v1)])
    cos = abs(v1 @ v2) / (np.linalg.norm(v1) * np.linalg.norm(v2))
    assert cos < 1e-8


# ---------------------------------------------------------------------------
# full spectra on the surface problem


def test_surface_spectrum_structure():
    grid = RadialGrid(10.0, 4000, "staggered-full")
    spec = solve_spectrum(5, P1, grid, k=6, tol=1e-10)
    assert spec.classifications[0] == "rim-artifact"
    assert all(c == "bound" for c in spec.classifications[1:])
    # physical doublet: nearly degenerate pair far below the next gap
    e = spec.eigenvalues
    np.testing.assert_allclose(e[1], 33.5017183753855, rtol=1e-8)
    np.testing.assert_allclose(e[2], 33.5022605646762, rtol=1e-8)
    split = e[2] - e[1]
    gap = e[3] - e[2]
    assert split < 0.1 * gap


def test_solve_spectrum_deterministic_and_k0():
    grid = RadialGrid(10.0, 1024, "staggered-full")
    a = solve_spectrum(5, P1, grid, k=4, tol=1e-10)
    b = solve_spectrum(5, P1, grid, k=4, tol=1e-10)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)
    empty = solve_spectrum(5, P1, grid, k=0)
    assert empty.eigenvalues.size == 0
    assert tuple(empty.classifications) == ()


def test_doublets_straddle_half_line_levels_at_matched_spacing():
    # same spacing: full-domain staggered h = 2*10/1000, half-domain split
    # h = 10/(499+1); the symmetric/antisymmetric pair must bracket the
    # half-line Dirichlet level
    full = solve_spectrum(5, P1, RadialGrid(10.0, 1000, "staggered-full"), k=9)
    half = solve_spectrum(
        5, P1, RadialGrid(10.0, 499, "split-half"), k=4, classify=False
    )
    phys = full.eigenvalues[np.asarray(full.classifications) != "rim-artifact"]
    for j in range(4):
        lo, hi = phys[2 * j], phys[2 * j + 1]
        assert lo <= half.eigenvalues[j] <= hi, (j, lo, half.eigenvalues[j], hi)


def test_spectrum_gap_and_splitting_fields():
    grid = RadialGrid(10.0, 1024, "staggered-full")
    spec = solve_spectrum(5, P1, grid, k=6, tol=1e-10)
    np.testing.assert_allclose(spec.gaps, np.diff(spec.eigenvalues), rtol=1e-15)
    np.testing.assert_allclose(
        spec.doublet_splittings,
        spec.eigenvalues[1::2][: len(spec.doublet_splittings)]
        - spec.eigenvalues[0::2][: len(spec.doublet_splittings)],
        rtol=1e-15,
    )


def test_cross_check_agrees_and_certifies_reality():
    grid = RadialGrid(10.0, 1024, "split-half")
    xc = nonhermitian_cross_check(5, P1, grid, k=4, tol=1e-10)
    assert xc.max_rel_mismatch < 1e-2
    assert xc.reality_certified
    assert xc.max_abs_imag < 1e-8
