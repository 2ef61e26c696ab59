"""Potentials, coefficient functions and wavefunction transformations.

The quantum problem on the funnel separates into azimuthal plane waves times
a radial function.  This module provides every scalar field entering the
radial problem:

* the curvature-induced (da Costa) attraction,
* the three coefficient functions of the second-order radial form
  -(hbar^2/2m) L1 psi'' + L2 psi' + L3 psi = E psi,
* the first-derivative-free effective potential obtained through
  psi = sqrt(cosh(u/R) tanh(u/R)) y,
* the further rescaling y = s X that brings the equation to flux
  (position-dependent-mass) form, plus the effective potential it carries,
* the position-dependent mass,
* the reconstruction chain X -> psi with log-magnitude bookkeeping,
* finite-difference residual oracles tying every transformed form back to
  the raw Laplace-Beltrami operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    SingularCoordinateError,
    SurfaceParams,
    coth,
    csch,
    log_abs_sinh,
    log_cosh,
    sech,
    sqrt_metric_det,
)

__all__ = [
    "GridTooCoarseError",
    "dacosta_potential",
    "lambda_coefficients",
    "effective_potential",
    "scale_factor_s",
    "flux_scale_factor",
    "pdm_effective_potential",
    "mass_profile",
    "kinetic_coefficient",
    "kinetic_coefficient_integral",
    "laplace_beltrami_residual",
    "radial_equation_residual",
    "reconstruct_wavefunction",
    "ReconstructedWavefunction",
    "continuum_limit_check",
    "ContinuumAdvisory",
    "PotentialProfile",
    "MassProfile",
]

_LOG_FLOAT_MAX = math.log(np.finfo(float).max)  # ~709.78


class GridTooCoarseError(ValueError):
    """Second-difference noise would dominate the requested residual."""


def _require_off_rim(u) -> None:
    if np.any(np.asarray(u) == 0.0):
        raise SingularCoordinateError("quantity diverges on the rim u = 0")


def dacosta_potential(u, p: SurfaceParams):
    """Curvature-induced attraction -(hbar^2/(8 m R^2)) cosh^2(u/R) coth^2(u/R).

    Strictly negative, even in u, unbounded below both at the rim and far
    down the funnel.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / p.R
    amp = p.hbar**2 / (8.0 * p.mass_star * p.R**2)
    with np.errstate(over="ignore"):
        out = -amp * np.cosh(x) ** 2 * coth(x) ** 2
    return out if out.ndim else float(out)


def lambda_coefficients(u, ell: int, p: SurfaceParams):
    """Coefficients (L1, L2, L3) of the second-order radial form.

        L1 = coth^2(u/R)
        L2 = (hbar^2/(2 m R)) coth^3(u/R)
        L3 = (hbar^2/(8 m R^2)) cosh^2(u/R) (4 ell^2 - coth^2(u/R))

    L1 and L3 are even in u, L2 is odd.  L3 at ell = 0 is exactly the
    da Costa potential.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / p.R
    c = np.asarray(coth(x))
    kappa = p.hbar**2 / (2.0 * p.mass_star)
    l1 = c**2
    l2 = (kappa / p.R) * c**3
    with np.errstate(over="ignore"):
        l3 = (kappa / (4.0 * p.R**2)) * np.cosh(x) ** 2 * (4.0 * ell**2 - c**2)
    if l1.ndim:
        return l1, l2, l3
    return float(l1), float(l2), float(l3)


def effective_potential(u, ell: int, p: SurfaceParams):
    """Potential of the first-derivative-free (Hermitian) radial form.

        V_eff = (hbar^2/(16 m R^2)) [cosh(2u/R) + 1] [4 ell^2 + 3 csch^4(u/R) - 1]

    Even in u; repulsive csch^4 core at the rim; the far tail has the sign
    of 4 ell^2 - 1.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / p.R
    amp = p.hbar**2 / (16.0 * p.mass_star * p.R**2)
    with np.errstate(over="ignore"):
        out = amp * (np.cosh(2.0 * x) + 1.0) * (4.0 * ell**2 + 3.0 * csch(x) ** 4 - 1.0)
    return out if out.ndim else float(out)


def scale_factor_s(u, p: SurfaceParams):
    """Published rescaling factor, as printed: log s = (1/2) coth^2(u/R).

    Returns (log_s, s''/s) with the curvature ratio in closed form,

        s'/s  = -c (c^2 - 1) / R,              c = coth(u/R)
        s''/s = [c^2 (c^2-1)^2 + (3c^2-1)(c^2-1)] / R^2.

    Only the logarithm is returned for the factor itself: log s exceeds 700
    already at |u| ~ 0.027 R, so s is not representable there.

    Note this factor does NOT make the flux-form substitution exact; see
    ``flux_scale_factor`` for the one the solver chain uses.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    c = np.asarray(coth(u / p.R))
    c2 = c * c
    with np.errstate(over="ignore"):
        log_s = 0.5 * c2
        s_pp = (c2 * (c2 - 1.0) ** 2 + (3.0 * c2 - 1.0) * (c2 - 1.0)) / p.R**2
    if log_s.ndim:
        return log_s, s_pp
    return float(log_s), float(s_pp)


def flux_scale_factor(u, p: SurfaceParams):
    """Rescaling factor s = |coth(u/R)| that closes the flux-form chain.

    This is the unique s for which y = s X turns the Hermitian form into
    -(hbar^2/2) d/du[(L1/m*) dX/du] + Vbar X = E X with a local potential:
    it satisfies s'/s = L1'/(2 L1).  Returns (log_s, s''/s) with

        log s = log|coth(u/R)|,    s''/s = 2 csch^2(u/R) / R^2.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / p.R
    with np.errstate(divide="ignore"):
        log_s = -np.log(np.abs(np.tanh(x)))
    s_pp = 2.0 * csch(x) ** 2 / p.R**2
    if log_s.ndim:
        return log_s, s_pp
    return float(log_s), float(s_pp)


def pdm_effective_potential(u, ell: int, p: SurfaceParams):
    """Potential carried by the flux-form (position-dependent-mass) equation.

    Composed as V_eff - (hbar^2/2)(L1/m*)(s''/s) with the flux scale factor,
    which keeps the whole transformation chain exact; equivalently
    (hbar^2/(8 m R^2)) cosh^2(u/R) (4 ell^2 - 5 csch^4(u/R) - 1).
    Even in u.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    l1, _, _ = lambda_coefficients(u, 0, p)
    _, s_pp = flux_scale_factor(u, p)
    v_eff = effective_potential(u, ell, p)
    with np.errstate(invalid="ignore"):
        out = v_eff - (p.hbar**2 / (2.0 * p.mass_star)) * np.asarray(l1) * np.asarray(
            s_pp
        )
    out = np.asarray(out)
    return out if out.ndim else float(out)


def mass_profile(u, p: SurfaceParams):
    """Position-dependent mass M(u) = m* tanh^2(u/R).

    M L1 = m* identically.  The rim value is the limit M -> 0, reported as
    such rather than raised: the mass profile itself stays finite there.
    """
    u = np.asarray(u, dtype=float)
    out = p.mass_star * np.tanh(u / p.R) ** 2
    return out if out.ndim else float(out)


def kinetic_coefficient(u, p: SurfaceParams):
    """Flux-form kinetic coefficient L1/m* = coth^2(u/R)/m*."""
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    out = np.asarray(coth(u / p.R)) ** 2 / p.mass_star
    return out if out.ndim else float(out)


def _x_minus_tanh(x: float) -> float:
    # Direct subtraction loses all digits for |x| << 1; series keeps them.
    if abs(x) < 0.03:
        x2 = x * x
        return x * x2 * (
            1.0 / 3.0 + x2 * (-2.0 / 15.0 + x2 * (17.0 / 315.0 - x2 * 62.0 / 2835.0))
        )
    return x - math.tanh(x)


def kinetic_coefficient_integral(a: float, b: float, p: SurfaceParams) -> float:
    """Exact finite-volume coefficient for one bond spanning [a, b].

    Returns (b - a) / (m* * integral_a^b tanh^2(u/R) du), the harmonic
    average of L1/m* over the bond.  Well defined even when the bond
    straddles the rim, which is what the staggered grid's center bond needs.
    """
    if not b > a:
        raise ValueError("bond endpoints must satisfy a < b")
    za = a - p.R * math.tanh(a / p.R)
    zb = b - p.R * math.tanh(b / p.R)
    if abs(a / p.R) < 0.03 or abs(b / p.R) < 0.03:
        za = p.R * _x_minus_tanh(a / p.R)
        zb = p.R * _x_minus_tanh(b / p.R)
    return (b - a) / (p.mass_star * (zb - za))


# ---------------------------------------------------------------------------
# Residual oracles.
# ---------------------------------------------------------------------------


def _second_order_apply(psi, E, ell, p, nodes, h, lambda2_sign):
    """Route (a): apply the L-coefficient radial form by central differences."""
    l1, l2, l3 = lambda_coefficients(nodes[1:-1], ell, p)
    kappa = p.hbar**2 / (2.0 * p.mass_star)
    d2 = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / h**2
    d1 = (psi[2:] - psi[:-2]) / (2.0 * h)
    return -kappa * l1 * d2 + lambda2_sign * l2 * d1 + (l3 - E) * psi[1:-1]


def _laplace_beltrami_apply(psi, E, ell, p, nodes, h):
    """Route (b): flux-difference the raw area-weighted operator.

    Uses sqrt(g) g^{uu} = R |csch(u/R)| on half-offset midpoints and adds the
    azimuthal and curvature terms; shares no algebra with route (a).
    """
    kappa = p.hbar**2 / (2.0 * p.mass_star)
    mids_hi = (nodes[1:-1] + nodes[2:]) / 2.0
    mids_lo = (nodes[:-2] + nodes[1:-1]) / 2.0
    w_hi = p.R * np.abs(csch(mids_hi / p.R))
    w_lo = p.R * np.abs(csch(mids_lo / p.R))
    flux = (
        w_hi * (psi[2:] - psi[1:-1]) - w_lo * (psi[1:-1] - psi[:-2])
    ) / h**2
    sqrt_g = sqrt_metric_det(nodes[1:-1], p)
    g_pp_inv = 1.0 / (p.R * sech(nodes[1:-1] / p.R)) ** 2
    v_geo = dacosta_potential(nodes[1:-1], p)
    return (
        -kappa * flux / sqrt_g
        + kappa * ell**2 * g_pp_inv * psi[1:-1]
        + (v_geo - E) * psi[1:-1]
    )


def _as_node_values(psi, nodes):
    if callable(psi):
        return np.asarray([float(psi(u)) for u in nodes])
    arr = np.asarray(psi, dtype=float)
    if arr.shape != nodes.shape:
        raise ValueError("psi values must match the node array")
    return arr


def _check_grid(nodes):
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 8:
        raise ValueError("need a 1-D grid with at least 8 nodes")
    if np.any(nodes == 0.0):
        raise SingularCoordinateError("residual grid must avoid the rim")
    steps = np.diff(nodes)
    h = steps[0]
    if not np.allclose(steps, h, rtol=1e-12, atol=0.0):
        raise ValueError("residual grid must be uniform")
    return nodes, float(h)


def laplace_beltrami_residual(psi, E, ell, p, nodes, *, lambda2_sign=1.0):
    """L2 mismatch between two independent assemblies of the radial operator.

    Route (a) uses the closed-form L coefficients; route (b) flux-differences
    the raw area-weighted Laplace-Beltrami operator and adds the azimuthal
    plus curvature terms.  Both act on the same sampled psi; the return value
    is ||a - b|| / max(||a||, ||b||, tiny), which sits at truncation-error
    level when the coefficient algebra is right.

    ``lambda2_sign`` exists as a mutation hook for validation: flipping it
    must blow the mismatch up by orders of magnitude.
    """
    nodes, h = _check_grid(nodes)
    values = _as_node_values(psi, nodes)
    if not np.any(values):
        return 0.0
    a = _second_order_apply(values, E, ell, p, nodes, h, lambda2_sign)
    b = _laplace_beltrami_apply(values, E, ell, p, nodes, h)
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    noise = (
        np.finfo(float).eps
        * np.max(np.abs(values))
        * np.max(np.abs(lambda_coefficients(nodes, ell, p)[0]))
        * (p.hbar**2 / p.mass_star)
        / h**2
        * math.sqrt(nodes.size)
    )
    if scale <= 10.0 * noise:
        raise GridTooCoarseError(
            "second-difference rounding noise dominates this grid"
        )
    return float(np.linalg.norm(a - b) / scale)


def radial_equation_residual(psi, E, ell, p, nodes):
    """How well psi solves the radial eigenvalue problem at energy E.

    Applies the closed-form second-order radial operator by central
    differences and returns ||H psi - E psi|| / ||E psi|| over the interior
    of the supplied window.  For an exact eigenpair this decays at the
    stencil's second order as the grid refines.
    """
    nodes, h = _check_grid(nodes)
    values = _as_node_values(psi, nodes)
    norm = abs(E) * np.linalg.norm(values[1:-1])
    if norm == 0.0:
        return 0.0
    a = _second_order_apply(values, E, ell, p, nodes, h, 1.0)
    return float(np.linalg.norm(a) / norm)


# ---------------------------------------------------------------------------
# Wavefunction reconstruction.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReconstructedWavefunction:
    """Radial wavefunction rebuilt from a flux-form eigenvector X.

    psi carries sign(X) times exp(log_abs_psi) wherever that exponential is
    representable; elsewhere the representable flag is False and psi holds
    inf of the right sign.  surface_density is |psi|^2 sqrt(g), the actual
    probability density per du dphi on the surface.
    """

    u: np.ndarray
    psi: np.ndarray
    log_abs_psi: np.ndarray
    psi_sign: np.ndarray
    surface_density: np.ndarray
    representable: np.ndarray


def reconstruct_wavefunction(X, nodes, p: SurfaceParams) -> ReconstructedWavefunction:
    """Map a flux-form eigenvector X back to the radial wavefunction.

    The chain psi = sqrt|cosh(u/R) tanh(u/R)| * s * X with the flux scale
    factor collapses to psi = cosh(u/R) / sqrt|sinh(u/R)| * X, evaluated in
    log-magnitude space (the prefactor diverges at the rim).  The positive
    branch of the square root is used on both sides of the rim.
    """
    nodes = np.asarray(nodes, dtype=float)
    _require_off_rim(nodes)
    X = np.asarray(X, dtype=float)
    if X.shape != nodes.shape:
        raise ValueError("X values must match the node array")
    x = nodes / p.R
    with np.errstate(divide="ignore"):
        log_prefactor = log_cosh(x) - 0.5 * log_abs_sinh(x)
        log_abs = log_prefactor + np.log(np.abs(X))
    sign = np.sign(X)
    representable = log_abs < _LOG_FLOAT_MAX
    with np.errstate(over="ignore"):
        psi = sign * np.exp(log_abs)
    log_sqrt_g = math.log(p.R) + log_abs_sinh(x) - 2.0 * log_cosh(x)
    with np.errstate(over="ignore"):
        density = np.exp(2.0 * log_abs + log_sqrt_g)
    return ReconstructedWavefunction(
        u=nodes,
        psi=psi,
        log_abs_psi=log_abs,
        psi_sign=sign,
        surface_density=density,
        representable=representable,
    )


# ---------------------------------------------------------------------------
# Continuum-limit advisory.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuumAdvisory:
    """Result of the smooth-surface validity check (advisory, never fatal)."""

    min_parallel_radius: float
    bond_length: float
    threshold: float
    warn: bool
    message: str


def continuum_limit_check(
    u_abs_max: float, p: SurfaceParams, bond_length: float
) -> ContinuumAdvisory:
    """Warn when the funnel gets as narrow as the material's bond scale.

    The parallel radius r(u) = R sech(u/R) is smallest at the far edge of
    the requested domain; the smooth-surface description needs r much larger
    than one bond, so r < 20 bonds raises the advisory flag.
    """
    if bond_length <= 0.0:
        raise ValueError("bond_length must be positive")
    if u_abs_max < 0.0:
        raise ValueError("u_abs_max must be nonnegative")
    r_min = p.R * sech(u_abs_max / p.R)
    threshold = 20.0 * bond_length
    warn = r_min < threshold
    if warn:
        message = (
            f"parallel radius shrinks to {r_min:.6g} at |u| = {u_abs_max:.6g}, "
            f"below {threshold:.6g} (20 bond lengths); continuum description "
            "is doubtful there"
        )
    else:
        message = "surface stays wide relative to the bond length"
    return ContinuumAdvisory(
        min_parallel_radius=float(r_min),
        bond_length=float(bond_length),
        threshold=float(threshold),
        warn=warn,
        message=message,
    )


# ---------------------------------------------------------------------------
# Profile containers.
# ---------------------------------------------------------------------------

_POTENTIAL_LABELS = ("dacosta", "effective", "pdm_effective", "lambda3")


@dataclass(frozen=True)
class PotentialProfile:
    """Columnar samples of one potential over a rim-avoiding grid."""

    label: str
    u_values: np.ndarray
    v_values: np.ndarray

    def __post_init__(self) -> None:
        if self.label not in _POTENTIAL_LABELS:
            raise ValueError(f"unknown potential label {self.label!r}")
        u = np.asarray(self.u_values, dtype=float)
        v = np.asarray(self.v_values, dtype=float)
        if u.ndim != 1 or u.shape != v.shape:
            raise ValueError("u_values and v_values must be matching 1-D arrays")
        if np.any(np.diff(u) <= 0.0):
            raise ValueError("u_values must be strictly increasing")
        if np.any(u == 0.0):
            raise SingularCoordinateError("profile grids must avoid the rim")
        if not np.all(np.isfinite(v)):
            raise ValueError("potential values must be finite at every node")
        object.__setattr__(self, "u_values", u)
        object.__setattr__(self, "v_values", v)


@dataclass(frozen=True)
class MassProfile:
    """Columnar samples of the position-dependent mass."""

    u_values: np.ndarray
    m_values: np.ndarray
    mass_star: float

    def __post_init__(self) -> None:
        u = np.asarray(self.u_values, dtype=float)
        m = np.asarray(self.m_values, dtype=float)
        if u.ndim != 1 or u.shape != m.shape:
            raise ValueError("u_values and m_values must be matching 1-D arrays")
        if np.any(np.diff(u) <= 0.0):
            raise ValueError("u_values must be strictly increasing")
        if np.any(m <= 0.0) or np.any(m > self.mass_star * (1.0 + 1e-15)):
            raise ValueError("mass values must lie in (0, mass_star]")
        object.__setattr__(self, "u_values", u)
        object.__setattr__(self, "m_values", m)
