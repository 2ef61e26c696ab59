"""Differential geometry of the Beltrami funnel surface.

The surface is the axisymmetric embedding

    r(u, phi) = (R sech(u/R) cos phi, R sech(u/R) sin phi, u - R tanh(u/R))

with meridian coordinate u (the rim sits at u = 0) and azimuthal angle phi.
Everything downstream (induced metric, connection coefficients, curvatures)
is derived from this map.  Finite-difference oracles that rebuild the same
quantities straight from ``embed`` are provided for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SingularCoordinateError",
    "SurfaceParams",
    "GeometryPoint",
    "sech",
    "csch",
    "coth",
    "log_cosh",
    "log_abs_sinh",
    "embed",
    "metric",
    "sqrt_metric_det",
    "christoffel",
    "gaussian_curvature",
    "mean_curvature",
    "geometry_point",
    "metric_oracle",
    "christoffel_oracle",
    "curvature_oracle",
]

_LN2 = math.log(2.0)


class SingularCoordinateError(ValueError):
    """Evaluation requested on the u = 0 rim, where the quantity diverges."""


@dataclass(frozen=True)
class SurfaceParams:
    """Physical parameters of the problem.

    R is the pseudoradius of the surface, hbar and mass_star the reduced
    Planck constant and effective mass used by the model layer.  All three
    must be positive; the defaults put the problem in natural units.
    """

    R: float
    hbar: float = 1.0
    mass_star: float = 1.0

    def __post_init__(self) -> None:
        for name in ("R", "hbar", "mass_star"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)


def sech(x):
    """Hyperbolic secant, safe for arbitrarily large |x|."""
    x = np.asarray(x, dtype=float)
    # cosh overflows near |x| ~ 710; 2 e^{-|x|} / (1 + e^{-2|x|}) never does.
    e = np.exp(-np.abs(x))
    out = 2.0 * e / (1.0 + e * e)
    return out if out.ndim else float(out)


def csch(x):
    """Hyperbolic cosecant.  Returns +-inf at x = 0."""
    x = np.asarray(x, dtype=float)
    e = np.exp(-np.abs(x))
    with np.errstate(divide="ignore"):
        out = np.sign(x) * 2.0 * e / (-np.expm1(-2.0 * np.abs(x)))
    return out if out.ndim else float(out)


def coth(x):
    """Hyperbolic cotangent.  Returns +-inf at x = 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = 1.0 / np.tanh(x)
    return out if out.ndim else float(out)


def log_cosh(x):
    """log(cosh(x)) without overflow."""
    x = np.asarray(x, dtype=float)
    out = np.abs(x) + np.log1p(np.exp(-2.0 * np.abs(x))) - _LN2
    return out if out.ndim else float(out)


def log_abs_sinh(x):
    """log|sinh(x)| without overflow.  -inf at x = 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.abs(x) + np.log1p(-np.exp(-2.0 * np.abs(x))) - _LN2
    return out if out.ndim else float(out)


def _require_off_rim(u) -> None:
    if np.any(np.asarray(u) == 0.0):
        raise SingularCoordinateError("quantity diverges on the rim u = 0")


def embed(u, phi, params: SurfaceParams):
    """Embedding map into R^3.  Broadcasts u against phi; output has a
    trailing axis of length 3 holding (x, y, z)."""
    u, phi = np.broadcast_arrays(
        np.asarray(u, dtype=float), np.asarray(phi, dtype=float)
    )
    x = u / params.R
    rho = params.R * sech(x)
    return np.stack(
        (rho * np.cos(phi), rho * np.sin(phi), u - params.R * np.tanh(x)), axis=-1
    )


def metric(u, params: SurfaceParams):
    """Diagonal induced-metric components (g_uu, g_phiphi).

    The metric is finite everywhere, degenerating to g_uu = 0 on the rim.
    """
    u = np.asarray(u, dtype=float)
    x = u / params.R
    g_uu = np.tanh(x) ** 2
    g_pp = (params.R * sech(x)) ** 2
    if g_uu.ndim:
        return g_uu, g_pp
    return float(g_uu), float(g_pp)


def sqrt_metric_det(u, params: SurfaceParams):
    """Area element sqrt(det g) = R |tanh(u/R)| sech(u/R)."""
    u = np.asarray(u, dtype=float)
    x = u / params.R
    out = params.R * np.abs(np.tanh(x)) * sech(x)
    return out if out.ndim else float(out)


def christoffel(u, params: SurfaceParams):
    """Nonzero connection coefficients (Gamma^u_uu, Gamma^u_phiphi, Gamma^phi_uphi).

    All three diverge on the rim, so u = 0 raises SingularCoordinateError.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / params.R
    c2 = csch(2.0 * x)
    g_uuu = 2.0 * c2 / params.R
    g_upp = 2.0 * params.R * c2
    g_pup = -np.tanh(x) / params.R
    if np.ndim(u):
        return np.asarray(g_uuu), np.asarray(g_upp), np.asarray(g_pup)
    return float(g_uuu), float(g_upp), float(g_pup)


def gaussian_curvature(u, params: SurfaceParams):
    """Constant Gaussian curvature -1/R^2 (shaped like u)."""
    u = np.asarray(u, dtype=float)
    out = np.full_like(u, -1.0 / params.R**2)
    return out if out.ndim else float(out)


def mean_curvature(u, params: SurfaceParams):
    """Mean curvature (cosh^2(u/R) - 2) / (2 R sinh(u/R)).

    Sign convention: the surface normal is r_u x r_phi normalised, the same
    orientation ``curvature_oracle`` uses.  Diverges on the rim.
    """
    _require_off_rim(u)
    u = np.asarray(u, dtype=float)
    x = u / params.R
    out = (np.cosh(x) ** 2 - 2.0) * csch(x) / (2.0 * params.R)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class GeometryPoint:
    """All local geometric data at a single meridian coordinate."""

    u: float
    g_uu: float
    g_phiphi: float
    gamma_u_uu: float
    gamma_u_phiphi: float
    gamma_phi_uphi: float
    gaussian_curvature: float
    mean_curvature: float
    sqrt_g: float


def geometry_point(u: float, params: SurfaceParams) -> GeometryPoint:
    """Evaluate every geometric quantity at one off-rim point."""
    _require_off_rim(u)
    u = float(u)
    g_uu, g_pp = metric(u, params)
    g_uuu, g_upp, g_pup = christoffel(u, params)
    return GeometryPoint(
        u=u,
        g_uu=g_uu,
        g_phiphi=g_pp,
        gamma_u_uu=g_uuu,
        gamma_u_phiphi=g_upp,
        gamma_phi_uphi=g_pup,
        gaussian_curvature=gaussian_curvature(u, params),
        mean_curvature=mean_curvature(u, params),
        sqrt_g=sqrt_metric_det(u, params),
    )


# ---------------------------------------------------------------------------
# Finite-difference oracles.  These rebuild the analytic formulas above from
# the embedding map alone and exist so tests and the validation runner can
# cross-check the closed forms against an independent construction.
# ---------------------------------------------------------------------------

_ORACLE_PHI = 0.4  # generic azimuth so no Cartesian component degenerates


def metric_oracle(u: float, params: SurfaceParams, h: float = 1e-6):
    """Metric from central differences of the embedding."""
    u = float(u)
    r_u = (embed(u + h, _ORACLE_PHI, params) - embed(u - h, _ORACLE_PHI, params)) / (
        2.0 * h
    )
    r_p = (embed(u, _ORACLE_PHI + h, params) - embed(u, _ORACLE_PHI - h, params)) / (
        2.0 * h
    )
    return float(r_u @ r_u), float(r_p @ r_p)


def christoffel_oracle(u: float, params: SurfaceParams, h: float = 1e-6):
    """Connection coefficients from differenced metric components.

    For a diagonal metric depending on u only:
        Gamma^u_uu     =  d_u g_uu / (2 g_uu)
        Gamma^u_phiphi = -d_u g_phiphi / (2 g_uu)
        Gamma^phi_uphi =  d_u g_phiphi / (2 g_phiphi)
    """
    u = float(u)
    if abs(u) < 4.0 * h:
        raise SingularCoordinateError("oracle stencil would straddle the rim")
    g_uu, g_pp = metric(u, params)
    dg_uu = (metric(u + h, params)[0] - metric(u - h, params)[0]) / (2.0 * h)
    dg_pp = (metric(u + h, params)[1] - metric(u - h, params)[1]) / (2.0 * h)
    return (
        dg_uu / (2.0 * g_uu),
        -dg_pp / (2.0 * g_uu),
        dg_pp / (2.0 * g_pp),
    )


def _fundamental_form_curvatures(u: float, params: SurfaceParams, h: float):
    """(K, H) from first and second fundamental forms at step h."""
    p = _ORACLE_PHI

    def r(uu, pp):
        return embed(uu, pp, params)

    r_u = (r(u + h, p) - r(u - h, p)) / (2.0 * h)
    r_p = (r(u, p + h) - r(u, p - h)) / (2.0 * h)
    r_uu = (r(u + h, p) - 2.0 * r(u, p) + r(u - h, p)) / h**2
    r_pp = (r(u, p + h) - 2.0 * r(u, p) + r(u, p - h)) / h**2
    r_up = (
        r(u + h, p + h) - r(u + h, p - h) - r(u - h, p + h) + r(u - h, p - h)
    ) / (4.0 * h**2)

    n = np.cross(r_u, r_p)
    n = n / np.linalg.norm(n)

    first = np.array([[r_u @ r_u, r_u @ r_p], [r_u @ r_p, r_p @ r_p]])
    second = np.array([[r_uu @ n, r_up @ n], [r_up @ n, r_pp @ n]])
    shape_op = np.linalg.solve(first, second)
    return float(np.linalg.det(shape_op)), float(np.trace(shape_op) / 2.0)


def curvature_oracle(u: float, params: SurfaceParams, h: float = 1e-4):
    """(K, H) rebuilt from the embedding alone, Richardson-extrapolated.

    Uses the r_u x r_phi normal orientation, matching ``mean_curvature``.
    The stencil must stay clear of the rim, hence the |u| >= 4h guard.
    """
    u = float(u)
    if abs(u) < 4.0 * h:
        raise SingularCoordinateError("oracle stencil would straddle the rim")
    k_h, h_h = _fundamental_form_curvatures(u, params, h)
    k_2, h_2 = _fundamental_form_curvatures(u, params, h / 2.0)
    return (4.0 * k_2 - k_h) / 3.0, (4.0 * h_2 - h_h) / 3.0
