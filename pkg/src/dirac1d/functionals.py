"""Charge, interaction, and Glimm-type functionals plus trajectory checkers.

Pointwise functionals act on a single SpinorField; the checkers at the
bottom consume a Trajectory (see dirac1d.solver) and evaluate the decay,
boundedness, and cone-flux relations the solver is expected to reproduce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import SpinorField
from .models import Model, coupling_constant_c, glimm_constants


@dataclass(frozen=True)
class DiagnosticsRecord:
    """All per-time-level diagnostics: t, L, Q, D, L + K*Q, max density,
    windowed charges, and the running trapezoidal integral of D."""

    t: float
    L: float
    Q: float
    D: float
    glimm: float
    linf: float
    local_charges: tuple[tuple[tuple[float, float], float], ...]
    cumulative_D_integral: float


@dataclass(frozen=True)
class MonotonicityReport:
    K: float
    delta: float
    hypothesis_met: bool
    max_violation: float
    series: tuple[tuple[float, float], ...]  # (t, [L + K*Q + cumD](t) - [L + K*Q](0))


@dataclass(frozen=True)
class ConeFlux:
    """Quadratures over the backward cone at (x0, t0): the two characteristic
    boundary integrals (arc length ds = sqrt(2) dt), the interior overlap
    integral, and the two base integrals of the initial data."""

    gamma_R_u: float
    gamma_L_v: float
    omega_uv: float
    base_u: float
    base_v: float


def charge_L(f: SpinorField) -> float:
    """Total charge: dx * sum of |u|^2 + |v|^2."""
    return float(f.grid.dx * np.sum(f.density()))


def bony_Q(f: SpinorField) -> float:
    """Ordered interaction potential dx^2 * sum_{i<j} |u_i|^2 |v_j|^2.

    Computed in O(N) with a strictly-lower prefix sum of |u|^2; the diagonal
    is excluded (the continuum region x < y is open).
    """
    su = np.abs(f.u) ** 2
    sv = np.abs(f.v) ** 2
    prefix = np.concatenate(([0.0], np.cumsum(su)[:-1]))
    return float(f.grid.dx**2 * np.sum(sv * prefix))


def interaction_D(f: SpinorField) -> float:
    """Local overlap: dx * sum of |u|^2 |v|^2."""
    return float(f.grid.dx * np.sum(np.abs(f.u) ** 2 * np.abs(f.v) ** 2))


def glimm_value(f: SpinorField, K: float) -> float:
    """L + K * Q for K > 0."""
    if K <= 0:
        raise ValueError("K must be positive")
    return charge_L(f) + K * bony_Q(f)


def _window_mask(grid, a: float, b: float) -> np.ndarray:
    return (grid.cell_centers() >= a) & (grid.cell_centers() <= b)


def local_charge(f: SpinorField, a: float, b: float) -> float:
    """Charge over cells whose centers lie in [a, b]; no partial-cell weights."""
    if a >= b:
        raise ValueError("window requires a < b")
    mask = _window_mask(f.grid, a, b)
    return float(f.grid.dx * np.sum(f.density()[mask]))


def component_charge(arr: np.ndarray, grid, a: float, b: float) -> float:
    """dx-weighted |arr|^2 over cells with centers in [a, b]."""
    if a >= b:
        raise ValueError("window requires a < b")
    mask = _window_mask(grid, a, b)
    return float(grid.dx * np.sum(np.abs(arr[mask]) ** 2))


def make_record(f: SpinorField, K: float, windows, cum_D: float) -> DiagnosticsRecord:
    from .field import linf_norm

    charges = tuple(((a, b), local_charge(f, a, b)) for (a, b) in windows)
    L = charge_L(f)
    Q = bony_Q(f)
    return DiagnosticsRecord(
        t=f.t,
        L=L,
        Q=Q,
        D=interaction_D(f),
        glimm=L + K * Q,
        linf=linf_norm(f),
        local_charges=charges,
        cumulative_D_integral=cum_D,
    )


# ---------------------------------------------------------------------------
# Trajectory checkers


def check_monotonicity(traj, m: Model) -> MonotonicityReport:
    """Excess of the decaying combination L + K*Q + int_0^t D over its
    initial value, maximized over all recorded time levels."""
    records = traj.records
    if len(records) < 2:
        raise ValueError("trajectory must contain at least 2 records")
    gc = glimm_constants(m)
    start = records[0].L + gc.K * records[0].Q
    series = tuple(
        (r.t, r.L + gc.K * r.Q + r.cumulative_D_integral - start) for r in records
    )
    hypothesis_met = (not gc.smallness_required) or (start <= gc.delta)
    return MonotonicityReport(
        K=gc.K,
        delta=gc.delta,
        hypothesis_met=hypothesis_met,
        max_violation=max(excess for _, excess in series),
        series=series,
    )


def pointwise_bound_constant(m: Model) -> float:
    """exp((2*sqrt(2)*c^2 + sqrt(2)*c) * delta); equals 1 when c = 0."""
    gc = glimm_constants(m)
    if gc.c == 0.0:
        return 1.0
    return math.exp((2.0 * math.sqrt(2.0) * gc.c**2 + math.sqrt(2.0) * gc.c) * gc.delta)


def linf_bound_check(traj, m: Model):
    """(sup over trajectory of max density, C1 * initial max density, flag)."""
    sup_t = max(r.linf for r in traj.records)
    bound = pointwise_bound_constant(m) * traj.records[0].linf
    return sup_t, bound, sup_t <= bound + 1e-10


def window_translate_bound(traj, a: float, b: float, m: Model):
    """Per-snapshot comparison of the windowed charge against the translated
    initial charges scaled by the pointwise bound constant.

    Returns a list of (t, lhs, rhs, flag) with
    rhs = C * (u0-charge on [a+t, b+t] + v0-charge on [a-t, b-t]).
    """
    if a >= b:
        raise ValueError("window requires a < b")
    C = pointwise_bound_constant(m)
    f0 = traj.snapshots[0]
    out = []
    for f in traj.snapshots:
        t = f.t
        lhs = local_charge(f, a, b)
        rhs = C * (
            component_charge(f0.u, f0.grid, a + t, b + t)
            + component_charge(f0.v, f0.grid, a - t, b - t)
        )
        out.append((t, lhs, rhs, lhs <= rhs + 1e-10))
    return out


def cone_boundary_flux(traj, x0: float, t0: float) -> ConeFlux:
    """Quadratures over the backward cone {0 < t < t0, |x - x0| < t0 - t}.

    The apex must sit on the grid: x0 at a cell center and t0 a multiple of
    dx, so the characteristic edges pass through cell centers at every time
    level.  Boundary integrals use the trapezoidal rule in t with arc length
    ds = sqrt(2) dt; the interior integral is a dx*dt cell sum; the base
    integrals sum the initial data over [x0 - t0, x0 + t0].
    """
    grid = traj.grid
    dx = grid.dx
    snaps = traj.snapshots
    if len(snaps) < 2:
        raise ValueError("trajectory must contain snapshots at every step")
    if abs((snaps[1].t - snaps[0].t) - dx) > 1e-12 * max(1.0, dx):
        raise ValueError("cone quadrature needs snapshot_stride = 1")
    n0 = int(round(t0 / dx))
    if abs(n0 * dx - t0) > 1e-9 * max(1.0, t0) or n0 < 1:
        raise ValueError("t0 must be a positive multiple of dx")
    if n0 >= len(snaps):
        raise ValueError("t0 exceeds the trajectory time range")
    centers = grid.cell_centers()
    i0 = int(round((x0 - grid.x_min) / dx - 0.5))
    if not (0 <= i0 < grid.n_cells) or abs(centers[i0] - x0) > 1e-9 * max(1.0, dx):
        raise ValueError("x0 must be a cell center")
    if i0 - n0 < 0 or i0 + n0 >= grid.n_cells:
        raise ValueError("cone exits the spatial domain")

    sqrt2 = math.sqrt(2.0)
    gamma_R = 0.0
    gamma_L = 0.0
    omega = 0.0
    for n in range(n0 + 1):
        f = snaps[n]
        w = 0.5 if n in (0, n0) else 1.0  # trapezoid in t
        gamma_R += w * abs(f.u[i0 + (n0 - n)]) ** 2
        gamma_L += w * abs(f.v[i0 - (n0 - n)]) ** 2
        if n < n0:
            half = n0 - n  # interior cells strictly inside the cone
            sl = slice(i0 - half + 1, i0 + half)
            omega += float(
                np.sum(np.abs(f.u[sl]) ** 2 * np.abs(f.v[sl]) ** 2)
            )
    gamma_R *= sqrt2 * dx  # ds = sqrt(2) dt, dt = dx
    gamma_L *= sqrt2 * dx
    omega *= dx * dx

    f0 = snaps[0]
    base_u = component_charge(f0.u, grid, x0 - t0, x0 + t0)
    base_v = component_charge(f0.v, grid, x0 - t0, x0 + t0)
    return ConeFlux(gamma_R, gamma_L, omega, base_u, base_v)


def cone_inequality_slack(flux: ConeFlux, m: Model) -> tuple[float, float]:
    """Signed residuals of the two cone-boundary inequalities; nonpositive
    values (up to discretization error) mean the bounds hold."""
    c = coupling_constant_c(m)
    lhs_u = math.sqrt(2.0) * flux.gamma_R_u - (2.0 * c * flux.omega_uv + flux.base_u)
    lhs_v = math.sqrt(2.0) * flux.gamma_L_v - (2.0 * c * flux.omega_uv + flux.base_v)
    return lhs_u, lhs_v
