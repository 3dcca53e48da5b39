"""Independent oracles and desk-scale studies.

Everything here deliberately avoids the solver's fast paths: the
interaction-potential oracle is a full O(N^2) sum, and the closed-form
solution for pure-potential models evaluates its phase integrals by
quadrature rather than by time stepping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .field import GridSpec, SpinorField, init_field
from .functionals import local_charge
from .models import Model
from .solver import SolverConfig, evolve


@dataclass(frozen=True)
class ConvergenceResult:
    resolutions: tuple[int, ...]
    errors: tuple[float, ...]
    observed_orders: tuple[float, ...]
    mode: str  # "oracle" or "self-refinement"


@dataclass(frozen=True)
class PerturbationResult:
    times: tuple[float, ...]
    distances: tuple[float, ...]
    growth_rate: float  # least-squares slope of log d(t) with d(0) pinned


# ---------------------------------------------------------------------------
# Closed-form solution for pure-potential cubic models (F = 0, W = a*s*r)


def _density_sq(profile):
    return lambda y: float(np.abs(profile(np.asarray([y]))[0]) ** 2)


def thirring_exact(u0, v0, alpha: float, x: float, t: float):
    """Exact solution value for W = alpha |u|^2 |v|^2, F = 0.

    Moduli are transported, so u(x,t) = u0(x-t) * exp(-i alpha P) with the
    phase P = int_0^t |v0(x-t+2*tau)|^2 dtau = (1/2) int_{x-t}^{x+t} |v0|^2,
    and symmetrically for v.  Phase integrals go through adaptive quadrature
    at tolerance 1e-12.
    """
    pv, err_v = quad(_density_sq(v0), x - t, x + t, epsabs=1e-12, epsrel=1e-12,
                     limit=400)
    pu, err_u = quad(_density_sq(u0), x - t, x + t, epsabs=1e-12, epsrel=1e-12,
                     limit=400)
    if max(err_u, err_v) > 1e-9:
        raise RuntimeError("phase quadrature failed to converge")
    u_val = complex(u0(np.asarray([x - t]))[0]) * np.exp(-0.5j * alpha * pv)
    v_val = complex(v0(np.asarray([x + t]))[0]) * np.exp(-0.5j * alpha * pu)
    return u_val, v_val


def _cumulative_density(profile, points: np.ndarray, nodes: int = 12) -> np.ndarray:
    """Antiderivative of |profile|^2 at sorted points, via composite
    Gauss-Legendre between consecutive points (smooth integrand)."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes)
    left = points[:-1]
    width = np.diff(points)
    # all quadrature nodes at once: shape (n_intervals, nodes)
    xs = left[:, None] + 0.5 * width[:, None] * (gl_x[None, :] + 1.0)
    dens = np.abs(profile(xs.ravel())) ** 2
    chunks = (dens.reshape(xs.shape) * gl_w[None, :]).sum(axis=1) * 0.5 * width
    return np.concatenate(([0.0], np.cumsum(chunks)))


def thirring_exact_field(u0, v0, alpha: float, grid: GridSpec, t: float) -> SpinorField:
    """Vectorized closed-form solution on a grid at time t."""
    x = grid.cell_centers()
    pts = np.unique(np.concatenate([x - t, x + t]))
    Vv = dict(zip(pts, _cumulative_density(v0, pts)))
    Vu = dict(zip(pts, _cumulative_density(u0, pts)))
    phase_u = 0.5 * alpha * np.array([Vv[p] for p in x + t]) - 0.5 * alpha * np.array(
        [Vv[p] for p in x - t]
    )
    phase_v = 0.5 * alpha * np.array([Vu[p] for p in x + t]) - 0.5 * alpha * np.array(
        [Vu[p] for p in x - t]
    )
    u = u0(x - t) * np.exp(-1j * phase_u)
    v = v0(x + t) * np.exp(-1j * phase_v)
    return SpinorField(grid, u, v, t)


# ---------------------------------------------------------------------------
# Oracles


def bony_Q_oracle(f: SpinorField) -> float:
    """Brute-force O(N^2) ordered interaction sum; reference for bony_Q."""
    n = f.grid.n_cells
    if n > 4096:
        raise ValueError("oracle limited to N <= 4096 (quadratic cost)")
    su = np.abs(f.u) ** 2
    sv = np.abs(f.v) ** 2
    pair = np.outer(su, sv)
    mask = np.triu(np.ones((n, n), dtype=bool), k=1)
    return float(f.grid.dx**2 * pair[mask].sum())


def l2_distance(a: SpinorField, b: SpinorField) -> float:
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")
    return float(
        np.sqrt(
            a.grid.dx
            * (np.sum(np.abs(a.u - b.u) ** 2) + np.sum(np.abs(a.v - b.v) ** 2))
        )
    )


def _restrict(fine: SpinorField, coarse_grid: GridSpec) -> SpinorField:
    """Average adjacent fine cells onto the coarse grid (centers interleave)."""
    u = 0.5 * (fine.u[0::2] + fine.u[1::2])
    v = 0.5 * (fine.v[0::2] + fine.v[1::2])
    return SpinorField(coarse_grid, u, v, fine.t)


# ---------------------------------------------------------------------------
# Studies


def convergence_study(
    m: Model,
    pu,
    pv,
    T: float,
    resolutions,
    x_min: float,
    x_max: float,
    cfg: SolverConfig = SolverConfig(),
) -> ConvergenceResult:
    """L2 error under dyadic refinement.

    Pure-potential Thirring data is compared against the closed-form
    solution; models without one fall back to Richardson differences
    between successive resolutions (labeled self-refinement).
    """
    resolutions = list(resolutions)
    if len(resolutions) < 3:
        raise ValueError("need at least 3 resolutions")
    for a, b in zip(resolutions, resolutions[1:]):
        if b != 2 * a:
            raise ValueError("resolutions must double")

    has_oracle = m.name == "thirring"
    finals = []
    for n in resolutions:
        grid = GridSpec(x_min, x_max, n)
        f0 = init_field(grid, pu, pv)
        traj = evolve(f0, m, T, cfg, snapshot_stride=10**9)
        finals.append(traj.snapshots[-1])

    errors = []
    if has_oracle:
        alpha = m.w_coeffs.get((1, 1), 0.0)
        for f in finals:
            oracle = thirring_exact_field(pu, pv, alpha, f.grid, f.t)
            errors.append(l2_distance(f, oracle))
        res_used = resolutions
        mode = "oracle"
    else:
        for coarse, fine in zip(finals, finals[1:]):
            errors.append(l2_distance(coarse, _restrict(fine, coarse.grid)))
        res_used = resolutions[:-1]
        mode = "self-refinement"

    orders = []
    for e0, e1 in zip(errors, errors[1:]):
        orders.append(math.inf if e1 == 0.0 else math.log2(e0 / e1))
    return ConvergenceResult(tuple(res_used), tuple(errors), tuple(orders), mode)


def decay_study(m: Model, pu, pv, window, T: float, grid: GridSpec,
                cfg: SolverConfig = SolverConfig()):
    """Windowed charge over time for compact data; returns [(t, charge)]."""
    a, b = window
    f0 = init_field(grid, pu, pv)
    traj = evolve(f0, m, T, cfg, snapshot_stride=10**9, windows=((a, b),))
    return [(r.t, r.local_charges[0][1]) for r in traj.records]


def perturbation_growth(
    m: Model,
    base,
    eps_profile,
    eps: float,
    T: float,
    grid: GridSpec,
    cfg: SolverConfig = SolverConfig(),
) -> PerturbationResult:
    """L2 distance between a base run and a run with data perturbed by
    eps * eps_profile, plus the fitted exponential growth rate."""
    pu, pv = base
    qu, qv = eps_profile
    x = grid.cell_centers()
    f_base = init_field(grid, pu, pv)
    f_pert = SpinorField(grid, f_base.u + eps * qu(x), f_base.v + eps * qv(x), 0.0)

    stride = 1
    ta = evolve(f_base, m, T, cfg, snapshot_stride=stride)
    tb = evolve(f_pert, m, T, cfg, snapshot_stride=stride)
    times = []
    dists = []
    for fa, fb in zip(ta.snapshots, tb.snapshots):
        times.append(fa.t)
        dists.append(l2_distance(fa, fb))

    d0 = dists[0]
    if d0 == 0.0:
        lam = 0.0
    else:
        ts = np.array(times[1:])
        logs = np.log(np.maximum(np.array(dists[1:]), 1e-300)) - math.log(d0)
        lam = float(np.sum(ts * logs) / np.sum(ts * ts))
    return PerturbationResult(tuple(times), tuple(dists), lam)
