import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac1d import functionals as fn
from dirac1d.field import Bump, GridSpec, SpinorField, Zero, init_field
from dirac1d.harness import bony_Q_oracle
from dirac1d.models import gross_neveu, thirring
from dirac1d.solver import evolve


def _zero_field(n=32):
    g = GridSpec(-1.0, 1.0, n)
    return SpinorField(g, np.zeros(n, complex), np.zeros(n, complex))


def _random_field(seed, n=128, x_min=-1.0, x_max=1.0):
    rng = np.random.default_rng(seed)
    g = GridSpec(x_min, x_max, n)
    return SpinorField(
        g,
        rng.standard_normal(n) + 1j * rng.standard_normal(n),
        rng.standard_normal(n) + 1j * rng.standard_normal(n),
    )


def test_charge_L_zero_and_constant():
    assert fn.charge_L(_zero_field()) == 0.0
    g = GridSpec(0.0, 1.0, 37)
    f = SpinorField(g, np.ones(37, complex), np.zeros(37, complex))
    assert fn.charge_L(f) == pytest.approx(1.0, rel=1e-14)


def test_interaction_D_examples():
    assert fn.interaction_D(_zero_field()) == 0.0
    g = GridSpec(0.0, 1.0, 25)
    f = SpinorField(g, np.ones(25, complex), 2.0 * np.ones(25, complex))
    assert fn.interaction_D(f) == pytest.approx(4.0, rel=1e-14)


def test_bony_Q_disjoint_ordered_supports():
    g = GridSpec(-1.0, 1.0, 64)
    u = np.zeros(64, complex)
    v = np.zeros(64, complex)
    u[:20] = 1.0 + 0.5j  # u entirely left of v
    v[40:] = 0.7 - 0.2j
    f = SpinorField(g, u, v)
    norm_u = g.dx * np.sum(np.abs(u) ** 2)
    norm_v = g.dx * np.sum(np.abs(v) ** 2)
    assert fn.bony_Q(f) == pytest.approx(norm_u * norm_v, rel=1e-13)
    # reversed order: no pair with x < y
    assert fn.bony_Q(SpinorField(g, v, u)) == 0.0


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10**6), st.sampled_from([16, 64, 257, 1024]))
def test_bony_Q_matches_bruteforce_oracle(seed, n):
    f = _random_field(seed, n)
    q = fn.bony_Q(f)
    q_ref = bony_Q_oracle(f)
    assert q == pytest.approx(q_ref, rel=1e-12)


@given(st.integers(0, 10**6))
def test_bony_Q_product_bound(seed):
    f = _random_field(seed, 64)
    bound = (f.grid.dx * np.sum(np.abs(f.u) ** 2)) * (
        f.grid.dx * np.sum(np.abs(f.v) ** 2)
    )
    assert fn.bony_Q(f) <= bound * (1 + 1e-12)


def test_glimm_value_contract():
    f = _random_field(1)
    assert fn.glimm_value(f, 3.0) == pytest.approx(
        fn.charge_L(f) + 3.0 * fn.bony_Q(f), rel=1e-14
    )
    with pytest.raises(ValueError):
        fn.glimm_value(f, 0.0)
    assert fn.glimm_value(_zero_field(), 7.0) == 0.0


def test_local_charge_window_cases():
    g = GridSpec(-10.0, 10.0, 400)
    f = init_field(g, Bump(1.0, 0.0, 1.0), Zero())
    assert fn.local_charge(f, 5.0, 9.0) == 0.0  # disjoint from support
    assert fn.local_charge(f, -10.0, 10.0) == pytest.approx(fn.charge_L(f))
    # symmetric even data: half window holds half the charge up to O(dx)
    half = fn.local_charge(f, -10.0, 0.0)
    assert half == pytest.approx(fn.charge_L(f) / 2, abs=2 * g.dx)
    with pytest.raises(ValueError):
        fn.local_charge(f, 1.0, -1.0)


def test_nonnegativity_along_trajectory():
    g = GridSpec(-8.0, 8.0, 128)
    f = init_field(g, Bump(0.3, -0.5, 1.0), Bump(0.3, 0.5, 1.0))
    traj = evolve(f, gross_neveu(1.0), 1.0, windows=((-1.0, 1.0),))
    for r in traj.records:
        assert r.L >= 0 and r.Q >= 0 and r.D >= 0 and r.linf >= 0
        assert all(val >= 0 for _, val in r.local_charges)


def test_check_monotonicity_zero_data():
    g = GridSpec(-4.0, 4.0, 64)
    f = init_field(g, Zero(), Zero())
    traj = evolve(f, gross_neveu(1.0), 0.5)
    rep = fn.check_monotonicity(traj, gross_neveu(1.0))
    assert rep.hypothesis_met
    assert rep.max_violation == 0.0


def test_check_monotonicity_needs_records():
    traj = evolve(
        init_field(GridSpec(-4, 4, 64), Zero(), Zero()), thirring(1.0), 0.5
    )
    traj.records = traj.records[:1]
    with pytest.raises(ValueError):
        fn.check_monotonicity(traj, thirring(1.0))


def test_thirring_Q_nonincreasing():
    # with no coupling dQ/dt <= -2D <= 0; discretely up to O(dx^2) per unit time
    g = GridSpec(-8.0, 8.0, 512)
    f = init_field(g, Bump(0.5, -1.0, 1.0), Bump(0.5, 1.0, 1.0))
    traj = evolve(f, thirring(1.0), 4.0, snapshot_stride=10**9)
    qs = [r.Q for r in traj.records]
    tol = 10 * g.dx**2
    assert all(b <= a + tol for a, b in zip(qs, qs[1:]))


def test_cone_flux_zero_field():
    g = GridSpec(-4.0, 4.0, 128)
    traj = evolve(init_field(g, Zero(), Zero()), thirring(1.0), 1.0)
    x0 = g.cell_centers()[64]
    t0 = round(0.5 / g.dx) * g.dx
    flux = fn.cone_boundary_flux(traj, x0, t0)
    assert (flux.gamma_R_u, flux.gamma_L_v, flux.omega_uv) == (0.0, 0.0, 0.0)
    assert (flux.base_u, flux.base_v) == (0.0, 0.0)


def test_cone_flux_preconditions():
    g = GridSpec(-4.0, 4.0, 128)
    traj = evolve(init_field(g, Zero(), Zero()), thirring(1.0), 1.0)
    x0 = g.cell_centers()[64]
    with pytest.raises(ValueError, match="multiple of dx"):
        fn.cone_boundary_flux(traj, x0, 0.5 * g.dx)
    with pytest.raises(ValueError, match="exits the spatial domain"):
        fn.cone_boundary_flux(traj, g.cell_centers()[2], 10 * g.dx)
    with pytest.raises(ValueError, match="time range"):
        fn.cone_boundary_flux(traj, x0, 100.0 * g.dx * round(1.0 / g.dx))
    with pytest.raises(ValueError, match="cell center"):
        fn.cone_boundary_flux(traj, x0 + 0.3 * g.dx, 10 * g.dx)
    sparse = evolve(init_field(g, Zero(), Zero()), thirring(1.0), 1.0,
                    snapshot_stride=7)
    with pytest.raises(ValueError, match="snapshot_stride"):
        fn.cone_boundary_flux(sparse, x0, 10 * g.dx)


def test_pointwise_bound_constant():
    assert fn.pointwise_bound_constant(thirring(2.0)) == 1.0
    m = gross_neveu(1.0)
    c, delta = 8.0, 3.0 / 64.0
    expected = math.exp((2 * math.sqrt(2) * c**2 + math.sqrt(2) * c) * delta)
    assert fn.pointwise_bound_constant(m) == pytest.approx(expected, rel=1e-14)


def test_linf_bound_zero_field():
    g = GridSpec(-4.0, 4.0, 64)
    traj = evolve(init_field(g, Zero(), Zero()), gross_neveu(1.0), 0.5)
    sup, bound, ok = fn.linf_bound_check(traj, gross_neveu(1.0))
    assert (sup, bound, ok) == (0.0, 0.0, True)


def test_window_translate_bound_zero_and_geometry():
    g = GridSpec(-8.0, 8.0, 256)
    traj = evolve(init_field(g, Zero(), Zero()), gross_neveu(1.0), 0.5)
    series = fn.window_translate_bound(traj, -1.0, 1.0, gross_neveu(1.0))
    assert all(lhs == 0.0 and rhs == 0.0 and flag for _, lhs, rhs, flag in series)
    # compact data: once both translated windows miss the support, rhs = 0 = lhs
    f = init_field(g, Bump(0.2, 0.0, 1.0), Bump(0.2, 0.0, 1.0))
    traj = evolve(f, gross_neveu(1.0), 4.0, snapshot_stride=1)
    series = fn.window_translate_bound(traj, -1.0, 1.0, gross_neveu(1.0))
    late = [row for row in series if row[0] > 2.5]
    assert late and all(lhs <= 1e-12 and rhs <= 1e-12 for _, lhs, rhs, _ in late)
