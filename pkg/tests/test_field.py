import numpy as np
import pytest
from scipy.integrate import quad

from dirac1d.field import (
    Bump,
    FromFile,
    Gaussian,
    GridSpec,
    SpinorField,
    Zero,
    init_field,
    linf_norm,
    read_snapshot_columns,
    support_bounds,
    write_snapshot,
)
from dirac1d.functionals import charge_L


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(1.0, 0.0, 16)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 1)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 16, boundary="periodic")


def test_dt_locked_to_dx():
    g = GridSpec(-2.0, 2.0, 64)
    assert g.dt == g.dx == pytest.approx(4.0 / 64)


def test_zero_field_init():
    g = GridSpec(-1.0, 1.0, 32)
    f = init_field(g, Zero(), Zero())
    assert linf_norm(f) == 0.0
    assert support_bounds(f, 0.0) is None


def test_bump_compact_support():
    g = GridSpec(-10.0, 10.0, 400)
    f = init_field(g, Bump(1.0, 0.0, 1.0), Zero())
    x = g.cell_centers()
    assert np.all(f.u[np.abs(x) >= 1.0] == 0.0)
    lo, hi = support_bounds(f, 0.0)
    assert lo >= -1.0 - g.dx and hi <= 1.0 + g.dx


def test_gaussian_charge_matches_quadrature():
    g = GridSpec(-10.0, 10.0, 2000)
    f = init_field(g, Gaussian(1.0, 0.0, 1.0), Zero())
    ref, _ = quad(lambda x: np.exp(-2 * x**2), -10, 10, epsabs=1e-13)
    assert charge_L(f) == pytest.approx(ref, rel=1e-6)


def test_linf_norm_constant_field():
    g = GridSpec(0.0, 1.0, 8)
    f = SpinorField(g, 2.0 * np.ones(8, complex), np.zeros(8, complex))
    assert linf_norm(f) == 4.0


def test_linf_norm_matches_direct_scan():
    rng = np.random.default_rng(7)
    g = GridSpec(-1.0, 1.0, 257)
    f = SpinorField(
        g,
        rng.standard_normal(257) + 1j * rng.standard_normal(257),
        rng.standard_normal(257) + 1j * rng.standard_normal(257),
    )
    direct = max(abs(f.u[i]) ** 2 + abs(f.v[i]) ** 2 for i in range(257))
    assert linf_norm(f) == pytest.approx(direct, rel=1e-15)


def test_init_is_deterministic():
    g = GridSpec(-3.0, 3.0, 100)
    a = init_field(g, Gaussian(1 + 2j, 0.5, 0.7), Bump(0.3, -1.0, 1.0))
    b = init_field(g, Gaussian(1 + 2j, 0.5, 0.7), Bump(0.3, -1.0, 1.0))
    assert np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)


def test_sampling_refinement_converges():
    prof = Gaussian(1.0, 0.0, 1.0)
    errs = []
    for n in (200, 400, 800):
        g = GridSpec(-8.0, 8.0, n)
        x = g.cell_centers()
        # midpoint-rule charge vs exact; error should fall at least linearly
        charge = g.dx * np.sum(np.abs(prof(x)) ** 2)
        exact = np.sqrt(np.pi / 2)
        errs.append(abs(charge - exact))
    assert errs[0] < 1e-6  # smooth data: cell-center sampling is very accurate
    assert errs[-1] <= errs[0]


def test_field_validation():
    g = GridSpec(0.0, 1.0, 4)
    with pytest.raises(ValueError):
        SpinorField(g, np.zeros(3, complex), np.zeros(4, complex))
    bad = np.zeros(4, complex)
    bad[0] = np.nan
    with pytest.raises(ValueError):
        SpinorField(g, bad, np.zeros(4, complex))


def test_bump_support_warning():
    g = GridSpec(-1.0, 1.0, 32)
    with pytest.warns(UserWarning, match="support exceeds"):
        init_field(g, Bump(1.0, 0.5, 1.0), Zero())


def test_snapshot_roundtrip(tmp_path):
    g = GridSpec(-2.0, 2.0, 50)
    rng = np.random.default_rng(3)
    f = SpinorField(
        g,
        rng.standard_normal(50) + 1j * rng.standard_normal(50),
        rng.standard_normal(50) + 1j * rng.standard_normal(50),
        t=1.5,
    )
    path = tmp_path / "snap.csv"
    write_snapshot(f, path)
    assert path.read_text().splitlines()[0] == "x,re_u,im_u,re_v,im_v"
    x, u, v = read_snapshot_columns(path)
    np.testing.assert_allclose(x, g.cell_centers(), atol=1e-12)
    np.testing.assert_allclose(u, f.u, atol=1e-12)
    np.testing.assert_allclose(v, f.v, atol=1e-12)


def test_fromfile_profile_resamples(tmp_path):
    pu, pv = Bump(1.0, 0.0, 1.5), Bump(0.5j, 0.2, 1.2)
    g = GridSpec(-2.0, 2.0, 256)
    f = init_field(g, pu, pv)
    path = tmp_path / "snap.csv"
    write_snapshot(f, path)
    fine = GridSpec(-2.0, 2.0, 512)
    f2 = init_field(fine, FromFile(str(path), "u"), FromFile(str(path), "v"))
    # linear resampling of smooth compact data: small pointwise error
    ref = init_field(fine, pu, pv)
    assert np.max(np.abs(f2.u - ref.u)) < 1e-3
    assert np.max(np.abs(f2.v - ref.v)) < 1e-3


def test_fromfile_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        FromFile(str(tmp_path / "missing.csv"))(np.zeros(3))
    bad = tmp_path / "bad.csv"
    bad.write_text("x,re_u\n0.0,1.0\n")
    with pytest.raises(ValueError):
        FromFile(str(bad))(np.zeros(3))
