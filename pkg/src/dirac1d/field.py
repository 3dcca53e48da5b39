"""Grid representation of the spinor pair and initial-data profiles."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SNAPSHOT_HEADER = "x,re_u,im_u,re_v,im_v"


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform 1D grid; the time step is locked to dt = dx (unit wave speeds)."""

    x_min: float
    x_max: float
    n_cells: int
    boundary: str = "zero-inflow"

    def __post_init__(self):
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.n_cells < 2:
            raise ValueError("need at least 2 cells")
        if self.boundary != "zero-inflow":
            raise ValueError(f"unsupported boundary {self.boundary!r}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def dt(self) -> float:
        return self.dx

    def cell_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass
class SpinorField:
    """Complex pair (u, v) sampled at cell centers at a fixed time."""

    grid: GridSpec
    u: np.ndarray
    v: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.complex128)
        self.v = np.asarray(self.v, dtype=np.complex128)
        n = self.grid.n_cells
        if self.u.shape != (n,) or self.v.shape != (n,):
            raise ValueError("component arrays must have length n_cells")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise ValueError("field contains non-finite entries")

    def copy(self) -> "SpinorField":
        return SpinorField(self.grid, self.u.copy(), self.v.copy(), self.t)

    def density(self) -> np.ndarray:
        return np.abs(self.u) ** 2 + np.abs(self.v) ** 2


# ---------------------------------------------------------------------------
# Profiles


@dataclass(frozen=True)
class Gaussian:
    amplitude: complex = 1.0
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ProfileError("width must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.amplitude * np.exp(-(((x - self.center) / self.width) ** 2))


@dataclass(frozen=True)
class Bump:
    """Compactly supported C-infinity bump, identically zero for |x-c| >= radius."""

    amplitude: complex = 1.0
    center: float = 0.0
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ProfileError("radius must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        xi = (x - self.center) / self.radius
        out = np.zeros(x.shape, dtype=complex)
        inside = np.abs(xi) < 1.0
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - xi[inside] ** 2))
        return out


@dataclass(frozen=True)
class Zero:
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape, dtype=complex)


@dataclass(frozen=True)
class FromFile:
    """Read one component from a field-snapshot CSV and resample linearly.

    which selects the component ("u" or "v") of the stored snapshot.
    """

    path: str
    which: str = "u"

    def __post_init__(self):
        if self.which not in ("u", "v"):
            raise ProfileError("which must be 'u' or 'v'")

    def __call__(self, x):
        xs, u, v = read_snapshot_columns(self.path)
        comp = u if self.which == "u" else v
        x = np.asarray(x, dtype=float)
        re = np.interp(x, xs, comp.real, left=0.0, right=0.0)
        im = np.interp(x, xs, comp.imag, left=0.0, right=0.0)
        return re + 1j * im


Profile = Gaussian | Bump | Zero | FromFile


def init_field(grid: GridSpec, pu, pv) -> SpinorField:
    """Sample the two profiles at cell centers at t = 0."""
    for p in (pu, pv):
        if isinstance(p, Bump):
            if p.center - p.radius < grid.x_min or p.center + p.radius > grid.x_max:
                warnings.warn(
                    "bump support exceeds the grid domain; it will be truncated",
                    stacklevel=2,
                )
    x = grid.cell_centers()
    return SpinorField(grid, np.asarray(pu(x)), np.asarray(pv(x)), t=0.0)


def linf_norm(f: SpinorField) -> float:
    """max over cells of |u|^2 + |v|^2."""
    if f.grid.n_cells == 0:
        return 0.0
    return float(np.max(f.density()))


def support_bounds(f: SpinorField, threshold: float = 0.0):
    """Smallest cell-aligned interval containing all cells with density > threshold.

    Returns (x_left_edge, x_right_edge), or None when no cell exceeds the
    threshold.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    idx = np.nonzero(f.density() > threshold)[0]
    if idx.size == 0:
        return None
    dx = f.grid.dx
    return (f.grid.x_min + idx[0] * dx, f.grid.x_min + (idx[-1] + 1) * dx)


# ---------------------------------------------------------------------------
# Snapshot CSV i/o


def write_snapshot(f: SpinorField, path) -> None:
    x = f.grid.cell_centers()
    data = np.column_stack([x, f.u.real, f.u.imag, f.v.real, f.v.imag])
    np.savetxt(path, data, delimiter=",", header=SNAPSHOT_HEADER, comments="")


def read_snapshot_columns(path):
    """Return (x, u, v) arrays from a snapshot CSV."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(path)
    try:
        data = np.loadtxt(p, delimiter=",", skiprows=1, ndmin=2)
        if data.shape[1] != 5:
            raise ValueError
    except ValueError:
        raise ProfileError(f"malformed snapshot file {path}") from None
    x = data[:, 0]
    return x, data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4]
