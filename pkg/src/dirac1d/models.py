"""Nonlinearity models for the 1D massless Dirac system.

A model is a real polynomial W in s = |u|^2 and r = |v|^2 plus an optional
cubic coupling of Gross-Neveu type, F1 = 2*gamma*S*v and F2 = 2*gamma*S*u
with S = conj(u)*v + u*conj(v).  The right-hand sides of the evolution
equations are G1 = (dW/ds)*u + F1 and G2 = (dW/dr)*v + F2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Model:
    """Immutable nonlinearity specification.

    w_coeffs maps an exponent pair (j, k) to the real coefficient of the
    monomial |u|^(2j) |v|^(2k) in W.  gn_coupling is the scalar gamma of
    the cubic family above.
    """

    w_coeffs: dict[tuple[int, int], float] = field(default_factory=dict)
    gn_coupling: float = 0.0
    name: str = "custom"

    def __post_init__(self):
        for (j, k), w in self.w_coeffs.items():
            if j < 0 or k < 0:
                raise ValueError(f"negative exponent pair {(j, k)}")
            if not math.isfinite(w):
                raise ValueError(f"non-finite coefficient for {(j, k)}")
        if not math.isfinite(self.gn_coupling):
            raise ValueError("non-finite coupling")


def thirring(alpha: float = 1.0) -> Model:
    """W = alpha |u|^2 |v|^2, no cubic coupling."""
    return Model(w_coeffs={(1, 1): alpha}, gn_coupling=0.0, name="thirring")


def federbusch(alpha: float = 1.0) -> Model:
    """W = alpha (|u|^2 + |v|^2) |u|^2 |v|^2, no cubic coupling."""
    return Model(
        w_coeffs={(2, 1): alpha, (1, 2): alpha}, gn_coupling=0.0, name="federbusch"
    )


def gross_neveu(alpha: float = 1.0) -> Model:
    """W = 0, F derived from alpha*(conj(u) v + u conj(v))^2."""
    return Model(w_coeffs={}, gn_coupling=alpha, name="gross-neveu")


_PRESETS = {
    "thirring": thirring,
    "federbusch": federbusch,
    "gross-neveu": gross_neveu,
}


def preset(name: str, coefficient: float = 1.0) -> Model:
    """Look up a built-in model by name."""
    try:
        factory = _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown model {name!r}; expected one of {sorted(_PRESETS)}"
        ) from None
    return factory(coefficient)


def phase_rates(model: Model, s: float, r: float):
    """(dW/ds, dW/dr) at s = |u|^2, r = |v|^2.  Works on scalars or arrays."""
    ws = 0.0
    wr = 0.0
    for (j, k), w in model.w_coeffs.items():
        if j >= 1:
            ws = ws + w * j * s ** (j - 1) * r**k
        if k >= 1:
            wr = wr + w * k * s**j * r ** (k - 1)
    return ws, wr


def eval_F(model: Model, u: complex, v: complex):
    """The cubic coupling pair (F1, F2); zero unless gn_coupling is set."""
    g = model.gn_coupling
    if g == 0.0:
        return 0.0 * u, 0.0 * v
    S = 2.0 * (u.conjugate() * v).real
    return 2.0 * g * S * v, 2.0 * g * S * u


def eval_G(model: Model, u: complex, v: complex):
    """Pointwise right-hand sides (G1, G2) of the two evolution equations."""
    s = abs(u) ** 2
    r = abs(v) ** 2
    ws, wr = phase_rates(model, s, r)
    f1, f2 = eval_F(model, u, v)
    return ws * u + f1, wr * v + f2


def charge_source_rates(model: Model, u: complex, v: complex):
    """Rates of change of |u|^2 and |v|^2 along their characteristics.

    Equals (2 Im(conj(u) F1), 2 Im(conj(v) F2)); the W-part contributes
    nothing because conj(u) * (dW/ds) * u is real.
    """
    f1, f2 = eval_F(model, u, v)
    return 2.0 * (u.conjugate() * f1).imag, 2.0 * (v.conjugate() * f2).imag


def coupling_constant_c(model: Model) -> float:
    """Smallest c with |conj(u) F1| + |conj(v) F2| <= c |u|^2 |v|^2.

    For the gn_coupling family the supremum is attained at conj(u)*v real,
    giving c = 8|gamma|.
    """
    return 8.0 * abs(model.gn_coupling)


@dataclass(frozen=True)
class GlimmConstants:
    """Admissible constants for the small-data hypothesis L(0) + K Q(0) <= delta."""

    delta: float  # math.inf when no smallness is needed (c = 0)
    K: float
    c: float
    smallness_required: bool


def glimm_constants(model: Model) -> GlimmConstants:
    """Deterministic (delta, K) satisfying -2 + 2*delta*c < -1/2 and -K/2 + 2c < -2.

    With c = 0 both decay inequalities hold unconditionally, so delta is
    reported as unbounded.  Otherwise delta = 3/(8c) sits at half the strict
    bound 3/(4c), and K = 4c + 5 leaves margin 1 beyond 4c + 4.
    """
    c = coupling_constant_c(model)
    if c == 0.0:
        return GlimmConstants(delta=math.inf, K=5.0, c=0.0, smallness_required=False)
    return GlimmConstants(delta=3.0 / (8.0 * c), K=4.0 * c + 5.0, c=c,
                          smallness_required=True)


def estimate_coupling_constant(model: Model, n_samples: int = 4096,
                               seed: int = 0) -> float:
    """Sampling estimate of c for custom models (lower bound on the supremum).

    Presets get the closed form; anything else is probed on random phases
    and moduli, with a warning that the estimate only bounds c from below.
    """
    import numpy as np

    if model.name in _PRESETS:
        return coupling_constant_c(model)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n_samples) + 1j * rng.standard_normal(n_samples)
    v = rng.standard_normal(n_samples) + 1j * rng.standard_normal(n_samples)
    S = 2.0 * (np.conj(u) * v).real
    g = model.gn_coupling
    num = np.abs(np.conj(u) * 2.0 * g * S * v) + np.abs(np.conj(v) * 2.0 * g * S * u)
    den = np.abs(u) ** 2 * np.abs(v) ** 2
    est = float(np.max(num / den))
    warnings.warn(
        "sampled coupling constant is a lower bound on the true supremum",
        stacklevel=2,
    )
    return est
