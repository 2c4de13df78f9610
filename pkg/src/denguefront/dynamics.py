"""Right-hand sides of the model variants.

Four evaluators share the compartment order (u, w, v, h, I, r):

* ``homog_rhs`` — spatially homogeneous reaction terms of any variant;
* ``pde_rhs``   — method-of-lines semidiscretization of the 1-D PDE system;
* ``travelwave_rhs`` — the co-moving-frame first-order ODE system in
  z = x - c t, state order (u, du, w, dw, v, h, I, r).

Variants: "saturated" (logistic maturation/oviposition), "malthus-1" and
"malthus-2" (saturation removed, two linearization choices), and the
one-parameter "family" containing both Malthusian members (epsilon = 1, 0).
All variants advect the winged compartments with velocity 2*nu.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDiffusionError, DegenerateProfileError,
                     DomainError)
from .params import NondimParams

FIELD_NAMES = ("u", "w", "v", "h", "I", "r")
WAVE_FIELD_NAMES = ("u", "du", "w", "dw", "v", "h", "I", "r")

_VARIANT_TAGS = ("saturated", "malthus-1", "malthus-2", "family")


@dataclass(frozen=True)
class ModelVariant:
    """Selects one member of the model hierarchy.

    ``epsilon`` is only meaningful for tag "family"; the named members fix
    it (malthus-1 <-> family eps=1, malthus-2 <-> family eps=0).
    """

    tag: str
    epsilon: float = 0.0

    def __post_init__(self):
        if self.tag not in _VARIANT_TAGS:
            raise DomainError(f"unknown variant tag {self.tag!r}")

    @classmethod
    def saturated(cls) -> "ModelVariant":
        return cls("saturated")

    @classmethod
    def malthus1(cls) -> "ModelVariant":
        return cls("malthus-1", epsilon=1.0)

    @classmethod
    def malthus2(cls) -> "ModelVariant":
        return cls("malthus-2", epsilon=0.0)

    @classmethod
    def family(cls, epsilon: float) -> "ModelVariant":
        return cls("family", epsilon=float(epsilon))

    @property
    def is_malthus2_like(self) -> bool:
        """True for malthus-2 or family with epsilon = 0."""
        return self.tag == "malthus-2" or (self.tag == "family" and self.epsilon == 0.0)


@dataclass(frozen=True)
class HomogState:
    """Spatially homogeneous compartment densities (u, w, v, h, I, r)."""

    u: float
    w: float
    v: float
    h: float
    I: float
    r: float

    @property
    def M(self) -> float:
        """Total winged density u + w."""
        return self.u + self.w

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.w, self.v, self.h, self.I, self.r], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "HomogState":
        u, w, v, h, i, r = (float(x) for x in arr)
        return cls(u=u, w=w, v=v, h=h, I=i, r=r)


@dataclass(frozen=True)
class WaveState:
    """Traveling-wave profile point; du, dw are the z-derivatives of u, w."""

    u: float
    du: float
    w: float
    dw: float
    v: float
    h: float
    I: float
    r: float
    c: float = 1.0
    z: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.du, self.w, self.dw,
                         self.v, self.h, self.I, self.r], dtype=float)

    @classmethod
    def from_array(cls, arr, c: float, z: float = 0.0) -> "WaveState":
        u, du, w, dw, v, h, i, r = (float(x) for x in arr)
        return cls(u=u, du=du, w=w, dw=dw, v=v, h=h, I=i, r=r, c=c, z=z)


def _state_array(state) -> np.ndarray:
    if isinstance(state, HomogState):
        return state.as_array()
    arr = np.asarray(state, dtype=float)
    if arr.shape != (6,):
        raise DomainError(f"expected 6 compartments, got shape {arr.shape}")
    return arr


def homog_rhs(state, n: NondimParams, m: ModelVariant) -> np.ndarray:
    """Reaction terms of the selected variant (all spatial derivatives zero).

    Accepts a HomogState or a 6-array (u, w, v, h, I, r); returns the six
    time derivatives in the same order.
    """
    u, w, v, h, i, r = _state_array(state)
    if not np.all(np.isfinite([u, w, v, h, i, r])):
        raise DomainError("state must be finite")
    big_m = u + w
    infect = n.beta1 * u * i
    bite = n.beta2 * h * w

    if m.tag == "saturated":
        du = (n.gamma / n.k) * v * (1.0 - big_m) - n.mu1 * u - infect
        dw = -n.mu1 * w + infect
        dv = n.k * (1.0 - v) * big_m - (n.mu2 + n.gamma) * v
    elif m.tag == "malthus-1":
        du = (n.gamma / n.k) * v + (n.gamma / n.k - n.mu1) * u - infect
        dw = (n.gamma / n.k - n.mu1) * w + infect
        dv = n.k * big_m - (n.mu2 + n.gamma - n.k) * v
    elif m.tag == "malthus-2":
        du = (n.gamma / n.k) * v - n.mu1 * u - infect
        dw = -n.mu1 * w + infect
        dv = n.k * big_m - (n.mu2 + n.gamma) * v
    else:  # family
        eps = m.epsilon
        du = (n.gamma / n.k) * v + (eps * n.gamma / n.k - n.mu1) * u - infect
        dw = (eps * n.gamma / n.k - n.mu1) * w + infect
        dv = n.k * big_m - (n.mu2 + n.gamma - eps * n.k) * v

    dh = (1.0 - h) * n.mu3 - bite
    di = bite - n.sigma * i - n.mu3 * i
    dr = n.sigma * i - n.mu3 * r
    return np.array([du, dw, dv, dh, di, dr])


def _power(base: np.ndarray, expo: float) -> np.ndarray:
    """base**expo with base >= 0; 0**0 = 1, 0**(q>0) = 0."""
    if expo == 0.0:
        return np.ones_like(base)
    if expo > 0.0:
        return np.power(base, expo)
    out = np.empty_like(base)
    positive = base > 0.0
    out[positive] = np.power(base[positive], expo)
    out[~positive] = np.inf
    return out


def pde_rhs(fields, n: NondimParams, m: ModelVariant, dx: float,
            bc: str = "zero-flux", m_floor: float | None = None) -> np.ndarray:
    """Semidiscrete time derivatives of the 1-D PDE system.

    Parameters
    ----------
    fields : array (6, N)
        Grid values of (u, w, v, h, I, r) on a uniform grid with spacing dx.
    bc : {"zero-flux", "fixed"}
        Zero-flux closes the diffusive flux and upwind stencil at the ends;
        "fixed" pins the boundary values of the diffusing fields (their
        time derivative at the end nodes is zero).
    m_floor : float, optional
        Regularization floor for M**p when p < 0 (off by default).

    Diffusion uses the conservative flux form with interface values of M**p
    averaged between adjacent cells; advection (velocity 2*nu*field**q) is
    first-order upwind.  v, h, I, r carry no spatial terms.
    """
    arr = np.asarray(fields, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != 6:
        raise DomainError(f"fields must have shape (6, N), got {arr.shape}")
    if arr.shape[1] < 5:
        raise DomainError("grid must have at least 5 points")
    if not dx > 0.0:
        raise DomainError(f"dx must be positive, got {dx!r}")
    if bc not in ("zero-flux", "fixed"):
        raise DomainError(f"unknown boundary condition {bc!r}")

    u, w = arr[0], arr[1]
    big_m = u + w
    if np.any(big_m < 0.0):
        raise DomainError("total winged density M = u + w is negative on the grid")
    for idx, name in enumerate(FIELD_NAMES):
        if np.any(arr[idx] < 0.0):
            warnings.warn(
                f"negative {name} values on the grid (min {arr[idx].min():.3e}); "
                "densities are not clamped", RuntimeWarning, stacklevel=2)

    p = 0.0 if m.tag == "saturated" else n.p
    q1 = 0.0 if m.tag == "saturated" else n.q1
    q2 = 0.0 if m.tag == "saturated" else n.q2

    if p == 0.0:
        mp = np.ones_like(big_m)
    else:
        base = big_m if m_floor is None else np.maximum(big_m, m_floor)
        if p < 0.0 and np.any(base == 0.0):
            raise DegenerateDiffusionError(
                "M = 0 with negative diffusion exponent; enable m_floor to regularize")
        mp = _power(base, p)

    # reaction part: shared with the homogeneous evaluator, vectorized
    out = np.empty_like(arr)
    v_, h_, i_ = arr[2], arr[3], arr[4]
    infect = n.beta1 * u * i_
    bite = n.beta2 * h_ * w
    if m.tag == "saturated":
        out[0] = (n.gamma / n.k) * v_ * (1.0 - big_m) - n.mu1 * u - infect
        out[1] = -n.mu1 * w + infect
        out[2] = n.k * (1.0 - v_) * big_m - (n.mu2 + n.gamma) * v_
    elif m.tag == "malthus-1":
        out[0] = (n.gamma / n.k) * v_ + (n.gamma / n.k - n.mu1) * u - infect
        out[1] = (n.gamma / n.k - n.mu1) * w + infect
        out[2] = n.k * big_m - (n.mu2 + n.gamma - n.k) * v_
    elif m.tag == "malthus-2":
        out[0] = (n.gamma / n.k) * v_ - n.mu1 * u - infect
        out[1] = -n.mu1 * w + infect
        out[2] = n.k * big_m - (n.mu2 + n.gamma) * v_
    else:
        eps = m.epsilon
        out[0] = (n.gamma / n.k) * v_ + (eps * n.gamma / n.k - n.mu1) * u - infect
        out[1] = (eps * n.gamma / n.k - n.mu1) * w + infect
        out[2] = n.k * big_m - (n.mu2 + n.gamma - eps * n.k) * v_
    out[3] = (1.0 - h_) * n.mu3 - bite
    out[4] = bite - n.sigma * i_ - n.mu3 * i_
    out[5] = n.sigma * i_ - n.mu3 * arr[5]

    mp_face = 0.5 * (mp[:-1] + mp[1:])
    for row, field, q in ((0, u, q1), (1, w, q2)):
        flux = mp_face * np.diff(field) / dx        # flux at interior faces
        div = np.zeros_like(field)
        div[1:-1] = (flux[1:] - flux[:-1]) / dx
        if bc == "zero-flux":
            div[0] = flux[0] / dx                    # ghost face flux 0
            div[-1] = -flux[-1] / dx
        out[row] += div

        if n.nu != 0.0:
            if q == 0.0:
                vel = 2.0 * n.nu
            else:
                vel = 2.0 * n.nu * _power(np.maximum(field, 0.0), q)
                if q < 0.0:
                    vel = np.where(field > 0.0, vel, 0.0)
            grad = np.zeros_like(field)
            # upwind: velocity here is always >= 0 (nu >= 0)
            grad[1:] = (field[1:] - field[:-1]) / dx
            if bc == "zero-flux":
                grad[0] = 0.0                        # ghost node mirrors node 0
            else:
                grad[0] = grad[1]
            out[row] -= vel * grad

        if bc == "fixed":
            out[row, 0] = 0.0
            out[row, -1] = 0.0
    return out


def travelwave_rhs(state, n: NondimParams, c: float | None = None) -> np.ndarray:
    """z-derivatives of the co-moving frame system.

    State order (u, du, w, dw, v, h, I, r); ``c`` defaults to the
    WaveState's stored speed.  For nonzero diffusion exponent p the second
    derivatives are solved for by dividing by (u + w)**p.
    """
    if isinstance(state, WaveState):
        arr = state.as_array()
        if c is None:
            c = state.c
    else:
        arr = np.asarray(state, dtype=float)
        if arr.shape != (8,):
            raise DomainError(f"expected 8 wave components, got shape {arr.shape}")
        if c is None:
            raise DomainError("wave speed c is required with array input")
    if c == 0.0:
        raise DomainError("wave speed c must be nonzero")

    u, du, w, dw, v, h, i, r = arr
    eps = n.epsilon
    infect = n.beta1 * u * i
    big_m = u + w

    if n.p == 0.0:
        mp = 1.0
        mix_u = 0.0
        mix_w = 0.0
    else:
        if big_m <= 0.0:
            raise DegenerateProfileError(
                f"(u + w)**p vanishes at z={arr!r} with p={n.p!r}")
        mp = big_m ** n.p
        mpm1 = n.p * big_m ** (n.p - 1.0) * (du + dw)
        mix_u = mpm1 * du
        mix_w = mpm1 * dw

    adv_u = 2.0 * n.nu * (u ** n.q1 if n.q1 != 0.0 else 1.0) * du
    adv_w = 2.0 * n.nu * (w ** n.q2 if n.q2 != 0.0 else 1.0) * dw

    ddu = (-c * du - mix_u + adv_u
           - (n.gamma / n.k) * v - (eps * n.gamma / n.k - n.mu1) * u + infect) / mp
    ddw = (-c * dw - mix_w + adv_w
           - (eps * n.gamma / n.k - n.mu1) * w - infect) / mp
    dv = (-n.k * big_m + (n.mu2 + n.gamma - eps * n.k) * v) / c
    dh = (n.beta2 * w * h - (1.0 - h) * n.mu3) / c
    di = (-n.beta2 * w * h + (n.sigma + n.mu3) * i) / c
    dr = (-n.sigma * i + n.mu3 * r) / c
    return np.array([du, ddu, dw, ddw, dv, dh, di, dr])
